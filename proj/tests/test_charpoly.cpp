#include "homcov/charpoly.hpp"
#include "homcov/cyclotomic.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace homcov;

TEST(CharPoly, SmallKnownCases)
{
	EXPECT_EQ(char_poly(IntMatrix::identity(2)), IntPoly({1, -2, 1})); // (t-1)^2
	EXPECT_EQ(char_poly(IntMatrix{{1, 1}, {1, 0}}), IntPoly({-1, -1, 1})); // t^2-t-1
	EXPECT_EQ(char_poly(IntMatrix{{0, -1}, {1, 0}}), IntPoly({1, 0, 1})); // t^2+1
}

TEST(CharPoly, MatchesBareissDeterminantAtIntegerPoints)
{
	std::mt19937 rng(59);
	std::uniform_int_distribution<int> dim(1, 6), entry(-5, 5);
	for (int trial = 0; trial < 100; ++trial) {
		std::size_t n = dim(rng);
		IntMatrix a(n, n);
		for (std::size_t i = 0; i < n; ++i)
			for (std::size_t j = 0; j < n; ++j)
				a(i, j) = entry(rng);
		IntPoly p = char_poly(a);
		EXPECT_TRUE(p.monic());
		EXPECT_EQ(p.degree(), static_cast<int>(n));
		for (Int t = -3; t <= 3; ++t) {
			IntMatrix tia(n, n);
			for (std::size_t i = 0; i < n; ++i)
				for (std::size_t j = 0; j < n; ++j)
					tia(i, j) = (i == j ? t : Int(0)) - a(i, j);
			EXPECT_EQ(p.evaluate(t), bareiss_determinant(tia));
		}
	}
}

TEST(CharPoly, CayleyHamiltonExact)
{
	std::mt19937 rng(61);
	std::uniform_int_distribution<int> dim(1, 8), entry(-4, 4);
	for (int trial = 0; trial < 40; ++trial) {
		std::size_t n = dim(rng);
		IntMatrix a(n, n);
		for (std::size_t i = 0; i < n; ++i)
			for (std::size_t j = 0; j < n; ++j)
				a(i, j) = entry(rng);
		EXPECT_TRUE(char_poly(a).evaluate(a).is_zero());
	}
}

TEST(CharPoly, WorksOverCyclotomicEntries)
{
	Cyc i = Cyc::root_of_unity(4, 1);
	Matrix<Cyc> a(2, 2);
	a(0, 0) = i;
	a(1, 1) = Cyc(0) - i;
	// char poly of diag(i, -i) is t^2 + 1
	auto c = berkowitz_char_poly(a);
	ASSERT_EQ(c.size(), 3u);
	EXPECT_EQ(c[0], Cyc(1));
	EXPECT_TRUE(c[1].is_zero());
	EXPECT_EQ(c[2], Cyc(1));
}

TEST(CharPoly, CompanionRoundTrip)
{
	IntPoly p({-1, -1, 1}); // t^2 - t - 1
	EXPECT_EQ(char_poly(companion_matrix(p)), p);
	IntPoly c12 = cyclotomic_int_poly(12);
	EXPECT_EQ(char_poly(companion_matrix(c12)), c12);
}

TEST(IntPoly, GcdAndDivision)
{
	IntPoly a({-1, 0, 1}); // t^2 - 1
	IntPoly b({1, 1});     // t + 1
	EXPECT_EQ(poly_gcd(a, b), b);
	EXPECT_EQ(exact_divide(a, b), IntPoly({-1, 1}));
	EXPECT_TRUE(divides(b, a));
	EXPECT_FALSE(divides(IntPoly({1, 1, 1}), a));
	// gcd of coprime polynomials is 1
	EXPECT_EQ(poly_gcd(IntPoly({1, 1}), IntPoly({-1, 1})).degree(), 0);
}

TEST(IntPoly, CyclotomicTable)
{
	EXPECT_EQ(cyclotomic_int_poly(1), IntPoly({-1, 1}));
	EXPECT_EQ(cyclotomic_int_poly(2), IntPoly({1, 1}));
	EXPECT_EQ(cyclotomic_int_poly(6), IntPoly({1, -1, 1}));
	EXPECT_EQ(cyclotomic_int_poly(105).degree(), euler_phi(105));
	// Product of Phi_d over d | n is t^n - 1.
	IntPoly prod = IntPoly::constant(1);
	for (int d : {1, 2, 3, 6})
		prod = prod * cyclotomic_int_poly(d);
	EXPECT_EQ(prod, IntPoly::power_minus_one(6));
}

TEST(IntPoly, EulerPhiInverseOrders)
{
	auto ords1 = cyclotomic_orders_for_dimension(1);
	EXPECT_EQ(ords1, (std::vector<int>{1, 2}));
	auto ords2 = cyclotomic_orders_for_dimension(2);
	EXPECT_EQ(ords2, (std::vector<int>{1, 2, 3, 4, 6}));
}
