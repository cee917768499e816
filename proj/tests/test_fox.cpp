#include "homcov/fox.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace homcov;

TEST(Fox, BaseCases)
{
	// fox(x_j, j) = 1
	EXPECT_EQ(fox_derivative(word_from_string("a"), 1, 2), LaurentPoly::constant(2, 1));
	// fox(x_j^{-1}, j) = -X_j^{-1}
	LaurentPoly expect(2);
	expect.add_term({-1, 0}, -1);
	EXPECT_EQ(fox_derivative(word_from_string("A"), 1, 2), expect);
	// fox(x y, 2) = X_1
	EXPECT_EQ(fox_derivative(word_from_string("ab"), 2, 2), LaurentPoly::variable(2, 1));
}

TEST(Fox, ProductRule)
{
	std::mt19937 rng(29);
	std::uniform_int_distribution<int> gen(1, 3), sign(0, 1), len(0, 12);
	auto random_word = [&] {
		std::vector<int> raw;
		for (int i = len(rng); i > 0; --i)
			raw.push_back(gen(rng) * (sign(rng) ? 1 : -1));
		return Word(raw);
	};
	const int rank = 3;
	for (int trial = 0; trial < 200; ++trial) {
		Word u = random_word(), v = random_word();
		Word uv = u * v;
		for (int j = 1; j <= rank; ++j) {
			auto lhs = fox_derivative(uv, j, rank);
			auto rhs = fox_derivative(u, j, rank) +
			           abelianized_monomial(u, rank) * fox_derivative(v, j, rank);
			EXPECT_EQ(lhs, rhs);
		}
	}
}

TEST(Fox, FundamentalIdentity)
{
	// sum_j fox(w,j) (X_j - 1) = X^{ab(w)} - 1, exactly.
	std::mt19937 rng(31);
	std::uniform_int_distribution<int> gen(1, 4), sign(0, 1), len(0, 30);
	const int rank = 4;
	for (int trial = 0; trial < 200; ++trial) {
		std::vector<int> raw;
		for (int i = len(rng); i > 0; --i)
			raw.push_back(gen(rng) * (sign(rng) ? 1 : -1));
		Word w(raw);
		LaurentPoly sum(rank);
		for (int j = 1; j <= rank; ++j)
			sum += fox_derivative(w, j, rank) *
			       (LaurentPoly::variable(rank, j) - LaurentPoly::constant(rank, 1));
		auto rhs = abelianized_monomial(w, rank) - LaurentPoly::constant(rank, 1);
		EXPECT_EQ(sum, rhs);
	}
}

TEST(Fox, DerivativesBatchMatchesSingle)
{
	Word w = word_from_string("abAcB");
	auto batch = fox_derivatives(w, 3);
	for (int j = 1; j <= 3; ++j)
		EXPECT_EQ(batch[j - 1], fox_derivative(w, j, 3));
}
