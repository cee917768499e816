#include "homcov/automorphism.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace homcov;

namespace {

FreeAutomorphism aut2(const char* img_a, const char* img_b)
{
	return FreeAutomorphism(2, {word_from_string(img_a, 2), word_from_string(img_b, 2)});
}

} // namespace

TEST(Automorphism, ApplyIdentity)
{
	auto id = FreeAutomorphism::identity(3);
	Word w = word_from_string("abcBA");
	EXPECT_EQ(id.apply(w), w);
}

TEST(Automorphism, ApplySubstitutesAndReduces)
{
	// a -> ab, b -> b applied to a^{-1} gives b^{-1} a^{-1}
	auto t = aut2("ab", "b");
	EXPECT_EQ(t.apply(word_from_string("A")), word_from_string("BA"));
	// swap applied to ab gives ba
	auto s = aut2("b", "a");
	EXPECT_EQ(s.apply(word_from_string("ab")), word_from_string("ba"));
}

TEST(Automorphism, ComposeMatchesSequentialApplication)
{
	auto t = aut2("ab", "b");
	auto id = FreeAutomorphism::identity(2);
	EXPECT_EQ(compose(id, t), t);
	auto tt = compose(t, t);
	EXPECT_EQ(tt.image(1), word_from_string("abb"));
	EXPECT_EQ(tt.image(2), word_from_string("b"));

	std::mt19937 rng(11);
	std::uniform_int_distribution<int> gen(1, 2), sign(0, 1), len(0, 8);
	for (int trial = 0; trial < 100; ++trial) {
		std::vector<int> raw;
		int L = len(rng);
		for (int i = 0; i < L; ++i)
			raw.push_back(gen(rng) * (sign(rng) ? 1 : -1));
		Word w(raw);
		EXPECT_EQ(compose(t, tt).apply(w), t.apply(tt.apply(w)));
	}
}

TEST(Automorphism, AbelianizedMatrices)
{
	EXPECT_EQ(FreeAutomorphism::identity(2).abelianized(), IntMatrix::identity(2));
	EXPECT_EQ(aut2("ab", "a").abelianized(), (IntMatrix{{1, 1}, {1, 0}}));
	EXPECT_EQ(aut2("ab", "b").abelianized(), (IntMatrix{{1, 0}, {1, 1}}));
}

TEST(Automorphism, AbelianizeIsMultiplicative)
{
	auto f = aut2("ab", "b");
	auto g = aut2("ab", "a");
	EXPECT_EQ(compose(f, g).abelianized(), f.abelianized() * g.abelianized());
}

TEST(Automorphism, RejectsNonUnimodularImages)
{
	// a -> ab, b -> ab has determinant 0.
	EXPECT_THROW(aut2("ab", "ab"), std::invalid_argument);
}

TEST(Automorphism, InverseCertification)
{
	FreeAutomorphism t(2, {word_from_string("ab"), word_from_string("b")},
	                   {{word_from_string("aB"), word_from_string("b")}});
	EXPECT_TRUE(t.certified());
	EXPECT_EQ(t.inverse().apply(t.apply(word_from_string("abAB"))), word_from_string("abAB"));
	// A wrong inverse is rejected.
	EXPECT_THROW(FreeAutomorphism(2, {word_from_string("ab"), word_from_string("b")},
	                              {{word_from_string("ab"), word_from_string("b")}}),
	             std::invalid_argument);
}

TEST(AutomorphismParser, ParsesNamedGenerators)
{
	auto parsed = parse_automorphism_text("x -> xy\ny -> y\n");
	EXPECT_EQ(parsed.aut.rank(), 2);
	EXPECT_EQ(parsed.names[0], "x");
	EXPECT_EQ(parsed.aut.image(1), word_from_string("ab")); // x=1, y=2 internally
	auto round = automorphism_to_text(parsed.aut, &parsed.names);
	EXPECT_EQ(round, "x -> xy\ny -> y\n");
}

TEST(AutomorphismParser, ParsesInverseSection)
{
	auto parsed = parse_automorphism_text("x -> xy\ny -> y\ninverse:\nx -> xY\ny -> y\n");
	EXPECT_TRUE(parsed.aut.certified());
}

TEST(AutomorphismParser, RejectsUnreducedImageWithPosition)
{
	try {
		parse_automorphism_text("x -> xYy\ny -> y\n");
		FAIL() << "expected ParseError";
	} catch (const ParseError& e) {
		EXPECT_EQ(e.line, 1);
		EXPECT_GT(e.column, 1);
	}
}

TEST(AutomorphismParser, RejectsOutOfRangeGenerator)
{
	EXPECT_THROW(parse_automorphism_text("x -> xz\ny -> y\n"), ParseError);
	EXPECT_THROW(parse_automorphism_text("x -> x\nx -> y\n"), ParseError);
}
