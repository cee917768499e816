#pragma once

#include "homcov/cover.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace homcov {

/// Rewrites a word of the covering subgroup in the Schreier generators
/// attached to the cover's non-tree edges: trace the word through the
/// cover from the base vertex and emit one letter per non-tree edge
/// crossed. Throws when the word does not lift to a loop.
inline Word schreier_rewrite(const CoverGraph& cover, const Word& w)
{
	const FiniteAbelianQuotient& q = cover.quotient();
	std::vector<int> letters;
	long long at = cover.base_vertex();
	for (int v : w.letters()) {
		int i = std::abs(v);
		if (i > cover.base_rank())
			throw std::invalid_argument("word rank exceeds cover rank");
		long long e;
		if (v > 0) {
			e = cover.edge_index(i, at);
			at = cover.edge_target(e);
		} else {
			GroupElement prev =
			    q.add(cover.vertices()[at], q.negate(q.generator_image(i)));
			at = q.element_index(prev);
			e = cover.edge_index(i, at);
		}
		long long num = cover.nontree_number(e);
		if (num != 0)
			letters.push_back(v > 0 ? static_cast<int>(num) : -static_cast<int>(num));
	}
	if (at != cover.base_vertex())
		throw std::invalid_argument("word is not in the covering subgroup");
	return Word(std::move(letters));
}

/// The lifted automorphism rewritten as an automorphism of the free
/// group on the cover's cycle basis: generator k maps to the rewriting
/// of the image of its Schreier word. Inverse images are carried along
/// when the base automorphism is certified.
inline FreeAutomorphism rebase_automorphism(const LiftedAutomorphism& lifted)
{
	const CoverGraph& cover = lifted.cover;
	const long long d = cover.homology_rank();
	std::vector<Word> images;
	for (long long k = 0; k < d; ++k) {
		Word s = cover.schreier_word(cover.nontree_edges()[k]);
		images.push_back(schreier_rewrite(cover, lifted.base.apply(s)));
	}
	std::optional<std::vector<Word>> inverses;
	if (lifted.base.certified()) {
		FreeAutomorphism inv = lifted.base.inverse();
		std::vector<Word> v;
		for (long long k = 0; k < d; ++k) {
			Word s = cover.schreier_word(cover.nontree_edges()[k]);
			v.push_back(schreier_rewrite(cover, inv.apply(s)));
		}
		inverses = std::move(v);
	}
	return FreeAutomorphism(static_cast<int>(d), std::move(images), std::move(inverses));
}

/// Independent word-level route to the homology matrix: rewrite the
/// image of each Schreier generator and abelianize. Agrees with the
/// chain-level restriction of homology_rep.
inline IntMatrix homology_by_rewriting(const LiftedAutomorphism& lifted)
{
	const CoverGraph& cover = lifted.cover;
	const long long d = cover.homology_rank();
	IntMatrix h(d, d);
	for (long long k = 0; k < d; ++k) {
		Word s = cover.schreier_word(cover.nontree_edges()[k]);
		Word image = lifted.base.apply(s);
		// Trace without reduction shortcuts: exponent sums of the rewrite.
		Word rew = schreier_rewrite(cover, image);
		auto e = rew.exponent_vector(static_cast<int>(d));
		for (long long i = 0; i < d; ++i)
			h(i, k) = e[i];
	}
	return h;
}

} // namespace homcov
