#pragma once

#include "homcov/automorphism.hpp"
#include "homcov/laurent.hpp"
#include "homcov/word.hpp"

#include <vector>

namespace homcov {

/// Abelianized Fox derivative d(w)/d(x_j) in Z[X_1^{+-1},...,X_rank^{+-1}].
/// Left product rule d(uv) = d(u) + u^{ab} d(v) with base cases
/// d(x_j) = 1 and d(x_j^{-1}) = -X_j^{-1}: the coefficient of X^v records
/// the signed traversal of the x_j-edge at lattice position v when the
/// word is lifted to the universal abelian cover.
inline LaurentPoly fox_derivative(const Word& w, int j, int rank)
{
	if (j < 1 || j > rank)
		throw std::invalid_argument("fox derivative index out of range");
	LaurentPoly d(rank);
	LaurentPoly::Exponent prefix(rank, 0); // abelianized prefix monomial
	for (int v : w.letters()) {
		int g = std::abs(v);
		if (v > 0) {
			if (g == j)
				d.add_term(prefix, Rat(1));
			prefix[g - 1] += 1;
		} else {
			prefix[g - 1] -= 1;
			if (g == j)
				d.add_term(prefix, Rat(-1));
		}
	}
	return d;
}

/// All Fox derivatives of w at once (column of the Magnus construction).
inline std::vector<LaurentPoly> fox_derivatives(const Word& w, int rank)
{
	std::vector<LaurentPoly> out(rank, LaurentPoly(rank));
	LaurentPoly::Exponent prefix(rank, 0);
	for (int v : w.letters()) {
		int g = std::abs(v);
		if (v > 0) {
			out[g - 1].add_term(prefix, Rat(1));
			prefix[g - 1] += 1;
		} else {
			prefix[g - 1] -= 1;
			out[g - 1].add_term(prefix, Rat(-1));
		}
	}
	return out;
}

/// X^{ab(w)} as a Laurent monomial.
inline LaurentPoly abelianized_monomial(const Word& w, int rank)
{
	auto e = w.exponent_vector(rank);
	LaurentPoly::Exponent exp(e.begin(), e.end());
	return LaurentPoly::monomial(rank, exp);
}

} // namespace homcov
