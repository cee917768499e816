#pragma once

#include "homcov/derived_words.hpp"
#include "homcov/spectra.hpp"
#include "homcov/triangularize.hpp"

#include <optional>
#include <string>
#include <vector>

namespace homcov {

/// Budgets for the solvability probe.
struct SolvabilityBudget {
	int depth_max = 3;            // derived-series depth explored
	std::size_t word_budget = 64; // max word length per derived element
	std::size_t words_per_depth = 16;
	long long power_cap = 60;     // cap on the lcm range of the power trick
	double flag_tolerance = 1e-8;
};

enum class SolvabilityKind { SolvableCertificate, NonsolvableWitness, Inconclusive };

/// Probe outcome. A certificate carries the flag basis found for the
/// powered generators (a finite-index candidate, not a proof); a witness
/// carries a derived-series word whose evaluation has an exact
/// eigenvalue off the unit circle, which obstructs conjugating the
/// generated group into the upper-triangular group.
struct SolvabilityVerdict {
	SolvabilityKind kind = SolvabilityKind::Inconclusive;
	ComplexMatrixD flag_basis;
	Int power_exponent = 1;
	Word witness_word;
	int witness_depth = 0;
	SpectralReport witness_report;
	long long words_explored = 0;
};

/// lcm(1..min(jordan_schur_bound(n), cap)): the documented exponent of
/// the power trick. Elements raised to this power land in any normal
/// subgroup whose index divides the capped bound.
inline Int power_trick_exponent(int dimension, long long cap = 60)
{
	Int bound = jordan_schur_bound(dimension);
	Int limit = bound < cap ? bound : Int(cap);
	Int e = 1;
	for (Int k = 2; k <= limit; ++k)
		e = int_lcm(e, k);
	return e;
}

namespace detail {

inline ComplexMatrixD to_complex_matrix(const IntMatrix& m)
{
	ComplexMatrixD out(m.rows(), m.cols());
	for (std::size_t i = 0; i < m.rows(); ++i)
		for (std::size_t j = 0; j < m.cols(); ++j)
			out(i, j) = m(i, j).convert_to<double>();
	return out;
}

/// Word evaluation on unimodular integer matrices, exact.
inline IntMatrix evaluate_word(const Word& w, const std::vector<IntMatrix>& gens,
                               const std::vector<IntMatrix>& inverses)
{
	const std::size_t n = gens.front().rows();
	IntMatrix acc = IntMatrix::identity(n);
	for (int v : w.letters()) {
		int i = std::abs(v);
		acc = acc * (v > 0 ? gens[i - 1] : inverses[i - 1]);
	}
	return acc;
}

} // namespace detail

/// Spectral probe for virtual solvability of the group generated by
/// unimodular integer matrices.
///
/// Certificate route: a simultaneous flag for the generators, or for the
/// generators raised to the power-trick exponent (attempted only when
/// every generator passes the Kronecker test, so that powering cannot
/// blow up). Witness route: derived-series words of depth >= 1 evaluated
/// on the generators; one derived step past triangularity forces
/// unipotence, so an exact off-circle eigenvalue at any depth >= 1
/// obstructs an upper-triangular conjugate. Verdicts are mutually
/// exclusive by construction; Inconclusive reports the explored count.
inline SolvabilityVerdict solvability_probe(const std::vector<IntMatrix>& gens,
                                            const SolvabilityBudget& budget = {})
{
	SolvabilityVerdict out;
	if (gens.empty()) {
		out.kind = SolvabilityKind::SolvableCertificate;
		out.flag_basis = ComplexMatrixD::identity(0);
		return out;
	}
	const std::size_t n = gens.front().rows();
	std::vector<IntMatrix> inverses;
	for (const auto& g : gens) {
		if (!g.square() || g.rows() != n)
			throw std::invalid_argument("generators must be square of equal dimension");
		inverses.push_back(unimodular_inverse(g));
	}

	// Direct flag: powers of triangular matrices stay triangular, so a
	// flag for the generators certifies one for any powered set.
	std::vector<ComplexMatrixD> cgens;
	for (const auto& g : gens)
		cgens.push_back(detail::to_complex_matrix(g));
	Int exponent = power_trick_exponent(static_cast<int>(n), budget.power_cap);
	auto direct = simultaneous_triangularize(cgens, budget.flag_tolerance);
	if (direct.success) {
		out.kind = SolvabilityKind::SolvableCertificate;
		out.flag_basis = direct.basis;
		out.power_exponent = exponent;
		return out;
	}

	// Powered flag, guarded by the Kronecker test: with all eigenvalues
	// roots of unity the entries of g^E grow only polynomially in E.
	bool all_cyclotomic = true;
	for (const auto& g : gens)
		all_cyclotomic = all_cyclotomic && kronecker_test(g).all_roots_of_unity();
	if (all_cyclotomic) {
		std::vector<ComplexMatrixD> powered;
		for (const auto& g : gens)
			powered.push_back(detail::to_complex_matrix(g.pow(exponent)));
		auto flagged = simultaneous_triangularize(powered, budget.flag_tolerance);
		if (flagged.success) {
			out.kind = SolvabilityKind::SolvableCertificate;
			out.flag_basis = flagged.basis;
			out.power_exponent = exponent;
			return out;
		}
	}

	// Witness search over derived-series words, depth 1 upward.
	const int symbols = static_cast<int>(gens.size());
	for (int depth = 1; depth <= budget.depth_max; ++depth) {
		auto words = derived_series_words(symbols, depth, budget.word_budget,
		                                  budget.words_per_depth);
		for (const Word& w : words) {
			++out.words_explored;
			IntMatrix value = detail::evaluate_word(w, gens, inverses);
			SpectralReport rep = kronecker_test(value);
			if (!rep.all_roots_of_unity()) {
				out.kind = SolvabilityKind::NonsolvableWitness;
				out.witness_word = w;
				out.witness_depth = depth;
				out.witness_report = std::move(rep);
				return out;
			}
		}
	}
	out.kind = SolvabilityKind::Inconclusive;
	return out;
}

inline std::string solvability_kind_name(SolvabilityKind k)
{
	switch (k) {
	case SolvabilityKind::SolvableCertificate:
		return "SolvableCertificate";
	case SolvabilityKind::NonsolvableWitness:
		return "NonsolvableWitness";
	default:
		return "Inconclusive";
	}
}

} // namespace homcov
