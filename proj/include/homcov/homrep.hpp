#pragma once

#include "homcov/cover.hpp"
#include "homcov/fox.hpp"

#include <complex>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace homcov {

/// Integer matrix of a lifted automorphism on the 1-chains of its cover,
/// indexed by (edge orbit, deck element) with the cover's edge order.
/// Column (j, g) is the chain of the image of the lifted edge e_{j,g}.
struct ChainMatrix {
	CoverGraph cover;
	IntMatrix entries;
};

/// Traces the lifted edge path of each generator image from each vertex.
/// The preferred lift fixes the base vertex, so the lift starting at
/// vertex g begins at sigma(g).
inline ChainMatrix chain_action(const LiftedAutomorphism& lifted)
{
	const CoverGraph& cover = lifted.cover;
	const FiniteAbelianQuotient& q = cover.quotient();
	const long long E = cover.num_edges();
	IntMatrix m(E, E);
	for (int j = 1; j <= cover.base_rank(); ++j) {
		const Word& image = lifted.base.image(j);
		for (long long g = 0; g < cover.degree(); ++g) {
			long long col = cover.edge_index(j, g);
			long long at = lifted.deck_action[g];
			for (int v : image.letters()) {
				int i = std::abs(v);
				if (v > 0) {
					long long e = cover.edge_index(i, at);
					m(e, col) += 1;
					at = cover.edge_target(e);
				} else {
					GroupElement prev = q.add(cover.vertices()[at],
					                          q.negate(q.generator_image(i)));
					at = q.element_index(prev);
					m(cover.edge_index(i, at), col) -= 1;
				}
			}
		}
	}
	return ChainMatrix{cover, std::move(m)};
}

/// n x n matrix over the Laurent ring: entry (i, j) is the i-th Fox
/// derivative of the image of x_j, the lifted action on 1-chains of the
/// universal abelian cover. Specializing at the all-ones point recovers
/// the abelianized matrix.
struct MagnusMatrix {
	int rank = 0;
	std::vector<LaurentPoly> entries; // row-major n x n

	const LaurentPoly& at(int i, int j) const { return entries[(i - 1) * rank + (j - 1)]; }
};

inline MagnusMatrix magnus_matrix(const FreeAutomorphism& aut)
{
	const int n = aut.rank();
	MagnusMatrix m;
	m.rank = n;
	m.entries.assign(static_cast<std::size_t>(n) * n, LaurentPoly(n));
	for (int j = 1; j <= n; ++j) {
		auto col = fox_derivatives(aut.image(j), n);
		for (int i = 1; i <= n; ++i)
			m.entries[(i - 1) * n + (j - 1)] = col[i - 1];
	}
	return m;
}

using ComplexMatrix = Matrix<std::complex<double>>;
using CycMatrix = Matrix<Cyc>;

inline ComplexMatrix specialize_magnus(const MagnusMatrix& m,
                                       const std::vector<std::complex<double>>& point)
{
	ComplexMatrix out(m.rank, m.rank);
	for (int i = 1; i <= m.rank; ++i)
		for (int j = 1; j <= m.rank; ++j)
			out(i - 1, j - 1) = specialize(m.at(i, j), point);
	return out;
}

/// Exact specialization at a root-of-unity point given by rotation numbers.
inline CycMatrix specialize_magnus_exact(const MagnusMatrix& m, const std::vector<Rat>& rotations)
{
	CycMatrix out(m.rank, m.rank);
	for (int i = 1; i <= m.rank; ++i)
		for (int j = 1; j <= m.rank; ++j)
			out(i - 1, j - 1) = specialize_exact(m.at(i, j), rotations);
	return out;
}

/// Exact specialization at a character of a quotient of the same rank.
inline CycMatrix specialize_magnus_at(const MagnusMatrix& m, const Character& chi,
                                      const FiniteAbelianQuotient& q)
{
	return specialize_magnus_exact(m, chi.torus_rotations(q));
}

/// Restriction of a chain matrix to the cycle subspace in the cycle
/// basis: each basis cycle holds exactly one non-tree edge with
/// coefficient one, so coordinates are read off the non-tree positions.
struct HomologyRep {
	CoverGraph cover;
	IntMatrix matrix; // homology_rank x homology_rank
};

inline HomologyRep homology_rep(const ChainMatrix& c)
{
	const CoverGraph& cover = c.cover;
	const long long d = cover.homology_rank();
	IntMatrix h(d, d);
	for (long long j = 0; j < d; ++j) {
		const auto& z = cover.cycle_basis()[j];
		std::vector<Int> img(cover.num_edges(), 0);
		for (long long e = 0; e < cover.num_edges(); ++e) {
			if (z[e] == 0)
				continue;
			for (long long r = 0; r < cover.num_edges(); ++r)
				if (c.entries(r, e) != 0)
					img[r] += c.entries(r, e) * z[e];
		}
		for (long long k = 0; k < d; ++k)
			h(k, j) = img[cover.nontree_edges()[k]];
	}
	return HomologyRep{cover, std::move(h)};
}

/// Sums coefficients over each fiber; requires a cycle.
inline std::vector<Int> pushforward(const CoverGraph& cover, const std::vector<Int>& chain)
{
	if (chain.size() != static_cast<std::size_t>(cover.num_edges()))
		throw std::invalid_argument("chain has wrong dimension");
	// Boundary must vanish.
	std::vector<Int> bd(cover.num_vertices(), 0);
	for (long long e = 0; e < cover.num_edges(); ++e) {
		bd[cover.edge_target(e)] += chain[e];
		bd[cover.edge_source(e)] -= chain[e];
	}
	for (auto& v : bd)
		if (v != 0)
			throw std::invalid_argument("pushforward input is not a cycle");
	std::vector<Int> base(cover.base_rank(), 0);
	for (long long e = 0; e < cover.num_edges(); ++e)
		base[cover.edge_generator(e) - 1] += chain[e];
	return base;
}

/// Sum of all lifts of a base cycle.
inline std::vector<Int> transfer(const CoverGraph& cover, const std::vector<Int>& base_cycle)
{
	if (base_cycle.size() != static_cast<std::size_t>(cover.base_rank()))
		throw std::invalid_argument("base cycle has wrong dimension");
	std::vector<Int> chain(cover.num_edges(), 0);
	for (long long e = 0; e < cover.num_edges(); ++e)
		chain[e] = base_cycle[cover.edge_generator(e) - 1];
	return chain;
}

/// Coordinates of a cycle chain in the cycle basis.
inline std::vector<Int> cycle_coordinates(const CoverGraph& cover, const std::vector<Int>& chain)
{
	std::vector<Int> coords(cover.homology_rank());
	for (long long k = 0; k < cover.homology_rank(); ++k)
		coords[k] = chain[cover.nontree_edges()[k]];
	return coords;
}

/// Transfer as a homology_rank x base_rank integer matrix in the cycle
/// bases of cover and base rose.
inline IntMatrix transfer_matrix(const CoverGraph& cover)
{
	IntMatrix t(cover.homology_rank(), cover.base_rank());
	for (int j = 0; j < cover.base_rank(); ++j) {
		std::vector<Int> base(cover.base_rank(), 0);
		base[j] = 1;
		auto coords = cycle_coordinates(cover, transfer(cover, base));
		for (long long i = 0; i < cover.homology_rank(); ++i)
			t(i, j) = coords[i];
	}
	return t;
}

/// Pushforward as a base_rank x homology_rank integer matrix.
inline IntMatrix pushforward_matrix(const CoverGraph& cover)
{
	IntMatrix p(cover.base_rank(), cover.homology_rank());
	for (long long j = 0; j < cover.homology_rank(); ++j) {
		auto base = pushforward(cover, cover.cycle_basis()[j]);
		for (int i = 0; i < cover.base_rank(); ++i)
			p(i, j) = base[i];
	}
	return p;
}

/// Character-pair key for the block decomposition: indices into
/// all_characters(cover.quotient()).
using BlockKey = std::pair<std::size_t, std::size_t>; // (row character, column character)

struct BlockDecomposition {
	std::vector<Character> characters;
	std::map<BlockKey, ComplexMatrix> blocks; // nonzero blocks of the conjugated matrix
	double residual = 0.0;   // max |conjugated - assembled Magnus prediction|
	bool exact = false;      // computed and compared in cyclotomic arithmetic
	bool exact_match = true; // exact mode only: every comparison held exactly
};

namespace detail {

struct BlockEntry {
	int row_orbit, col_orbit;
	long long row_vertex, col_vertex;
	Int value;
};

} // namespace detail

/// Conjugates the chain matrix into the character (discrete Fourier)
/// basis u_{i,xi} = sum_g conj(xi(g)) e_{i,g} and extracts the n x n
/// blocks: B[(i,eta),(j,xi)] = (1/|G|) sum_{k,g} eta(k) conj(xi(g))
/// M[(i,k),(j,g)]. Nonzero support is predicted at eta = xi o sigma^{-1}
/// with value M(eta); the residual reports the comparison against the
/// assembled Magnus specializations.
inline BlockDecomposition block_decompose(const ChainMatrix& c,
                                          const LiftedAutomorphism& lifted, bool exact_mode)
{
	const CoverGraph& cover = c.cover;
	const FiniteAbelianQuotient& q = cover.quotient();
	const long long G = cover.degree();
	const std::size_t nchars = static_cast<std::size_t>(G);
	const int n = cover.base_rank();
	BlockDecomposition out;
	out.characters = all_characters(q);
	out.exact = exact_mode;
	MagnusMatrix mag = magnus_matrix(lifted.base);
	const auto& elements = cover.vertices();

	std::vector<long long> sigma_inv(G);
	for (long long g = 0; g < G; ++g)
		sigma_inv[lifted.deck_action[g]] = g;
	auto predicted_pair = [&](std::size_t eta, std::size_t xi) {
		for (long long g = 0; g < G; ++g)
			if (out.characters[eta].rotation_on(elements[g]) !=
			    out.characters[xi].rotation_on(elements[sigma_inv[g]]))
				return false;
		return true;
	};

	std::vector<detail::BlockEntry> nz;
	for (int j = 1; j <= n; ++j)
		for (long long g = 0; g < G; ++g) {
			long long col = cover.edge_index(j, g);
			for (int i = 1; i <= n; ++i)
				for (long long k = 0; k < G; ++k) {
					const Int& v = c.entries(cover.edge_index(i, k), col);
					if (v != 0)
						nz.push_back({i - 1, j - 1, k, g, v});
				}
		}

	double residual = 0.0;

	if (exact_mode) {
		std::vector<std::vector<Cyc>> val(nchars, std::vector<Cyc>(G));
		for (std::size_t ci = 0; ci < nchars; ++ci)
			for (long long g = 0; g < G; ++g)
				val[ci][g] = out.characters[ci].value(elements[g]);
		for (std::size_t eta = 0; eta < nchars; ++eta)
			for (std::size_t xi = 0; xi < nchars; ++xi) {
				CycMatrix block(n, n);
				for (const auto& e : nz)
					block(e.row_orbit, e.col_orbit) +=
					    val[eta][e.row_vertex] * val[xi][e.col_vertex].conjugated() *
					    Cyc(Rat(e.value));
				bool nonzero = false;
				Cyc scale{Rat(1, G)};
				for (int ii = 0; ii < n; ++ii)
					for (int jj = 0; jj < n; ++jj) {
						block(ii, jj) = block(ii, jj) * scale;
						if (!block(ii, jj).is_zero())
							nonzero = true;
					}
				bool predicted = predicted_pair(eta, xi);
				if (predicted) {
					CycMatrix pred = specialize_magnus_at(mag, out.characters[eta], q);
					for (int ii = 0; ii < n; ++ii)
						for (int jj = 0; jj < n; ++jj)
							if (!(block(ii, jj) - pred(ii, jj)).is_zero())
								out.exact_match = false;
				} else if (nonzero) {
					out.exact_match = false;
				}
				if (!nonzero)
					continue;
				ComplexMatrix cm(n, n);
				for (int ii = 0; ii < n; ++ii)
					for (int jj = 0; jj < n; ++jj)
						cm(ii, jj) = block(ii, jj).to_complex();
				out.blocks.emplace(BlockKey{eta, xi}, cm);
			}
		out.residual = out.exact_match ? 0.0 : 1.0;
		return out;
	}

	using Cx = std::complex<double>;
	std::vector<std::vector<Cx>> val(nchars, std::vector<Cx>(G));
	for (std::size_t ci = 0; ci < nchars; ++ci)
		for (long long g = 0; g < G; ++g)
			val[ci][g] = out.characters[ci].value_complex(elements[g]);
	double mscale = 1.0;
	for (const auto& e : nz)
		mscale = std::max(mscale, std::abs(e.value.convert_to<double>()));
	for (std::size_t eta = 0; eta < nchars; ++eta)
		for (std::size_t xi = 0; xi < nchars; ++xi) {
			ComplexMatrix block(n, n);
			for (const auto& e : nz)
				block(e.row_orbit, e.col_orbit) += val[eta][e.row_vertex] *
				                                   std::conj(val[xi][e.col_vertex]) *
				                                   e.value.convert_to<double>();
			double maxabs = 0.0;
			for (int ii = 0; ii < n; ++ii)
				for (int jj = 0; jj < n; ++jj) {
					block(ii, jj) /= static_cast<double>(G);
					maxabs = std::max(maxabs, std::abs(block(ii, jj)));
				}
			if (predicted_pair(eta, xi)) {
				std::vector<Cx> pt;
				for (const Rat& r : out.characters[eta].torus_rotations(q)) {
					double ang = 2.0 * std::numbers::pi * to_double(r);
					pt.push_back({std::cos(ang), std::sin(ang)});
				}
				ComplexMatrix pred = specialize_magnus(mag, pt);
				for (int ii = 0; ii < n; ++ii)
					for (int jj = 0; jj < n; ++jj)
						residual = std::max(residual,
						                    std::abs(block(ii, jj) - pred(ii, jj)));
			} else {
				residual = std::max(residual, maxabs);
			}
			if (maxabs > 1e-9 * G * mscale)
				out.blocks.emplace(BlockKey{eta, xi}, block);
		}
	out.residual = residual;
	return out;
}

} // namespace homcov
