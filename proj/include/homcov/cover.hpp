#pragma once

#include "homcov/abelian.hpp"
#include "homcov/automorphism.hpp"
#include "homcov/linalg.hpp"
#include "homcov/snf.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace homcov {

/// Torsion-free quotient of Z^n by the span of (gamma_* - I)v over a
/// generating set: the lattice housing admissible quotients. The torsion
/// split off by the Smith form is reported alongside.
struct CoinvariantLattice {
	int ambient_rank = 0;          // n
	int free_rank = 0;             // rank of the torsion-free quotient
	std::vector<Int> torsion;      // invariant factors > 1
	IntMatrix projection;          // free_rank x n, Z^n ->> Z^free_rank

	bool trivial() const { return free_rank == 0; }
};

inline CoinvariantLattice coinvariant_lattice(const std::vector<FreeAutomorphism>& gens)
{
	if (gens.empty())
		throw std::invalid_argument("coinvariant lattice needs at least one generator");
	const int n = gens.front().rank();
	for (const auto& g : gens)
		if (g.rank() != n)
			throw std::invalid_argument("generators must share a rank");
	IntMatrix span(n, static_cast<std::size_t>(n) * gens.size());
	std::size_t col = 0;
	for (const auto& g : gens) {
		IntMatrix a = g.abelianized();
		for (int j = 0; j < n; ++j, ++col)
			for (int i = 0; i < n; ++i)
				span(i, col) = a(i, j) - (i == j ? 1 : 0);
	}
	SmithForm s = smith_normal_form(span);
	CoinvariantLattice out;
	out.ambient_rank = n;
	out.free_rank = n - static_cast<int>(s.rank);
	for (std::size_t i = 0; i < s.rank; ++i)
		if (s.d(i, i) > 1)
			out.torsion.push_back(s.d(i, i));
	out.projection = IntMatrix(out.free_rank, n);
	for (int i = 0; i < out.free_rank; ++i)
		for (int j = 0; j < n; ++j)
			out.projection(i, j) = s.u(s.rank + i, j);
	return out;
}

/// Quotients of the homology of F_n that factor through the coinvariant
/// lattice with the free part reduced mod m, each surjective onto
/// (Z/m)^s. The enumeration is deterministic: s ascending, then the
/// reduced row-echelon parameter matrix in row-major lexicographic
/// order; the per-call scan is bounded by `scan_limit` candidates and
/// the collected block re-sorted by (invariant factors, projection
/// entries). For prime m this lists every quotient of (Z/m)^free_rank;
/// for composite m only the unit-pivot ones.
inline std::vector<FiniteAbelianQuotient>
admissible_quotients(const CoinvariantLattice& lattice, long long m,
                     std::size_t max_count = SIZE_MAX, std::size_t scan_limit = 4096)
{
	if (m < 2)
		throw std::invalid_argument("modulus must be at least 2");
	std::vector<FiniteAbelianQuotient> out;
	const int f = lattice.free_rank;
	if (f == 0)
		return out;
	const int n = lattice.ambient_rank;

	for (int s = 1; s <= f && out.size() < max_count; ++s) {
		// Enumerate RREF matrices: pivot columns ascending, then free
		// entries in counting order.
		std::vector<std::vector<std::vector<long long>>> block;
		std::vector<int> pivots(s);
		for (int i = 0; i < s; ++i)
			pivots[i] = i;
		std::size_t scanned = 0;
		auto advance_pivots = [&]() -> bool {
			int i = s - 1;
			while (i >= 0 && pivots[i] == f - s + i)
				--i;
			if (i < 0)
				return false;
			++pivots[i];
			for (int j = i + 1; j < s; ++j)
				pivots[j] = pivots[i] + (j - i);
			return true;
		};
		bool more = true;
		std::vector<std::vector<long long>> collected;
		while (more && scanned < scan_limit) {
			// Free positions: non-pivot columns to the right of each pivot.
			std::vector<std::pair<int, int>> free_pos;
			for (int r = 0; r < s; ++r)
				for (int c = pivots[r] + 1; c < f; ++c)
					if (std::find(pivots.begin(), pivots.end(), c) == pivots.end())
						free_pos.push_back({r, c});
			std::vector<long long> assign(free_pos.size(), 0);
			bool entries_more = true;
			while (entries_more && scanned < scan_limit) {
				std::vector<long long> rref(static_cast<std::size_t>(s) * f, 0);
				for (int r = 0; r < s; ++r)
					rref[r * f + pivots[r]] = 1;
				for (std::size_t k = 0; k < free_pos.size(); ++k)
					rref[free_pos[k].first * f + free_pos[k].second] = assign[k];
				collected.push_back(std::move(rref));
				++scanned;
				int k = static_cast<int>(assign.size()) - 1;
				while (k >= 0 && assign[k] + 1 == m) {
					assign[k] = 0;
					--k;
				}
				if (k < 0)
					entries_more = false;
				else
					++assign[k];
			}
			more = advance_pivots();
		}
		// Build the composite projections and order the block canonically.
		std::vector<std::pair<std::vector<Int>, IntMatrix>> keyed;
		for (auto& rref : collected) {
			IntMatrix proj(s, n);
			for (int r = 0; r < s; ++r)
				for (int j = 0; j < n; ++j) {
					Int acc = 0;
					for (int c = 0; c < f; ++c)
						acc += rref[r * f + c] * lattice.projection(c, j);
					acc %= m;
					if (acc < 0)
						acc += m;
					proj(r, j) = acc;
				}
			std::vector<Int> key;
			for (int r = 0; r < s; ++r)
				for (int j = 0; j < n; ++j)
					key.push_back(proj(r, j));
			keyed.push_back({std::move(key), std::move(proj)});
		}
		std::sort(keyed.begin(), keyed.end(),
		          [](const auto& a, const auto& b) { return a.first < b.first; });
		for (auto& [key, proj] : keyed) {
			if (out.size() >= max_count)
				break;
			out.emplace_back(std::vector<long long>(s, m), proj, n);
		}
	}
	return out;
}

/// Covering graph of the rose determined by a finite abelian quotient.
/// Vertices are the group elements; edge (g, i) runs from g to
/// g + proj(e_i) and has index (i-1)|G| + index(g). The spanning tree is
/// grown breadth-first from the identity, inspecting forward edges in
/// generator order and then backward edges in generator order. The cycle
/// basis lists non-tree edges in (source vertex, generator) lexicographic
/// order, each closed through the tree.
class CoverGraph {
public:
	explicit CoverGraph(FiniteAbelianQuotient quotient)
	    : quotient_(std::move(quotient)), order_(quotient_.order()),
	      rank_(quotient_.rank())
	{
		vertices_ = quotient_.elements();
		const long long E = static_cast<long long>(rank_) * order_;
		edge_source_.resize(E);
		edge_target_.resize(E);
		for (int i = 1; i <= rank_; ++i) {
			GroupElement step = quotient_.generator_image(i);
			for (long long g = 0; g < order_; ++g) {
				long long e = edge_index(i, g);
				edge_source_[e] = g;
				edge_target_[e] = quotient_.element_index(quotient_.add(vertices_[g], step));
			}
		}
		build_tree();
		build_cycle_basis();
	}

	const FiniteAbelianQuotient& quotient() const { return quotient_; }
	int base_rank() const { return rank_; }
	long long degree() const { return order_; }
	long long num_vertices() const { return order_; }
	long long num_edges() const { return static_cast<long long>(rank_) * order_; }
	/// |G|(n-1) + 1
	long long homology_rank() const { return order_ * (rank_ - 1) + 1; }

	long long edge_index(int generator, long long vertex) const
	{
		return static_cast<long long>(generator - 1) * order_ + vertex;
	}
	int edge_generator(long long e) const { return static_cast<int>(e / order_) + 1; }
	long long edge_source(long long e) const { return edge_source_[e]; }
	long long edge_target(long long e) const { return edge_target_[e]; }
	bool edge_in_tree(long long e) const { return tree_flag_[e] != 0; }

	const std::vector<GroupElement>& vertices() const { return vertices_; }
	long long base_vertex() const { return 0; }

	/// Signed tree-edge path from the base vertex to v.
	const std::vector<std::pair<long long, int>>& tree_path(long long v) const
	{
		return tree_paths_[v];
	}

	const std::vector<long long>& nontree_edges() const { return nontree_edges_; }
	/// 1-based index of a non-tree edge in the cycle-basis order, 0 if tree edge.
	long long nontree_number(long long e) const { return nontree_number_[e]; }

	/// Cycle basis vectors as integer chains of dimension num_edges().
	const std::vector<std::vector<Int>>& cycle_basis() const { return cycle_basis_; }

	/// Word of the based loop through a non-tree edge: the Schreier
	/// generator of the covering subgroup attached to that edge.
	Word schreier_word(long long e) const
	{
		std::vector<int> letters;
		for (auto [te, dir] : tree_paths_[edge_source_[e]])
			letters.push_back(dir * edge_generator(te));
		letters.push_back(edge_generator(e));
		const auto& back = tree_paths_[edge_target_[e]];
		for (auto it = back.rbegin(); it != back.rend(); ++it)
			letters.push_back(-it->second * edge_generator(it->first));
		return Word(std::move(letters));
	}

	/// Boundary matrix: rows vertices, columns edges.
	IntMatrix boundary() const
	{
		IntMatrix d(order_, num_edges());
		for (long long e = 0; e < num_edges(); ++e) {
			d(edge_target_[e], e) += 1;
			d(edge_source_[e], e) -= 1;
		}
		return d;
	}

private:
	void build_tree()
	{
		const long long E = num_edges();
		tree_flag_.assign(E, 0);
		nontree_number_.assign(E, 0);
		tree_paths_.assign(order_, {});
		std::vector<char> visited(order_, 0);
		std::deque<long long> queue;
		visited[0] = 1;
		queue.push_back(0);
		long long reached = 1;
		while (!queue.empty()) {
			long long v = queue.front();
			queue.pop_front();
			for (int i = 1; i <= rank_; ++i) {
				long long e = edge_index(i, v);
				long long w = edge_target_[e];
				if (!visited[w]) {
					visited[w] = 1;
					tree_flag_[e] = 1;
					tree_paths_[w] = tree_paths_[v];
					tree_paths_[w].push_back({e, +1});
					queue.push_back(w);
					++reached;
				}
			}
			for (int i = 1; i <= rank_; ++i) {
				GroupElement step = quotient_.generator_image(i);
				long long u = quotient_.element_index(
				    quotient_.add(vertices_[v], quotient_.negate(step)));
				long long e = edge_index(i, u);
				if (!visited[u]) {
					visited[u] = 1;
					tree_flag_[e] = 1;
					tree_paths_[u] = tree_paths_[v];
					tree_paths_[u].push_back({e, -1});
					queue.push_back(u);
				}
			}
		}
		if (reached != order_ && std::count(visited.begin(), visited.end(), 1) != order_)
			throw std::logic_error("cover graph is not connected");
	}

	void build_cycle_basis()
	{
		for (long long e = 0; e < num_edges(); ++e)
			if (!tree_flag_[e])
				nontree_edges_.push_back(e);
		std::sort(nontree_edges_.begin(), nontree_edges_.end(),
		          [this](long long a, long long b) {
			          auto ka = std::make_pair(edge_source_[a], edge_generator(a));
			          auto kb = std::make_pair(edge_source_[b], edge_generator(b));
			          return ka < kb;
		          });
		for (std::size_t k = 0; k < nontree_edges_.size(); ++k)
			nontree_number_[nontree_edges_[k]] = static_cast<long long>(k) + 1;
		for (long long e : nontree_edges_) {
			std::vector<Int> chain(num_edges(), 0);
			for (auto [te, dir] : tree_paths_[edge_source_[e]])
				chain[te] += dir;
			chain[e] += 1;
			for (auto [te, dir] : tree_paths_[edge_target_[e]])
				chain[te] -= dir;
			cycle_basis_.push_back(std::move(chain));
		}
		if (static_cast<long long>(cycle_basis_.size()) != homology_rank())
			throw std::logic_error("cycle basis has unexpected rank");
	}

	FiniteAbelianQuotient quotient_;
	long long order_;
	int rank_;
	std::vector<GroupElement> vertices_;
	std::vector<long long> edge_source_, edge_target_;
	std::vector<char> tree_flag_;
	std::vector<long long> nontree_number_;
	std::vector<std::vector<std::pair<long long, int>>> tree_paths_;
	std::vector<long long> nontree_edges_;
	std::vector<std::vector<Int>> cycle_basis_;
};

inline CoverGraph build_cover(const FiniteAbelianQuotient& q) { return CoverGraph(q); }

/// A base automorphism together with the deck automorphism it induces on
/// a cover it preserves. The preferred lift fixes the base vertex.
struct LiftedAutomorphism {
	FreeAutomorphism base;
	CoverGraph cover;
	std::vector<long long> deck_action; // vertex index -> vertex index
	bool base_lift_fixed = true;

	bool deck_action_trivial() const
	{
		for (std::size_t i = 0; i < deck_action.size(); ++i)
			if (deck_action[i] != static_cast<long long>(i))
				return false;
		return true;
	}
};

/// Lattice of vectors sent to zero by the quotient, as columns of an
/// n x n integer matrix.
inline IntMatrix quotient_kernel_basis(const FiniteAbelianQuotient& q)
{
	const int n = q.rank();
	const std::size_t r = q.num_factors();
	if (r == 0)
		return IntMatrix::identity(n);
	IntMatrix aug(r, n + r);
	for (std::size_t i = 0; i < r; ++i) {
		for (int j = 0; j < n; ++j)
			aug(i, j) = q.projection()(i, j);
		aug(i, n + i) = q.factors()[i];
	}
	SmithForm s = smith_normal_form(aug);
	if (s.rank != r)
		throw std::logic_error("projection lost rank");
	// Kernel of aug = V columns beyond the rank; project to Z^n.
	IntMatrix basis(n, n + r - s.rank);
	for (std::size_t c = s.rank; c < static_cast<std::size_t>(n) + r; ++c)
		for (int i = 0; i < n; ++i)
			basis(i, c - s.rank) = s.v(i, c);
	if (basis.cols() != static_cast<std::size_t>(n))
		throw std::logic_error("kernel basis has unexpected rank");
	return basis;
}

/// Integer preimages of the standard generators f_i of the quotient
/// group, as columns of an n x r matrix.
inline IntMatrix quotient_section(const FiniteAbelianQuotient& q)
{
	const int n = q.rank();
	const std::size_t r = q.num_factors();
	IntMatrix section(n, r);
	if (r == 0)
		return section;
	IntMatrix aug(r, n + r);
	for (std::size_t i = 0; i < r; ++i) {
		for (int j = 0; j < n; ++j)
			aug(i, j) = q.projection()(i, j);
		aug(i, n + i) = q.factors()[i];
	}
	SmithForm s = smith_normal_form(aug);
	for (std::size_t i = 0; i < r; ++i)
		if (s.d(i, i) != 1)
			throw std::logic_error("section needs a surjective projection");
	for (std::size_t k = 0; k < r; ++k) {
		// Solve aug * z = f_k: z = V * (U f_k padded with zeros).
		std::vector<Int> uf(r);
		for (std::size_t i = 0; i < r; ++i)
			uf[i] = s.u(i, k);
		for (int i = 0; i < n; ++i) {
			Int acc = 0;
			for (std::size_t j = 0; j < r; ++j)
				acc += s.v(i, j) * uf[j];
			section(i, k) = acc;
		}
	}
	return section;
}

/// Lifts an automorphism to the cover of a quotient: succeeds iff the
/// abelianized action preserves the kernel lattice. Returns the induced
/// deck automorphism; nullopt signals the cover must be discarded.
inline std::optional<LiftedAutomorphism> lift_automorphism(const FreeAutomorphism& aut,
                                                           const FiniteAbelianQuotient& q)
{
	if (aut.rank() != q.rank())
		throw std::invalid_argument("automorphism and quotient rank mismatch");
	IntMatrix a = aut.abelianized();
	IntMatrix kernel = quotient_kernel_basis(q);
	IntMatrix image = a * kernel;
	for (std::size_t c = 0; c < image.cols(); ++c) {
		// The image column must project to the identity.
		GroupElement g(q.num_factors(), 0);
		for (std::size_t i = 0; i < q.num_factors(); ++i) {
			Int acc = 0;
			for (int j = 0; j < q.rank(); ++j)
				acc += q.projection()(i, j) * image(j, c);
			acc %= q.factors()[i];
			if (acc < 0)
				acc += q.factors()[i];
			g[i] = acc.convert_to<long long>();
		}
		if (g != q.identity())
			return std::nullopt;
	}

	CoverGraph cover(q);
	// Deck action: sigma(class of v) = class of a*v on section preimages.
	IntMatrix section = quotient_section(q);
	IntMatrix moved = a * section;
	std::vector<GroupElement> sigma_f;
	for (std::size_t k = 0; k < q.num_factors(); ++k) {
		GroupElement g(q.num_factors(), 0);
		for (std::size_t i = 0; i < q.num_factors(); ++i) {
			Int acc = 0;
			for (int j = 0; j < q.rank(); ++j)
				acc += q.projection()(i, j) * moved(j, k);
			acc %= q.factors()[i];
			if (acc < 0)
				acc += q.factors()[i];
			g[i] = acc.convert_to<long long>();
		}
		sigma_f.push_back(g);
	}
	std::vector<long long> action;
	std::vector<char> seen(cover.num_vertices(), 0);
	for (const GroupElement& t : q.elements()) {
		GroupElement img = q.identity();
		for (std::size_t i = 0; i < q.num_factors(); ++i) {
			GroupElement scaled = sigma_f[i];
			for (auto& x : scaled)
				x *= t[i];
			img = q.add(img, q.reduce(scaled));
		}
		long long idx = q.element_index(img);
		action.push_back(idx);
		seen[idx] = 1;
	}
	for (char s : seen)
		if (!s)
			throw std::logic_error("deck action is not a bijection");
	return LiftedAutomorphism{aut, std::move(cover), std::move(action), true};
}

/// Surjection onto Z/p killing a complement sublattice and sending every
/// boundary class to 1; throws when the requested values are inconsistent.
inline FiniteAbelianQuotient
boundary_split_quotient(const std::vector<Word>& boundary_words,
                        const std::vector<std::vector<Int>>& complement_basis, long long p,
                        int rank)
{
	if (p < 2)
		throw std::invalid_argument("p must be at least 2");
	std::vector<std::vector<long long>> rows;
	std::vector<long long> rhs;
	for (const auto& v : complement_basis) {
		if (v.size() != static_cast<std::size_t>(rank))
			throw std::invalid_argument("complement vector has wrong length");
		std::vector<long long> row(rank);
		for (int j = 0; j < rank; ++j) {
			Int m = v[j] % p;
			if (m < 0)
				m += p;
			row[j] = m.convert_to<long long>();
		}
		rows.push_back(row);
		rhs.push_back(0);
	}
	for (const Word& w : boundary_words) {
		auto e = w.exponent_vector(rank);
		std::vector<long long> row(rank);
		for (int j = 0; j < rank; ++j)
			row[j] = ((e[j] % p) + p) % p;
		rows.push_back(row);
		rhs.push_back(1);
	}
	// Gaussian elimination mod p on the transposed problem: find c with
	// c . row_k = rhs_k. Treat c as the unknown row vector.
	const std::size_t m = rows.size();
	std::vector<std::vector<long long>> a(m, std::vector<long long>(rank + 1, 0));
	for (std::size_t i = 0; i < m; ++i) {
		for (int j = 0; j < rank; ++j)
			a[i][j] = rows[i][j];
		a[i][rank] = rhs[i];
	}
	auto inv_mod = [&](long long x) {
		long long t = 0, newt = 1, r = p, newr = ((x % p) + p) % p;
		while (newr != 0) {
			long long qq = r / newr;
			long long t2 = t - qq * newt, r2 = r - qq * newr;
			t = newt;
			newt = t2;
			r = newr;
			newr = r2;
		}
		if (r != 1)
			throw std::invalid_argument("modulus must be prime for the boundary split");
		return ((t % p) + p) % p;
	};
	std::size_t row = 0;
	std::vector<int> pivot_col;
	for (int c = 0; c < rank && row < m; ++c) {
		std::size_t pr = row;
		while (pr < m && a[pr][c] % p == 0)
			++pr;
		if (pr == m)
			continue;
		std::swap(a[pr], a[row]);
		long long inv = inv_mod(a[row][c]);
		for (int j = 0; j <= rank; ++j)
			a[row][j] = (a[row][j] * inv) % p;
		for (std::size_t r2 = 0; r2 < m; ++r2) {
			if (r2 == row || a[r2][c] % p == 0)
				continue;
			long long f = a[r2][c] % p;
			for (int j = 0; j <= rank; ++j)
				a[r2][j] = (((a[r2][j] - f * a[row][j]) % p) + p) % p;
		}
		pivot_col.push_back(c);
		++row;
	}
	for (std::size_t r2 = row; r2 < m; ++r2)
		if (a[r2][rank] % p != 0)
			throw std::invalid_argument("inconsistent boundary classes: no such character");
	std::vector<long long> c(rank, 0);
	for (std::size_t r2 = 0; r2 < row; ++r2)
		c[pivot_col[r2]] = a[r2][rank];
	bool nonzero = false;
	for (long long x : c)
		nonzero |= x != 0;
	if (!nonzero)
		throw std::invalid_argument("boundary split produced the zero character");
	IntMatrix proj(1, rank);
	for (int j = 0; j < rank; ++j)
		proj(0, j) = c[j];
	return FiniteAbelianQuotient({p}, proj, rank);
}

} // namespace homcov
