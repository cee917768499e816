#pragma once

#include "homcov/linalg.hpp"
#include "homcov/transition.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace homcov {

/// Rational point in Q^r.
using QPoint = std::vector<Rat>;

namespace detail {

/// Elementary circuits of a directed multigraph by DFS with blocking
/// (Johnson-style), each circuit reported once as a list of edge ids.
/// Enumeration stops at `cap` circuits; the return flag reports whether
/// the enumeration was exhausted before the cap.
struct CircuitEnumeration {
	std::vector<std::vector<int>> circuits; // edge indices into tg.edges
	bool complete = true;
};

inline CircuitEnumeration enumerate_simple_cycles(const TransitionGraph& tg,
                                                  std::size_t cap = 1000000)
{
	CircuitEnumeration out;
	const int n = tg.num_vertices;
	// Adjacency by source.
	std::vector<std::vector<int>> adj(n + 1);
	for (std::size_t k = 0; k < tg.edges.size(); ++k)
		adj[tg.edges[k].from].push_back(static_cast<int>(k));

	std::vector<int> stack_edges;
	std::vector<char> on_path(n + 1, 0);

	// DFS rooted at each start vertex; only vertices >= root may appear,
	// so each elementary circuit is found exactly once (at its smallest
	// vertex).
	std::function<bool(int, int)> dfs = [&](int root, int v) -> bool {
		for (int ek : adj[v]) {
			const auto& e = tg.edges[ek];
			if (e.to < root)
				continue;
			if (e.to == root) {
				stack_edges.push_back(ek);
				out.circuits.push_back(stack_edges);
				stack_edges.pop_back();
				if (out.circuits.size() >= cap) {
					out.complete = false;
					return false;
				}
			} else if (!on_path[e.to]) {
				on_path[e.to] = 1;
				stack_edges.push_back(ek);
				bool keep = dfs(root, e.to);
				stack_edges.pop_back();
				on_path[e.to] = 0;
				if (!keep)
					return false;
			}
		}
		return true;
	};
	for (int root = 1; root <= n && out.complete; ++root) {
		on_path.assign(n + 1, 0);
		on_path[root] = 1;
		stack_edges.clear();
		dfs(root, root);
	}
	return out;
}

/// Membership p in conv(points), exact: Caratheodory search over affine
/// subsets of size <= r+1 solved as exact linear systems.
inline bool in_convex_hull(const QPoint& p, const std::vector<QPoint>& points)
{
	const int r = static_cast<int>(p.size());
	for (const auto& q : points)
		if (q == p)
			return true;
	if (points.empty())
		return false;
	if (r == 0)
		return !points.empty();
	// Subsets of size up to r+1.
	const int m = static_cast<int>(points.size());
	std::vector<int> idx;
	std::function<bool(int, int)> pick = [&](int start, int want) -> bool {
		if (want == 0) {
			// Solve sum l_i q_i = p, sum l_i = 1, l_i >= 0.
			const int k = static_cast<int>(idx.size());
			Matrix<Rat> a(r + 1, k);
			std::vector<Rat> b(r + 1, Rat(0));
			for (int j = 0; j < k; ++j) {
				for (int i = 0; i < r; ++i)
					a(i, j) = points[idx[j]][i];
				a(r, j) = 1;
			}
			for (int i = 0; i < r; ++i)
				b[i] = p[i];
			b[r] = 1;
			auto sol = field_solve(a, b);
			if (!sol)
				return false;
			for (const auto& l : *sol)
				if (l < 0)
					return false;
			return true;
		}
		for (int i = start; i < m; ++i) {
			idx.push_back(i);
			if (pick(i + 1, want - 1))
				return true;
			idx.pop_back();
		}
		return false;
	};
	for (int size = 1; size <= std::min(r + 1, m); ++size) {
		idx.clear();
		if (pick(0, size))
			return true;
	}
	return false;
}

} // namespace detail

/// Rational polytope: the convex hull of the normalized translations of
/// the simple based cycles, with a witness cycle per vertex.
struct ShadowPolytope {
	int rank = 0;
	std::vector<QPoint> vertices;
	std::vector<std::vector<int>> witness_cycles; // edge ids per vertex
	bool enumeration_complete = true;

	bool contains(const QPoint& p) const
	{
		if (static_cast<int>(p.size()) != rank)
			throw std::invalid_argument("point dimension mismatch");
		return detail::in_convex_hull(p, vertices);
	}
};

/// Normalized translation of a circuit.
inline QPoint normalized_translation(const TransitionGraph& tg, const std::vector<int>& circuit)
{
	QPoint t(tg.lattice_rank, Rat(0));
	for (int ek : circuit)
		for (int i = 0; i < tg.lattice_rank; ++i)
			t[i] += Rat(tg.edges[ek].translation[i]);
	for (auto& x : t)
		x /= static_cast<long long>(circuit.size());
	return t;
}

inline ShadowPolytope equivariant_shadow(const TransitionGraph& tg, std::size_t cycle_cap = 1000000)
{
	auto enumeration = detail::enumerate_simple_cycles(tg, cycle_cap);
	ShadowPolytope shadow;
	shadow.rank = tg.lattice_rank;
	shadow.enumeration_complete = enumeration.complete;
	std::map<QPoint, std::vector<int>> candidates;
	for (const auto& circuit : enumeration.circuits)
		candidates.emplace(normalized_translation(tg, circuit), circuit);
	std::vector<QPoint> points;
	for (auto& [p, w] : candidates)
		points.push_back(p);
	for (auto& [p, w] : candidates) {
		std::vector<QPoint> others;
		for (const auto& q : points)
			if (q != p)
				others.push_back(q);
		if (!detail::in_convex_hull(p, others)) {
			shadow.vertices.push_back(p);
			shadow.witness_cycles.push_back(w);
		}
	}
	return shadow;
}

/// S_k: the support of trace(A^k) scaled by 1/k.
inline std::set<QPoint> trace_support(const TransitionGraph& tg, int k)
{
	LaurentPoly t = a_trace_power(a_matrix(tg), k);
	std::set<QPoint> out;
	for (const auto& [e, c] : t.terms()) {
		QPoint p(tg.lattice_rank);
		for (int i = 0; i < tg.lattice_rank; ++i)
			p[i] = Rat(e[i], k);
		out.insert(p);
	}
	return out;
}

namespace detail {

/// A rational functional strictly maximized at `v` over the other
/// vertices: solved by Fourier-Motzkin elimination on
/// <l, v - u> >= 1. The vertex property guarantees feasibility.
inline std::optional<QPoint> supporting_functional(const std::vector<QPoint>& vertices,
                                                   std::size_t target)
{
	const int r = vertices.empty() ? 0 : static_cast<int>(vertices[target].size());
	std::vector<QPoint> diffs;
	for (std::size_t i = 0; i < vertices.size(); ++i) {
		if (i == target)
			continue;
		QPoint d(r);
		for (int j = 0; j < r; ++j)
			d[j] = vertices[target][j] - vertices[i][j];
		diffs.push_back(d);
	}
	if (diffs.empty())
		return QPoint(r, Rat(0));
	// System: sum_j l_j d_j >= 1 for every difference d. Represent each
	// inequality as (a_1.. a_r | c): sum a_j l_j >= c and eliminate
	// variables back to front.
	struct Ineq {
		QPoint a;
		Rat c;
	};
	std::vector<Ineq> sys;
	for (const auto& d : diffs)
		sys.push_back({d, Rat(1)});
	std::vector<std::vector<Ineq>> stages; // for back-substitution
	for (int var = r - 1; var >= 1; --var) {
		stages.push_back(sys);
		std::vector<Ineq> lower, upper, rest;
		for (const auto& q : sys) {
			if (q.a[var] > 0)
				lower.push_back(q); // l_var >= (c - rest)/a
			else if (q.a[var] < 0)
				upper.push_back(q); // l_var <= ...
			else
				rest.push_back(q);
		}
		std::vector<Ineq> next = rest;
		for (const auto& lo : lower)
			for (const auto& up : upper) {
				// lo: a_lo l_var >= c_lo - s_lo; up: -a_up' l_var >= c_up - s_up
				// Combine to eliminate l_var.
				Ineq comb;
				comb.a.assign(r, Rat(0));
				Rat alo = lo.a[var], aup = -up.a[var];
				for (int j = 0; j < r; ++j)
					comb.a[j] = lo.a[j] * aup + up.a[j] * alo;
				comb.a[var] = 0;
				comb.c = lo.c * aup + up.c * alo;
				next.push_back(comb);
			}
		sys = std::move(next);
		if (sys.size() > 40000)
			return std::nullopt; // defensive cap; not expected at desk scale
	}
	stages.push_back(sys);
	// Solve the univariate stage for l_0, then back-substitute.
	QPoint l(r, Rat(0));
	for (int var = 0; var < r; ++var) {
		const auto& stage = stages[r - 1 - var];
		// Bounds on l_var given l_0..l_{var-1} fixed (later vars zeroed
		// in stage by construction).
		std::optional<Rat> lo, hi;
		bool infeasible_zero = false;
		for (const auto& q : stage) {
			Rat coeff = q.a[var];
			Rat rhs = q.c;
			for (int j = 0; j < var; ++j)
				rhs -= q.a[j] * l[j];
			if (coeff > 0) {
				Rat bound = rhs / coeff;
				if (!lo || bound > *lo)
					lo = bound;
			} else if (coeff < 0) {
				Rat bound = rhs / coeff;
				if (!hi || bound < *hi)
					hi = bound;
			} else if (rhs > 0)
				infeasible_zero = true;
		}
		if (infeasible_zero)
			return std::nullopt;
		Rat value;
		if (lo && hi) {
			if (*lo > *hi)
				return std::nullopt;
			value = (*lo + *hi) / 2;
		} else if (lo)
			value = *lo + 1;
		else if (hi)
			value = *hi - 1;
		else
			value = 0;
		l[var] = value;
	}
	return l;
}

} // namespace detail

/// Vertex subgraph: the union of all cycles whose normalized translation
/// is the polytope vertex v, computed as the critical subgraph of the
/// max-cycle-mean problem for a functional strictly supporting v.
inline TransitionGraph vertex_subgraph(const TransitionGraph& tg, const ShadowPolytope& shadow,
                                       const QPoint& v)
{
	std::size_t target = shadow.vertices.size();
	for (std::size_t i = 0; i < shadow.vertices.size(); ++i)
		if (shadow.vertices[i] == v)
			target = i;
	if (target == shadow.vertices.size())
		throw std::invalid_argument("v is not a vertex of the shadow polytope");
	auto ell = detail::supporting_functional(shadow.vertices, target);
	if (!ell)
		throw std::logic_error("no strictly supporting functional found");

	// Edge weights <ell, t(eta)> shifted by the target mean.
	Rat mu(0);
	for (int i = 0; i < tg.lattice_rank; ++i)
		mu += (*ell)[i] * v[i];
	std::vector<Rat> w(tg.edges.size());
	for (std::size_t k = 0; k < tg.edges.size(); ++k) {
		Rat s(0);
		for (int i = 0; i < tg.lattice_rank; ++i)
			s += (*ell)[i] * Rat(tg.edges[k].translation[i]);
		w[k] = s - mu;
	}

	// Longest-walk potentials; all cycle weights are <= 0 by hull
	// membership, so |V| sweeps converge.
	const int n = tg.num_vertices;
	std::vector<Rat> pot(n + 1, Rat(0));
	for (int sweep = 0; sweep <= n; ++sweep) {
		bool changed = false;
		for (std::size_t k = 0; k < tg.edges.size(); ++k) {
			Rat cand = pot[tg.edges[k].from] + w[k];
			if (cand > pot[tg.edges[k].to]) {
				pot[tg.edges[k].to] = cand;
				changed = true;
			}
		}
		if (!changed)
			break;
		if (sweep == n)
			throw std::logic_error("positive cycle contradicts hull membership");
	}

	// Tight subgraph and its strongly connected components.
	std::vector<std::size_t> tight;
	for (std::size_t k = 0; k < tg.edges.size(); ++k)
		if (pot[tg.edges[k].from] + w[k] == pot[tg.edges[k].to])
			tight.push_back(k);
	// Tarjan-less SCC via Kosaraju on the tight subgraph.
	std::vector<std::vector<int>> out_adj(n + 1), in_adj(n + 1);
	for (std::size_t t : tight) {
		out_adj[tg.edges[t].from].push_back(tg.edges[t].to);
		in_adj[tg.edges[t].to].push_back(tg.edges[t].from);
	}
	std::vector<int> order;
	std::vector<char> seen(n + 1, 0);
	std::function<void(int)> dfs1 = [&](int v0) {
		seen[v0] = 1;
		for (int w0 : out_adj[v0])
			if (!seen[w0])
				dfs1(w0);
		order.push_back(v0);
	};
	for (int v0 = 1; v0 <= n; ++v0)
		if (!seen[v0])
			dfs1(v0);
	std::vector<int> comp(n + 1, -1);
	int ncomp = 0;
	std::function<void(int, int)> dfs2 = [&](int v0, int c) {
		comp[v0] = c;
		for (int w0 : in_adj[v0])
			if (comp[w0] < 0)
				dfs2(w0, c);
	};
	for (auto it = order.rbegin(); it != order.rend(); ++it)
		if (comp[*it] < 0)
			dfs2(*it, ncomp++);

	TransitionGraph sub;
	sub.num_vertices = tg.num_vertices;
	sub.lattice_rank = tg.lattice_rank;
	for (std::size_t t : tight)
		if (comp[tg.edges[t].from] == comp[tg.edges[t].to])
			sub.edges.push_back(tg.edges[t]);
	return sub;
}

/// Exact signed cycle sums of the restricted graph: the k <= k_max with
/// trace(A_v^k) != 0, plus a bounded periodicity heuristic. Infinitude
/// is not decidable here; the verdict is a semidecision.
struct StabilityReport {
	std::vector<int> nonzero_k;
	bool all_zero = true;
	std::optional<int> period;   // smallest period explaining the tail pattern
	bool recurring_near_cap = false;
};

inline StabilityReport stability_probe(const TransitionGraph& tg_v, int k_max)
{
	if (k_max < 1)
		throw std::invalid_argument("k_max must be positive");
	StabilityReport rep;
	if (tg_v.edges.empty())
		return rep;
	AMatrix a = a_matrix(tg_v);
	AMatrix acc = a;
	std::vector<char> nonzero(k_max + 1, 0);
	for (int k = 1; k <= k_max; ++k) {
		if (k > 1)
			acc = a_multiply(acc, a);
		if (!a_trace(acc).is_zero()) {
			rep.nonzero_k.push_back(k);
			nonzero[k] = 1;
		}
	}
	rep.all_zero = rep.nonzero_k.empty();
	if (!rep.all_zero) {
		rep.recurring_near_cap = nonzero[k_max] || (k_max >= 2 && nonzero[k_max - 1]);
		for (int q = 1; q <= k_max / 2; ++q) {
			bool ok = true;
			for (int k = 1; k + q <= k_max; ++k)
				ok = ok && nonzero[k] == nonzero[k + q];
			if (ok) {
				rep.period = q;
				break;
			}
		}
	}
	return rep;
}

} // namespace homcov
