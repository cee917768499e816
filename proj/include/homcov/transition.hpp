#pragma once

#include "homcov/cover.hpp"
#include "homcov/graphmap.hpp"
#include "homcov/laurent.hpp"

#include <deque>
#include <stdexcept>
#include <vector>

namespace homcov {

/// Canonical combinatorial structure on a graph: breadth-first spanning
/// tree from the base (forward edges in index order, then backward),
/// with the non-tree edges in index order as the free basis of the
/// fundamental group. The deck cocycle of the lattice cover assigns 0 to
/// tree edges and the lattice projection column to non-tree edge j.
struct GraphFrame {
	std::vector<char> in_tree;            // per edge (1-based shifted)
	std::vector<int> free_index;          // edge -> generator number, 0 for tree
	std::vector<std::vector<int>> paths;  // per vertex: signed tree edges from base
	int rank = 0;                         // number of non-tree edges
};

inline GraphFrame graph_frame(const GraphMap& gm)
{
	GraphFrame f;
	const int E = gm.num_edges(), V = gm.num_vertices();
	f.in_tree.assign(E + 1, 0);
	f.free_index.assign(E + 1, 0);
	f.paths.assign(V, {});
	std::vector<char> visited(V, 0);
	std::deque<int> queue;
	visited[gm.base_vertex()] = 1;
	queue.push_back(gm.base_vertex());
	while (!queue.empty()) {
		int v = queue.front();
		queue.pop_front();
		for (int e = 1; e <= E; ++e)
			if (gm.tail(e) == v && !visited[gm.head(e)]) {
				visited[gm.head(e)] = 1;
				f.in_tree[e] = 1;
				f.paths[gm.head(e)] = f.paths[v];
				f.paths[gm.head(e)].push_back(e);
				queue.push_back(gm.head(e));
			}
		for (int e = 1; e <= E; ++e)
			if (gm.head(e) == v && !visited[gm.tail(e)]) {
				visited[gm.tail(e)] = 1;
				f.in_tree[e] = 1;
				f.paths[gm.tail(e)] = f.paths[v];
				f.paths[gm.tail(e)].push_back(-e);
				queue.push_back(gm.tail(e));
			}
	}
	for (char c : visited)
		if (!c)
			throw std::invalid_argument("graph is disconnected");
	int next = 0;
	for (int e = 1; e <= E; ++e)
		if (!f.in_tree[e])
			f.free_index[e] = ++next;
	f.rank = next;
	return f;
}

/// Labels a(v): signed sum of deck-cocycle values along the BFS path
/// from the base (a(base) = 0). With the canonical tree also carrying
/// the cocycle these vanish identically; they are kept explicit so that
/// label differences along paths and the base-lift relabeling property
/// stay checkable.
inline std::vector<std::vector<Int>> vertex_labels(const GraphMap& gm,
                                                   const CoinvariantLattice& lattice)
{
	if (lattice.ambient_rank != gm.pi1_rank())
		throw std::invalid_argument("lattice ambient rank must match the graph's free rank");
	GraphFrame frame = graph_frame(gm);
	const int r = lattice.free_rank;
	auto iota = [&](int e) {
		std::vector<Int> v(r, 0);
		int j = frame.free_index[std::abs(e)];
		if (j != 0)
			for (int i = 0; i < r; ++i)
				v[i] = lattice.projection(i, j - 1);
		if (e < 0)
			for (auto& x : v)
				x = -x;
		return v;
	};
	std::vector<std::vector<Int>> labels(gm.num_vertices(), std::vector<Int>(r, 0));
	for (int v = 0; v < gm.num_vertices(); ++v)
		for (int e : frame.paths[v]) {
			auto step = iota(e);
			for (int i = 0; i < r; ++i)
				labels[v][i] += step[i];
		}
	return labels;
}

/// Directed transition graph: one vertex per edge of X, one edge per
/// letter of each edge image, carrying the traversal sign and the deck
/// translation of the prefix path.
struct TransitionEdge {
	int from = 0, to = 0; // 1-based edges of X
	int sign = +1;
	std::vector<Int> translation;
};

struct TransitionGraph {
	int num_vertices = 0;
	int lattice_rank = 0;
	std::vector<TransitionEdge> edges;
};

inline TransitionGraph transition_graph(const GraphMap& gm, const CoinvariantLattice& lattice,
                                        const std::vector<std::vector<Int>>* labels_opt = nullptr)
{
	GraphFrame frame = graph_frame(gm);
	const int r = lattice.free_rank;
	std::vector<std::vector<Int>> labels =
	    labels_opt ? *labels_opt : vertex_labels(gm, lattice);
	auto iota = [&](int e) {
		std::vector<Int> v(r, 0);
		int j = frame.free_index[std::abs(e)];
		if (j != 0)
			for (int i = 0; i < r; ++i)
				v[i] = lattice.projection(i, j - 1);
		if (e < 0)
			for (auto& x : v)
				x = -x;
		return v;
	};

	TransitionGraph tg;
	tg.num_vertices = gm.num_edges();
	tg.lattice_rank = r;
	for (int e = 1; e <= gm.num_edges(); ++e) {
		const auto& path = gm.image(e);
		int start = gm.vertex_image(gm.tail(e));
		std::vector<Int> prefix(r, 0); // deck offset accumulated along the lift
		for (int step : path) {
			int f = std::abs(step);
			int sign = step > 0 ? +1 : -1;
			TransitionEdge te;
			te.from = e;
			te.to = f;
			te.sign = sign;
			// p(eta) ends at the tail of the traversed edge: the prefix
			// for a positive traversal, prefix plus the reversed edge
			// otherwise. Translation = deck offset + label difference.
			std::vector<Int> offset = prefix;
			int endpoint;
			if (sign > 0)
				endpoint = gm.tail(f);
			else {
				auto back = iota(-f);
				for (int i = 0; i < r; ++i)
					offset[i] += back[i];
				endpoint = gm.tail(f);
			}
			te.translation.assign(r, 0);
			for (int i = 0; i < r; ++i)
				te.translation[i] =
				    offset[i] + labels[endpoint][i] - labels[start][i];
			tg.edges.push_back(std::move(te));
			// Advance the walk.
			auto step_vec = iota(step);
			for (int i = 0; i < r; ++i)
				prefix[i] += step_vec[i];
		}
	}
	return tg;
}

/// Square matrix over the Laurent ring in r variables: entry (i, j) sums
/// s(eta) T^{t(eta)} over transition edges from e_i to e_j. Rows are
/// sources, columns targets.
struct AMatrix {
	int dim = 0;
	int rank = 0; // Laurent variables
	std::vector<LaurentPoly> entries;

	const LaurentPoly& at(int i, int j) const { return entries[(i - 1) * dim + (j - 1)]; }
	LaurentPoly& at(int i, int j) { return entries[(i - 1) * dim + (j - 1)]; }
};

inline AMatrix a_matrix(const TransitionGraph& tg)
{
	AMatrix a;
	a.dim = tg.num_vertices;
	a.rank = tg.lattice_rank;
	a.entries.assign(static_cast<std::size_t>(a.dim) * a.dim, LaurentPoly(a.rank));
	for (const auto& e : tg.edges) {
		LaurentPoly::Exponent exp(a.rank);
		for (int i = 0; i < a.rank; ++i)
			exp[i] = e.translation[i].convert_to<long long>();
		a.at(e.from, e.to).add_term(exp, Rat(e.sign));
	}
	return a;
}

inline AMatrix a_multiply(const AMatrix& x, const AMatrix& y)
{
	if (x.dim != y.dim || x.rank != y.rank)
		throw std::invalid_argument("A-matrix shape mismatch");
	AMatrix r;
	r.dim = x.dim;
	r.rank = x.rank;
	r.entries.assign(static_cast<std::size_t>(r.dim) * r.dim, LaurentPoly(r.rank));
	for (int i = 1; i <= r.dim; ++i)
		for (int k = 1; k <= r.dim; ++k) {
			if (x.at(i, k).is_zero())
				continue;
			for (int j = 1; j <= r.dim; ++j) {
				if (y.at(k, j).is_zero())
					continue;
				r.at(i, j) += x.at(i, k) * y.at(k, j);
			}
		}
	return r;
}

inline LaurentPoly a_trace(const AMatrix& a)
{
	LaurentPoly t(a.rank);
	for (int i = 1; i <= a.dim; ++i)
		t += a.at(i, i);
	return t;
}

/// trace(A^k), by repeated multiplication.
inline LaurentPoly a_trace_power(const AMatrix& a, int k)
{
	if (k < 1)
		throw std::invalid_argument("power must be positive");
	AMatrix acc = a;
	for (int i = 1; i < k; ++i)
		acc = a_multiply(acc, a);
	return a_trace(acc);
}

} // namespace homcov
