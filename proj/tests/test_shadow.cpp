#include "homcov/shadow.hpp"

#include <gtest/gtest.h>

#include <functional>

using namespace homcov;

namespace {

// a -> ab, b -> b as a rose map with lattice Z via a -> 1, b -> 0.
GraphMap rose_ab()
{
	return GraphMap::from_automorphism(
	    FreeAutomorphism(2, {word_from_string("ab", 2), word_from_string("b", 2)}));
}

CoinvariantLattice lattice_x()
{
	CoinvariantLattice lat;
	lat.ambient_rank = 2;
	lat.free_rank = 1;
	lat.projection = IntMatrix{{1, 0}};
	return lat;
}

QPoint qpoint(std::initializer_list<Rat> xs) { return QPoint(xs); }

// Synthetic two-loop transition graph with translations 0 and 1.
TransitionGraph two_loops()
{
	TransitionGraph tg;
	tg.num_vertices = 2;
	tg.lattice_rank = 1;
	tg.edges.push_back({1, 1, +1, {Int(0)}});
	tg.edges.push_back({2, 2, +1, {Int(1)}});
	return tg;
}

} // namespace

TEST(VertexLabels, RoseIsZeroAndBaseIsZero)
{
	auto labels = vertex_labels(rose_ab(), lattice_x());
	ASSERT_EQ(labels.size(), 1u);
	EXPECT_EQ(labels[0], (std::vector<Int>{0}));
}

TEST(VertexLabels, ThetaGraphBfsStep)
{
	// Two vertices, three parallel edges; the BFS tree uses the first
	// edge, whose cocycle value is zero, so both labels vanish: the
	// label of the far vertex is exactly the image of the connecting
	// tree edge.
	GraphMap theta(2, {{0, 1}, {0, 1}, {0, 1}},
	               {{1}, {2}, {3}}, 0);
	CoinvariantLattice lat;
	lat.ambient_rank = 2; // rank of pi_1(theta) = 3 - 2 + 1 = 2
	lat.free_rank = 1;
	lat.projection = IntMatrix{{1, 0}};
	auto labels = vertex_labels(theta, lat);
	EXPECT_EQ(labels[0], (std::vector<Int>{0}));
	EXPECT_EQ(labels[1], (std::vector<Int>{0}));
}

TEST(VertexLabels, DisconnectedGraphRejected)
{
	// Two vertices, a loop at each: no path between them.
	auto run = [] {
		GraphMap gm(2, {{0, 0}, {1, 1}}, {{1}, {2}}, 0);
		CoinvariantLattice lat;
		lat.ambient_rank = 1;
		lat.free_rank = 0;
		lat.projection = IntMatrix(0, 1);
		vertex_labels(gm, lat);
	};
	EXPECT_THROW(run(), std::invalid_argument);
}

TEST(Transition, RoseExample)
{
	auto tg = transition_graph(rose_ab(), lattice_x());
	ASSERT_EQ(tg.edges.size(), 3u);
	// a -> a (s=+1, t=0), a -> b (s=+1, t=1), b -> b (s=+1, t=0)
	EXPECT_EQ(tg.edges[0].from, 1);
	EXPECT_EQ(tg.edges[0].to, 1);
	EXPECT_EQ(tg.edges[0].sign, 1);
	EXPECT_EQ(tg.edges[0].translation, (std::vector<Int>{0}));
	EXPECT_EQ(tg.edges[1].to, 2);
	EXPECT_EQ(tg.edges[1].translation, (std::vector<Int>{1}));
	EXPECT_EQ(tg.edges[2].translation, (std::vector<Int>{0}));
}

TEST(Transition, IdentityMapAllLoopsZero)
{
	GraphMap id = GraphMap::from_automorphism(FreeAutomorphism::identity(2));
	CoinvariantLattice lat;
	lat.ambient_rank = 2;
	lat.free_rank = 2;
	lat.projection = IntMatrix::identity(2);
	auto tg = transition_graph(id, lat);
	for (const auto& e : tg.edges) {
		EXPECT_EQ(e.from, e.to);
		EXPECT_EQ(e.sign, 1);
		for (const auto& t : e.translation)
			EXPECT_EQ(t, 0);
	}
}

TEST(Transition, InverseImageHasNegativeSign)
{
	// a -> A on the rank-1 rose with trivial lattice.
	FreeAutomorphism inv(1, {word_from_string("A", 1)});
	GraphMap gm = GraphMap::from_automorphism(inv);
	CoinvariantLattice lat;
	lat.ambient_rank = 1;
	lat.free_rank = 0;
	lat.projection = IntMatrix(0, 1);
	auto tg = transition_graph(gm, lat);
	ASSERT_EQ(tg.edges.size(), 1u);
	EXPECT_EQ(tg.edges[0].sign, -1);
	EXPECT_TRUE(tg.edges[0].translation.empty());

	auto a = a_matrix(tg);
	EXPECT_EQ(a.at(1, 1), LaurentPoly::constant(0, -1));
	// A^2 = [1]: trace coefficient +1 at the single point of Q^0.
	auto s2 = trace_support(tg, 2);
	EXPECT_EQ(s2.size(), 1u);
	EXPECT_EQ(*s2.begin(), QPoint{});
	EXPECT_EQ(a_trace_power(a_matrix(tg), 2), LaurentPoly::constant(0, 1));
}

TEST(AMatrixOps, RoseExampleMatrix)
{
	auto a = a_matrix(transition_graph(rose_ab(), lattice_x()));
	EXPECT_EQ(a.at(1, 1), LaurentPoly::constant(1, 1));
	EXPECT_EQ(a.at(1, 2), LaurentPoly::variable(1, 1));
	EXPECT_EQ(a.at(2, 1), LaurentPoly(1));
	EXPECT_EQ(a.at(2, 2), LaurentPoly::constant(1, 1));
	// trace A = 2 with support {0}.
	auto s1 = trace_support(transition_graph(rose_ab(), lattice_x()), 1);
	EXPECT_EQ(s1.size(), 1u);
	EXPECT_EQ(*s1.begin(), qpoint({Rat(0)}));
}

TEST(Shadow, RoseExampleIsOrigin)
{
	auto shadow = equivariant_shadow(transition_graph(rose_ab(), lattice_x()));
	ASSERT_EQ(shadow.vertices.size(), 1u);
	EXPECT_EQ(shadow.vertices[0], qpoint({Rat(0)}));
}

TEST(Shadow, SecondRoseExampleIsOrigin)
{
	// a -> a, b -> ba with lattice Z via b -> 1, a -> 0.
	FreeAutomorphism f(2, {word_from_string("a", 2), word_from_string("ba", 2)});
	CoinvariantLattice lat;
	lat.ambient_rank = 2;
	lat.free_rank = 1;
	lat.projection = IntMatrix{{0, 1}};
	auto shadow = equivariant_shadow(transition_graph(GraphMap::from_automorphism(f), lat));
	ASSERT_EQ(shadow.vertices.size(), 1u);
	EXPECT_EQ(shadow.vertices[0], qpoint({Rat(0)}));
}

TEST(Shadow, TwoLoopsGiveSegment)
{
	auto shadow = equivariant_shadow(two_loops());
	ASSERT_EQ(shadow.vertices.size(), 2u);
	EXPECT_EQ(shadow.vertices[0], qpoint({Rat(0)}));
	EXPECT_EQ(shadow.vertices[1], qpoint({Rat(1)}));
	EXPECT_TRUE(shadow.contains(qpoint({Rat(1, 2)})));
	EXPECT_FALSE(shadow.contains(qpoint({Rat(3, 2)})));
}

TEST(Shadow, TraceSupportInsideShadow)
{
	for (int k = 1; k <= 10; ++k) {
		auto tg = two_loops();
		auto shadow = equivariant_shadow(tg);
		for (const auto& p : trace_support(tg, k))
			EXPECT_TRUE(shadow.contains(p));
	}
}

TEST(Shadow, TraceEqualsBruteForceCycleSum)
{
	// Brute force: enumerate length-k based cycles by walking the
	// transition graph, accumulate s(cycle) T^{t(cycle)}.
	auto tg = two_loops();
	tg.edges.push_back({1, 2, +1, {Int(0)}});
	tg.edges.push_back({2, 1, -1, {Int(1)}});
	auto a = a_matrix(tg);
	for (int k = 1; k <= 6; ++k) {
		LaurentPoly brute(tg.lattice_rank);
		std::function<void(int, int, int, int, std::vector<Int>)> walk =
		    [&](int start, int at, int len, int sign, std::vector<Int> t) {
			    if (len == k) {
				    if (at == start) {
					    LaurentPoly::Exponent e(tg.lattice_rank);
					    for (int i = 0; i < tg.lattice_rank; ++i)
						    e[i] = t[i].convert_to<long long>();
					    brute.add_term(e, Rat(sign));
				    }
				    return;
			    }
			    for (const auto& edge : tg.edges) {
				    if (edge.from != at)
					    continue;
				    auto t2 = t;
				    for (int i = 0; i < tg.lattice_rank; ++i)
					    t2[i] += edge.translation[i];
				    walk(start, edge.to, len + 1, sign * edge.sign, t2);
			    }
		    };
		for (int v = 1; v <= tg.num_vertices; ++v)
			walk(v, v, 0, +1, std::vector<Int>(tg.lattice_rank, 0));
		EXPECT_EQ(a_trace_power(a, k), brute) << "k=" << k;
	}
}

TEST(Shadow, InvariantUnderLabelShift)
{
	// Shifting every vertex label by a constant leaves translations of
	// transition edges along cycles unchanged, hence the same shadow.
	auto gm = rose_ab();
	auto lat = lattice_x();
	auto labels = vertex_labels(gm, lat);
	auto shifted = labels;
	for (auto& l : shifted)
		l[0] += 7;
	auto s1 = equivariant_shadow(transition_graph(gm, lat, &labels));
	auto s2 = equivariant_shadow(transition_graph(gm, lat, &shifted));
	EXPECT_EQ(s1.vertices, s2.vertices);
}

TEST(VertexSubgraph, SingletonShadowKeepsRecurrentPart)
{
	// Rose example: shadow {0}; the recurrent part contains all three
	// transition edges except none are transient here? The a->b edge is
	// not on any cycle and must be dropped.
	auto tg = transition_graph(rose_ab(), lattice_x());
	auto shadow = equivariant_shadow(tg);
	auto sub = vertex_subgraph(tg, shadow, shadow.vertices[0]);
	// Loops at e_a and e_b survive; the connecting edge does not.
	ASSERT_EQ(sub.edges.size(), 2u);
	for (const auto& e : sub.edges)
		EXPECT_EQ(e.from, e.to);
}

TEST(VertexSubgraph, TwoLoopsSelectByVertex)
{
	auto tg = two_loops();
	auto shadow = equivariant_shadow(tg);
	auto sub1 = vertex_subgraph(tg, shadow, qpoint({Rat(1)}));
	ASSERT_EQ(sub1.edges.size(), 1u);
	EXPECT_EQ(sub1.edges[0].translation, (std::vector<Int>{1}));
	auto sub0 = vertex_subgraph(tg, shadow, qpoint({Rat(0)}));
	ASSERT_EQ(sub0.edges.size(), 1u);
	EXPECT_EQ(sub0.edges[0].translation, (std::vector<Int>{0}));
	EXPECT_THROW(vertex_subgraph(tg, shadow, qpoint({Rat(1, 2)})), std::invalid_argument);
}

TEST(VertexSubgraph, CyclesClosedWithVertexTranslation)
{
	// Mixed graph: verify every cycle of length <= 8 in the returned
	// subgraph has normalized translation equal to the chosen vertex.
	auto tg = two_loops();
	tg.edges.push_back({1, 2, +1, {Int(1)}});
	tg.edges.push_back({2, 1, +1, {Int(-1)}});
	auto shadow = equivariant_shadow(tg);
	for (std::size_t vi = 0; vi < shadow.vertices.size(); ++vi) {
		auto sub = vertex_subgraph(tg, shadow, shadow.vertices[vi]);
		// Enumerate cycles of the subgraph up to length 8.
		std::function<void(int, int, int, std::vector<Int>)> walk =
		    [&](int start, int at, int len, std::vector<Int> t) {
			    if (len > 0 && at == start) {
				    QPoint tn(tg.lattice_rank);
				    for (int i = 0; i < tg.lattice_rank; ++i)
					    tn[i] = Rat(t[i], len);
				    EXPECT_EQ(tn, shadow.vertices[vi]);
			    }
			    if (len == 8)
				    return;
			    for (const auto& e : sub.edges) {
				    if (e.from != at)
					    continue;
				    auto t2 = t;
				    for (int i = 0; i < tg.lattice_rank; ++i)
					    t2[i] += e.translation[i];
				    walk(start, e.to, len + 1, t2);
			    }
		    };
		for (int v = 1; v <= tg.num_vertices; ++v)
			walk(v, v, 0, std::vector<Int>(tg.lattice_rank, 0));
	}
}

TEST(Stability, SinglePositiveLoop)
{
	TransitionGraph tg;
	tg.num_vertices = 1;
	tg.lattice_rank = 1;
	tg.edges.push_back({1, 1, +1, {Int(2)}});
	auto rep = stability_probe(tg, 8);
	EXPECT_EQ(rep.nonzero_k.size(), 8u);
	EXPECT_FALSE(rep.all_zero);
	ASSERT_TRUE(rep.period.has_value());
	EXPECT_EQ(*rep.period, 1);
}

TEST(Stability, OppositeSignsCancelEverywhere)
{
	TransitionGraph tg;
	tg.num_vertices = 1;
	tg.lattice_rank = 1;
	tg.edges.push_back({1, 1, +1, {Int(3)}});
	tg.edges.push_back({1, 1, -1, {Int(3)}});
	auto rep = stability_probe(tg, 6);
	EXPECT_TRUE(rep.all_zero);
	EXPECT_TRUE(rep.nonzero_k.empty());
}

TEST(Stability, EmptySubgraph)
{
	TransitionGraph tg;
	tg.num_vertices = 2;
	tg.lattice_rank = 1;
	auto rep = stability_probe(tg, 5);
	EXPECT_TRUE(rep.all_zero);
}

TEST(GraphMapParser, RoundTripAndValidation)
{
	auto gm = parse_graph_map_text("vertices 2\nbase 0\n"
	                               "edge a 0 1\nedge b 1 1\n"
	                               "image a ab\nimage b b\n");
	EXPECT_EQ(gm.num_vertices(), 2);
	EXPECT_EQ(gm.num_edges(), 2);
	EXPECT_EQ(gm.image(1), (std::vector<int>{1, 2}));
	// Broken path: a ends at 1, then a starts at 0 again.
	EXPECT_THROW(parse_graph_map_text("vertices 2\nbase 0\n"
	                                  "edge a 0 1\n"
	                                  "image a aa\n"),
	             std::invalid_argument);
	EXPECT_THROW(parse_graph_map_text("vertices 1\nbase 0\n"
	                                  "edge a 0 0\n"),
	             ParseError);
}
