// Acceptance suite: one pass/fail line per criterion, nonzero exit on
// any failure. Every tolerance is pinned here, in code.

#include "homcov/search.hpp"
#include "homcov/serialize.hpp"
#include "homcov/shadow.hpp"

#include "../support/random_aut.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace homcov;
using testsupport::random_automorphism;
using testsupport::random_reduced_word;

namespace {

struct Outcome {
	bool pass = true;
	std::string detail;

	void fail(const std::string& why)
	{
		pass = false;
		if (!detail.empty())
			detail += "; ";
		detail += why;
	}
	void note(const std::string& info)
	{
		if (detail.empty())
			detail = info;
	}
};

std::vector<FiniteAbelianQuotient> bundled_quotients()
{
	return {
	    FiniteAbelianQuotient::trivial(2),
	    FiniteAbelianQuotient({2}, IntMatrix{{1, 0}}, 2),
	    FiniteAbelianQuotient({3}, IntMatrix{{1, 2}}, 2),
	    FiniteAbelianQuotient({4}, IntMatrix{{1, 1}}, 2),
	    FiniteAbelianQuotient({2, 2}, IntMatrix{{1, 0}, {0, 1}}, 2),
	    FiniteAbelianQuotient({6}, IntMatrix{{1, 5}}, 2),
	    FiniteAbelianQuotient({2, 4}, IntMatrix{{1, 0}, {0, 1}}, 2),
	    FiniteAbelianQuotient({12}, IntMatrix{{1, 7}}, 2),
	    FiniteAbelianQuotient({5}, IntMatrix{{1, 0, 2}}, 3),
	    FiniteAbelianQuotient({2, 2}, IntMatrix{{1, 0, 1}, {0, 1, 1}}, 3),
	};
}

std::vector<FreeAutomorphism> bundled_automorphisms(int rank)
{
	std::vector<FreeAutomorphism> out;
	if (rank == 2) {
		out.push_back(FreeAutomorphism(
		    2, {word_from_string("ab", 2), word_from_string("b", 2)},
		    {{word_from_string("aB", 2), word_from_string("b", 2)}}));
		out.push_back(FreeAutomorphism(
		    2, {word_from_string("ab", 2), word_from_string("a", 2)},
		    {{word_from_string("b", 2), word_from_string("Ba", 2)}}));
		out.push_back(FreeAutomorphism(
		    2, {word_from_string("b", 2), word_from_string("a", 2)},
		    {{word_from_string("b", 2), word_from_string("a", 2)}}));
		out.push_back(FreeAutomorphism(
		    2, {word_from_string("a", 2), word_from_string("ba", 2)},
		    {{word_from_string("a", 2), word_from_string("bA", 2)}}));
	} else if (rank == 3) {
		out.push_back(FreeAutomorphism(
		    3, {word_from_string("ab", 3), word_from_string("bc", 3),
		        word_from_string("c", 3)},
		    {{word_from_string("acB", 3), word_from_string("bC", 3),
		      word_from_string("c", 3)}}));
		out.push_back(FreeAutomorphism::identity(3));
	}
	return out;
}

struct BundledGraphMap {
	std::string name;
	GraphMap gm;
	CoinvariantLattice lattice;
};

std::vector<BundledGraphMap> bundled_graph_maps()
{
	std::vector<BundledGraphMap> out;
	{
		// x -> xy, y -> y on the rose, deck lattice Z via x -> 1.
		GraphMap gm(1, {{0, 0}, {0, 0}}, {{1, 2}, {2}}, 0);
		CoinvariantLattice lat;
		lat.ambient_rank = 2;
		lat.free_rank = 1;
		lat.projection = IntMatrix{{1, 0}};
		out.push_back({"rose-twist", gm, lat});
	}
	{
		// x -> xy, y -> yx on the rose, full homology lattice.
		GraphMap gm(1, {{0, 0}, {0, 0}}, {{1, 2}, {2, 1}}, 0);
		CoinvariantLattice lat;
		lat.ambient_rank = 2;
		lat.free_rank = 2;
		lat.projection = IntMatrix::identity(2);
		out.push_back({"rose-exchange", gm, lat});
	}
	{
		// Identity on a theta-like graph; pi_1 rank 2.
		GraphMap gm(2, {{0, 0}, {0, 1}, {1, 1}}, {{1}, {2}, {3}}, 0);
		CoinvariantLattice lat;
		lat.ambient_rank = 2;
		lat.free_rank = 2;
		lat.projection = IntMatrix::identity(2);
		out.push_back({"theta-identity", gm, lat});
	}
	{
		// Two-vertex map exchanging the side loops through the bridge.
		GraphMap gm(2, {{0, 0}, {0, 1}, {1, 1}}, {{1, 1}, {2}, {3, 3, 3}}, 0);
		CoinvariantLattice lat;
		lat.ambient_rank = 2;
		lat.free_rank = 2;
		lat.projection = IntMatrix::identity(2);
		out.push_back({"theta-stretch", gm, lat});
	}
	return out;
}

Outcome fox_fundamental_identity()
{
	Outcome o;
	std::mt19937 rng(2024);
	std::uniform_int_distribution<int> rank_dist(2, 5), len_dist(1, 64);
	for (int trial = 0; trial < 1000; ++trial) {
		int rank = rank_dist(rng);
		Word w = random_reduced_word(rng, rank, len_dist(rng));
		LaurentPoly sum(rank);
		for (int j = 1; j <= rank; ++j)
			sum += fox_derivative(w, j, rank) *
			       (LaurentPoly::variable(rank, j) - LaurentPoly::constant(rank, 1));
		if (sum != abelianized_monomial(w, rank) - LaurentPoly::constant(rank, 1)) {
			o.fail("identity failed at trial " + std::to_string(trial));
			break;
		}
	}
	o.note("1000 words, ranks 2..5, length <= 64, exact");
	return o;
}

Outcome chain_functoriality()
{
	Outcome o;
	std::mt19937 rng(2025);
	std::vector<FiniteAbelianQuotient> quotients = {
	    FiniteAbelianQuotient({2}, IntMatrix{{1, 0}}, 2),
	    FiniteAbelianQuotient({4}, IntMatrix{{1, 1}}, 2),
	    FiniteAbelianQuotient({2, 2}, IntMatrix{{1, 0}, {0, 1}}, 2),
	    FiniteAbelianQuotient({8}, IntMatrix{{1, 3}}, 2),
	    FiniteAbelianQuotient({3}, IntMatrix{{1, 0, 1}}, 3),
	    FiniteAbelianQuotient({2, 2}, IntMatrix{{1, 0, 1}, {0, 1, 0}}, 3),
	    FiniteAbelianQuotient({7}, IntMatrix{{1, 2, 3}}, 3),
	    FiniteAbelianQuotient({2}, IntMatrix{{1, 1, 0, 1}}, 4),
	    FiniteAbelianQuotient({6}, IntMatrix{{1, 0, 2, 3}}, 4),
	};
	int done = 0;
	long long trials = 0;
	while (done < 200 && trials < 4000) {
		++trials;
		const auto& q = quotients[trials % quotients.size()];
		auto f = random_automorphism(rng, q.rank(), 4);
		auto g = random_automorphism(rng, q.rank(), 4);
		auto lf = lift_automorphism(f, q);
		auto lg = lift_automorphism(g, q);
		auto lfg = lift_automorphism(compose(f, g), q);
		if (!lf || !lg || !lfg)
			continue;
		if (chain_action(*lfg).entries !=
		    chain_action(*lf).entries * chain_action(*lg).entries) {
			o.fail("functoriality failed on a pair over |G|=" +
			       std::to_string(q.order()));
			return o;
		}
		++done;
	}
	if (done < 200)
		o.fail("only " + std::to_string(done) + " liftable pairs found");
	o.note(std::to_string(done) + " liftable pairs, |G| <= 8, ranks 2..4, exact");
	return o;
}

Outcome block_decomposition()
{
	Outcome o;
	std::mt19937 rng(2026);
	int exact_checked = 0, float_checked = 0;
	for (const auto& q : bundled_quotients()) {
		for (const auto& aut : bundled_automorphisms(q.rank())) {
			auto lifted = lift_automorphism(aut, q);
			if (!lifted)
				continue;
			auto chain = chain_action(*lifted);
			if (q.order() <= 6) {
				auto bd = block_decompose(chain, *lifted, true);
				if (!bd.exact_match) {
					o.fail("exact mismatch at |G|=" + std::to_string(q.order()));
					return o;
				}
				++exact_checked;
			}
			if (q.order() <= 12) {
				auto bd = block_decompose(chain, *lifted, false);
				if (bd.residual >= 1e-9) {
					o.fail("floating residual " + std::to_string(bd.residual));
					return o;
				}
				++float_checked;
			}
		}
	}
	if (exact_checked < 8 || float_checked < 12)
		o.fail("too few decompositions exercised");
	o.note(std::to_string(exact_checked) + " exact (|G|<=6), " +
	       std::to_string(float_checked) + " floating (|G|<=12, residual < 1e-9)");
	return o;
}

Outcome homology_oracle()
{
	Outcome o;
	int checked = 0;
	for (const auto& q : bundled_quotients()) {
		for (const auto& aut : bundled_automorphisms(q.rank())) {
			auto lifted = lift_automorphism(aut, q);
			if (!lifted)
				continue;
			auto h = homology_rep(chain_action(*lifted));
			if (h.matrix != homology_by_rewriting(*lifted)) {
				o.fail("oracle disagreement at |G|=" + std::to_string(q.order()));
				return o;
			}
			long long expect = q.order() * (q.rank() - 1) + 1;
			if (static_cast<long long>(h.matrix.rows()) != expect) {
				o.fail("rank formula violated");
				return o;
			}
			++checked;
		}
	}
	if (checked < 15)
		o.fail("too few covers exercised");
	o.note(std::to_string(checked) + " lifted automorphisms over bundled covers, exact");
	return o;
}

Outcome kronecker_suite()
{
	Outcome o;
	for (int k = 1; k <= 12; ++k) {
		auto rep = kronecker_test(companion_matrix(cyclotomic_int_poly(k)));
		if (!rep.all_roots_of_unity()) {
			o.fail("cyclotomic companion " + std::to_string(k) + " misclassified");
			return o;
		}
	}
	auto rep = kronecker_test(IntMatrix{{1, 1}, {1, 0}});
	if (rep.all_roots_of_unity()) {
		o.fail("fibonacci matrix misclassified");
		return o;
	}
	const double golden = 1.6180339887;
	double lo = to_double(rep.radius_low), hi = to_double(rep.radius_high);
	if (!(lo <= golden && golden <= hi))
		o.fail("bracket misses 1.6180339887");
	if (!(hi - lo < 1e-9))
		o.fail("bracket width " + std::to_string(hi - lo));
	o.note("12 cyclotomic companions; golden bracket [" + to_string(rep.radius_low) +
	       ", " + to_string(rep.radius_high) + "]");
	return o;
}

Outcome ratio_suite()
{
	Outcome o;
	if (ratio_degeneracy_test(IntMatrix{{1, 0}, {0, -1}}, 2) != std::set<int>{2})
		o.fail("diag(1,-1) M=2");
	if (!ratio_degeneracy_test(IntMatrix{{1, 0}, {0, 2}}, 10).empty())
		o.fail("diag(1,2) M=10");
	std::mt19937 rng(2027);
	IntMatrix m{{1, 1, 0}, {0, -1, 2}, {0, 0, 2}};
	auto base = ratio_degeneracy_test(m, 6);
	std::uniform_int_distribution<int> entry(-2, 2), idx(0, 2);
	for (int trial = 0; trial < 100; ++trial) {
		IntMatrix u = IntMatrix::identity(3);
		for (int s = 0; s < 5; ++s) {
			IntMatrix e = IntMatrix::identity(3);
			int i = idx(rng), j = idx(rng);
			if (i != j)
				e(i, j) = entry(rng);
			u = u * e;
		}
		if (ratio_degeneracy_test(u * m * unimodular_inverse(u), 6) != base) {
			o.fail("conjugation invariance failed at trial " + std::to_string(trial));
			return o;
		}
	}
	o.note("pinned diagonal cases plus 100 unimodular conjugates, exact");
	return o;
}

Outcome transfer_identities()
{
	Outcome o;
	int checked = 0;
	for (const auto& q : bundled_quotients()) {
		CoverGraph cover(q);
		IntMatrix t = transfer_matrix(cover);
		IntMatrix p = pushforward_matrix(cover);
		if (p * t != IntMatrix::identity(q.rank()) * Int(q.order())) {
			o.fail("pushforward o transfer != |G| id at |G|=" +
			       std::to_string(q.order()));
			return o;
		}
		for (const auto& aut : bundled_automorphisms(q.rank())) {
			auto lifted = lift_automorphism(aut, q);
			if (!lifted)
				continue;
			auto h = homology_rep(chain_action(*lifted));
			if (h.matrix * t != t * aut.abelianized()) {
				o.fail("transfer does not intertwine at |G|=" +
				       std::to_string(q.order()));
				return o;
			}
			++checked;
		}
	}
	o.note("all bundled covers; " + std::to_string(checked) + " intertwinings, exact");
	return o;
}

Outcome shadow_suite()
{
	Outcome o;
	for (const auto& bundle : bundled_graph_maps()) {
		auto tg = transition_graph(bundle.gm, bundle.lattice);
		auto shadow = equivariant_shadow(tg);
		for (int k = 1; k <= 10; ++k)
			for (const auto& pt : trace_support(tg, k))
				if (!shadow.contains(pt)) {
					o.fail(bundle.name + ": S_" + std::to_string(k) +
					       " escapes the shadow");
					return o;
				}
		// Brute-force trace check for k <= 6 on small transition graphs.
		if (tg.num_vertices <= 8) {
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
						    walk(start, edge.to, len + 1, sign * edge.sign,
						         std::move(t2));
					    }
				    };
				for (int v = 1; v <= tg.num_vertices; ++v)
					walk(v, v, 0, +1, std::vector<Int>(tg.lattice_rank, 0));
				if (a_trace_power(a, k) != brute) {
					o.fail(bundle.name + ": trace != cycle sum at k=" +
					       std::to_string(k));
					return o;
				}
			}
		}
		// Vertex subgraphs closed under cycles of length <= 8.
		for (const auto& v : shadow.vertices) {
			auto sub = vertex_subgraph(tg, shadow, v);
			bool ok = true;
			std::function<void(int, int, int, std::vector<Int>)> walk =
			    [&](int start, int at, int len, std::vector<Int> t) {
				    if (len > 0 && at == start) {
					    for (int i = 0; i < tg.lattice_rank; ++i)
						    if (Rat(t[i], len) != v[i])
							    ok = false;
				    }
				    if (len == 8 || !ok)
					    return;
				    for (const auto& e : sub.edges) {
					    if (e.from != at)
						    continue;
					    auto t2 = t;
					    for (int i = 0; i < tg.lattice_rank; ++i)
						    t2[i] += e.translation[i];
					    walk(start, e.to, len + 1, std::move(t2));
				    }
			    };
			for (int s = 1; s <= tg.num_vertices && ok; ++s)
				walk(s, s, 0, std::vector<Int>(tg.lattice_rank, 0));
			if (!ok) {
				o.fail(bundle.name + ": vertex subgraph has an off-vertex cycle");
				return o;
			}
		}
	}
	o.note(std::to_string(bundled_graph_maps().size()) +
	       " bundled maps: S_k containment (k<=10), brute-force traces (k<=6), "
	       "cycle-closure (length<=8)");
	return o;
}

Outcome pipeline_soundness()
{
	Outcome o;
	// Depth-0 witness for x -> xy, y -> x.
	FreeAutomorphism fib(2, {word_from_string("ab", 2), word_from_string("a", 2)},
	                     {{word_from_string("b", 2), word_from_string("Ba", 2)}});
	auto witness_run = search_off_circle(fib, {fib});
	if (!witness_run.witness_found || !witness_run.witness_path.empty()) {
		o.fail("no depth-0 witness for the fibonacci automorphism");
		return o;
	}
	if (witness_run.witness_report.char_poly != IntPoly({-1, -1, 1})) {
		o.fail("unexpected witness polynomial");
		return o;
	}
	auto recheck = recheck_witness(fib, witness_run.witness_path);
	if (recheck.verdict != witness_run.witness_report.verdict ||
	    recheck.char_poly != witness_run.witness_report.char_poly) {
		o.fail("witness is not re-checkable from the report data");
		return o;
	}

	// Unipotent example: explore >= 20 verified admissible covers.
	FreeAutomorphism twist(2, {word_from_string("ab", 2), word_from_string("b", 2)},
	                       {{word_from_string("aB", 2), word_from_string("b", 2)}});
	SearchConfig cfg;
	cfg.max_depth = 2;
	auto run1 = search_off_circle(twist, {twist}, cfg);
	if (run1.witness_found) {
		o.fail("unipotent example produced a spurious witness");
		return o;
	}
	long long admissible = 0;
	for (const auto& c : run1.explored) {
		if (!c.admissibility_verified) {
			o.fail("a reported cover failed admissibility verification");
			return o;
		}
		if (c.level >= 1 &&
		    c.homology_rank != c.quotient.order() * (c.quotient.rank() - 1) + 1) {
			o.fail("rank formula violated in the report");
			return o;
		}
		++admissible;
	}
	if (admissible < 20) {
		o.fail("only " + std::to_string(admissible) + " covers explored");
		return o;
	}
	auto run2 = search_off_circle(twist, {twist}, cfg);
	if (search_report_to_text(run1) != search_report_to_text(run2)) {
		o.fail("report is not deterministic");
		return o;
	}
	o.note("depth-0 witness re-checked; " + std::to_string(admissible) +
	       " admissible covers, byte-identical reports");
	return o;
}

} // namespace

int main()
{
	using Clock = std::chrono::steady_clock;
	struct Entry {
		const char* name;
		std::function<Outcome()> run;
		double limit_seconds; // 0 = covered by the total budget only
	};
	std::vector<Entry> criteria = {
	    {"fox-fundamental-identity", fox_fundamental_identity, 10.0},
	    {"chain-functoriality", chain_functoriality, 30.0},
	    {"block-decomposition", block_decomposition, 0.0},
	    {"homology-oracle", homology_oracle, 0.0},
	    {"kronecker-suite", kronecker_suite, 0.0},
	    {"ratio-test", ratio_suite, 0.0},
	    {"transfer-identities", transfer_identities, 0.0},
	    {"shadow-suite", shadow_suite, 0.0},
	    {"pipeline-soundness", pipeline_soundness, 0.0},
	};

	bool all_pass = true;
	auto total_start = Clock::now();
	for (auto& c : criteria) {
		auto start = Clock::now();
		Outcome o;
		try {
			o = c.run();
		} catch (const std::exception& e) {
			o.pass = false;
			o.detail = std::string("exception: ") + e.what();
		}
		double secs = std::chrono::duration<double>(Clock::now() - start).count();
		if (c.limit_seconds > 0 && secs >= c.limit_seconds)
			o.fail("runtime " + std::to_string(secs) + "s exceeds " +
			       std::to_string(c.limit_seconds) + "s");
		all_pass = all_pass && o.pass;
		std::printf("%s %s (%.2fs)%s%s\n", o.pass ? "PASS" : "FAIL", c.name, secs,
		            o.detail.empty() ? "" : ": ", o.detail.c_str());
	}
	double total = std::chrono::duration<double>(Clock::now() - total_start).count();
	bool total_ok = total < 300.0;
	all_pass = all_pass && total_ok;
	std::printf("%s total-runtime (%.2fs < 300s)\n", total_ok ? "PASS" : "FAIL", total);
	return all_pass ? 0 : 1;
}
