#pragma once

#include "homcov/cover.hpp"
#include "homcov/shadow.hpp"
#include "homcov/spectra.hpp"
#include "homcov/transition.hpp"

#include <sstream>
#include <string>

namespace homcov {

inline std::string quotient_to_text(const FiniteAbelianQuotient& q)
{
	std::ostringstream os;
	os << "quotient " << q.rank() << " " << q.num_factors() << "\n";
	if (q.num_factors() > 0) {
		for (std::size_t i = 0; i < q.num_factors(); ++i)
			os << (i ? " " : "") << q.factors()[i];
		os << "\n";
		for (std::size_t i = 0; i < q.num_factors(); ++i) {
			for (int j = 0; j < q.rank(); ++j)
				os << (j ? " " : "") << q.projection()(i, j);
			os << "\n";
		}
	}
	return os.str();
}

inline FiniteAbelianQuotient quotient_from_text(std::istream& is)
{
	std::string tag;
	int rank = 0;
	std::size_t r = 0;
	if (!(is >> tag >> rank >> r) || tag != "quotient")
		throw std::invalid_argument("expected 'quotient <rank> <factors>' header");
	std::vector<long long> factors(r);
	for (auto& m : factors)
		if (!(is >> m))
			throw std::invalid_argument("truncated quotient factors");
	IntMatrix proj(r, rank);
	for (std::size_t i = 0; i < r; ++i)
		for (int j = 0; j < rank; ++j) {
			std::string v;
			if (!(is >> v))
				throw std::invalid_argument("truncated quotient projection");
			proj(i, j) = Int(v);
		}
	return FiniteAbelianQuotient(std::move(factors), std::move(proj), rank);
}

/// Cover description: invariant factors, projection, counts, and the
/// cycle-basis dimension.
inline std::string cover_to_text(const CoverGraph& c)
{
	std::ostringstream os;
	os << "cover\n";
	os << quotient_to_text(c.quotient());
	os << "vertices " << c.num_vertices() << "\n";
	os << "edges " << c.num_edges() << "\n";
	os << "cycle-basis " << c.homology_rank() << "\n";
	return os.str();
}

/// Cover graph in DOT format; edges labeled by their base generator.
inline std::string cover_to_dot(const CoverGraph& c)
{
	std::ostringstream os;
	os << "digraph cover {\n";
	for (long long v = 0; v < c.num_vertices(); ++v) {
		os << "  v" << v << " [label=\"";
		const auto& g = c.vertices()[v];
		for (std::size_t i = 0; i < g.size(); ++i)
			os << (i ? "," : "") << g[i];
		if (g.empty())
			os << "*";
		os << "\"];\n";
	}
	for (long long e = 0; e < c.num_edges(); ++e) {
		os << "  v" << c.edge_source(e) << " -> v" << c.edge_target(e) << " [label=\""
		   << word_to_string(Word::generator(c.edge_generator(e)), c.base_rank());
		if (c.edge_in_tree(e))
			os << " (tree)";
		os << "\"];\n";
	}
	os << "}\n";
	return os.str();
}

/// Transition graph in DOT format with sign and translation attributes.
inline std::string transition_to_dot(const TransitionGraph& tg)
{
	std::ostringstream os;
	os << "digraph transition {\n";
	for (int v = 1; v <= tg.num_vertices; ++v)
		os << "  e" << v << ";\n";
	for (const auto& e : tg.edges) {
		os << "  e" << e.from << " -> e" << e.to << " [label=\""
		   << (e.sign > 0 ? "+" : "-") << " t=(";
		for (std::size_t i = 0; i < e.translation.size(); ++i)
			os << (i ? "," : "") << e.translation[i];
		os << ")\"];\n";
	}
	os << "}\n";
	return os.str();
}

inline std::string polytope_to_text(const ShadowPolytope& s)
{
	std::ostringstream os;
	os << "shadow rank " << s.rank << " vertices " << s.vertices.size()
	   << (s.enumeration_complete ? "" : " (cycle enumeration capped)") << "\n";
	for (std::size_t i = 0; i < s.vertices.size(); ++i) {
		os << "vertex";
		for (const auto& x : s.vertices[i])
			os << " " << to_string(x);
		os << " witness-cycle-length " << s.witness_cycles[i].size() << "\n";
	}
	return os.str();
}

} // namespace homcov
