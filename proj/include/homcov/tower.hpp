#pragma once

#include "homcov/cover.hpp"
#include "homcov/rebase.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace homcov {

/// Word evaluation in a group of automorphisms (letters index the
/// generator list; negative letters use certified inverses).
inline FreeAutomorphism evaluate_automorphism_word(const Word& w,
                                                   const std::vector<FreeAutomorphism>& gens)
{
	if (gens.empty())
		throw std::invalid_argument("empty generator list");
	FreeAutomorphism acc = FreeAutomorphism::identity(gens.front().rank());
	for (int v : w.letters()) {
		int i = std::abs(v);
		if (i < 1 || i > static_cast<int>(gens.size()))
			throw std::invalid_argument("word letter outside generator list");
		acc = compose(acc, v > 0 ? gens[i - 1] : gens[i - 1].inverse());
	}
	return acc;
}

/// Schreier generators of the kernel of the formal free group on the
/// generator symbols mapping onto (Z/q)^m, materialized as concrete
/// automorphisms. This realizes a subgroup of the q-congruence subgroup
/// of the generated group, so covers admissible for it are conservative.
/// The count q^m (m-1) + 1 grows quickly; `cap` truncates the list in
/// the canonical cycle-basis order.
inline std::vector<FreeAutomorphism>
schreier_enlarge(const std::vector<FreeAutomorphism>& gens, long long q, std::size_t cap = 64)
{
	const int m = static_cast<int>(gens.size());
	for (const auto& g : gens)
		if (!g.certified())
			throw std::invalid_argument(
			    "schreier enlargement needs certified inverses for every generator");
	FiniteAbelianQuotient formal(std::vector<long long>(m, q), IntMatrix::identity(m), m);
	CoverGraph cover(formal);
	std::vector<FreeAutomorphism> out;
	for (long long e : cover.nontree_edges()) {
		if (out.size() >= cap)
			break;
		out.push_back(evaluate_automorphism_word(cover.schreier_word(e), gens));
	}
	return out;
}

enum class TowerFailure { NoAdmissibleCover, NotLiftable };

inline std::string tower_failure_name(TowerFailure f)
{
	return f == TowerFailure::NoAdmissibleCover ? "NoAdmissibleCover" : "NotLiftable";
}

/// One level of a (p,q)-tower: the cover that produced this level's
/// rose (trivial at level 0) and the generating set rewritten to it.
struct TowerLevel {
	CoverGraph cover;
	std::vector<FreeAutomorphism> gens;
	bool deck_action_verified_trivial = true;
};

struct PqTower {
	std::vector<TowerLevel> levels;
	std::optional<TowerFailure> failure;
	int failed_level = -1;
};

/// Iterated (p, q)-covers: at each level the generating set is enlarged
/// to Schreier generators of the index-q^m congruence kernel, the first
/// admissible quotient mod p of its coinvariant lattice is taken, and
/// the lifted generators are rewritten to the new rose.
inline PqTower pq_tower(const std::vector<FreeAutomorphism>& gamma0,
                        const std::vector<std::pair<long long, long long>>& prime_pairs,
                        int depth, std::size_t gens_cap = 64)
{
	if (depth > static_cast<int>(prime_pairs.size()))
		throw std::invalid_argument("depth exceeds the supplied prime pairs");
	if (gamma0.empty())
		throw std::invalid_argument("empty generating set");
	PqTower tower;
	int rank = gamma0.front().rank();
	tower.levels.push_back(
	    TowerLevel{CoverGraph(FiniteAbelianQuotient::trivial(rank)), gamma0, true});
	for (int level = 0; level < depth; ++level) {
		auto [p, q] = prime_pairs[level];
		const auto& current = tower.levels.back().gens;
		std::vector<FreeAutomorphism> enlarged = schreier_enlarge(current, q, gens_cap);
		CoinvariantLattice lat = coinvariant_lattice(enlarged);
		auto quots = admissible_quotients(lat, p, 1);
		if (quots.empty()) {
			tower.failure = TowerFailure::NoAdmissibleCover;
			tower.failed_level = level + 1;
			return tower;
		}
		std::vector<LiftedAutomorphism> lifted;
		bool deck_trivial = true;
		for (const auto& g : enlarged) {
			auto l = lift_automorphism(g, quots[0]);
			if (!l) {
				tower.failure = TowerFailure::NotLiftable;
				tower.failed_level = level + 1;
				return tower;
			}
			deck_trivial = deck_trivial && l->deck_action_trivial();
			lifted.push_back(std::move(*l));
		}
		std::vector<FreeAutomorphism> rebased;
		for (const auto& l : lifted)
			rebased.push_back(rebase_automorphism(l));
		tower.levels.push_back(
		    TowerLevel{lifted.front().cover, std::move(rebased), deck_trivial});
	}
	return tower;
}

} // namespace homcov
