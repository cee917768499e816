#pragma once

#include "homcov/homrep.hpp"
#include "homcov/rebase.hpp"
#include "homcov/serialize.hpp"
#include "homcov/solvability.hpp"
#include "homcov/tower.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace homcov {

struct SearchConfig {
	std::vector<long long> primes = {2, 3, 5};
	int max_depth = 3;
	std::size_t max_covers_per_level = 64;
	long long modulus_cap = 7;
	SolvabilityBudget solvability;

	void validate() const
	{
		if (max_depth < 0 || max_covers_per_level == 0 || modulus_cap < 2)
			throw std::invalid_argument("search budgets must be positive");
		for (std::size_t i = 0; i < primes.size(); ++i)
			for (std::size_t j = i + 1; j < primes.size(); ++j)
				if (primes[i] == primes[j])
					throw std::invalid_argument("primes must be distinct");
	}
};

/// One explored cover in the breadth-first tower search.
struct ExploredCover {
	int level = 0;
	std::string path; // "p:quotient / p:quotient / ..."
	FiniteAbelianQuotient quotient;
	long long homology_rank = 0;
	bool admissibility_verified = false; // generators lift, deck action trivial
	SpectralVerdict verdict = SpectralVerdict::AllRootsOfUnity;
};

struct SearchReport {
	SearchConfig config;
	std::vector<ExploredCover> explored;
	bool witness_found = false;
	std::vector<FiniteAbelianQuotient> witness_path; // quotient per level
	SpectralReport witness_report;
	long long skipped_not_liftable = 0;
	long long branches_without_admissible_cover = 0;
	long long covers_explored = 0;
};

namespace detail {

struct SearchBranch {
	std::vector<FreeAutomorphism> gens;
	FreeAutomorphism target;
	std::vector<FiniteAbelianQuotient> path;
	std::string path_key;
	int level = 0;
};

inline std::string quotient_key(long long p, const FiniteAbelianQuotient& q)
{
	std::ostringstream os;
	os << p << ":[";
	for (std::size_t i = 0; i < q.num_factors(); ++i) {
		if (i)
			os << ";";
		for (int j = 0; j < q.rank(); ++j)
			os << (j ? " " : "") << q.projection()(i, j);
	}
	os << "]";
	return os.str();
}

} // namespace detail

/// Depth-0 check plus breadth-first search over admissible covers for an
/// exact eigenvalue of the target's homology representation off the unit
/// circle. Each level re-bases the cover as a new rose and relifts the
/// generating set; every reported cover has its admissibility verified
/// (all generators lift with trivial deck action). Deterministic:
/// primes ascending, quotients in canonical order, branches in queue
/// order; the first witness in that order is returned.
inline SearchReport search_off_circle(const FreeAutomorphism& target,
                                      const std::vector<FreeAutomorphism>& gamma0,
                                      const SearchConfig& config = {})
{
	config.validate();
	for (const auto& g : gamma0)
		if (g.rank() != target.rank())
			throw std::invalid_argument("generator rank differs from the target rank");

	SearchReport report;
	report.config = config;
	std::vector<long long> primes = config.primes;
	std::sort(primes.begin(), primes.end());

	// Depth 0: the rose itself.
	{
		SpectralReport rep = kronecker_test(target.abelianized());
		report.explored.push_back(ExploredCover{0, "(rose)",
		                                        FiniteAbelianQuotient::trivial(target.rank()),
		                                        target.rank(), true, rep.verdict});
		++report.covers_explored;
		if (!rep.all_roots_of_unity()) {
			report.witness_found = true;
			report.witness_report = std::move(rep);
			return report;
		}
	}

	std::deque<detail::SearchBranch> queue;
	queue.push_back(detail::SearchBranch{gamma0, target, {}, "", 0});

	while (!queue.empty()) {
		detail::SearchBranch branch = std::move(queue.front());
		queue.pop_front();
		if (branch.level >= config.max_depth)
			continue;
		if (branch.gens.empty()) {
			++report.branches_without_admissible_cover;
			continue;
		}
		CoinvariantLattice lattice = coinvariant_lattice(branch.gens);
		if (lattice.trivial()) {
			++report.branches_without_admissible_cover;
			continue;
		}
		std::size_t budget = config.max_covers_per_level;
		for (long long p : primes) {
			// modulus_cap bounds the deck-group order of any cover,
			// which keeps |G|(n-1)+1 at desk scale.
			if (p > config.modulus_cap || budget == 0)
				continue;
			auto quotients = admissible_quotients(lattice, p, budget);
			for (const auto& q : quotients) {
				if (budget == 0)
					break;
				if (q.order() > config.modulus_cap)
					break; // orders ascend with the factor count
				--budget;
				// Lift the whole generating set and the target.
				std::vector<LiftedAutomorphism> lifted;
				bool ok = true, deck_trivial = true;
				for (const auto& g : branch.gens) {
					auto l = lift_automorphism(g, q);
					if (!l) {
						ok = false;
						break;
					}
					deck_trivial = deck_trivial && l->deck_action_trivial();
					lifted.push_back(std::move(*l));
				}
				auto ltarget = ok ? lift_automorphism(branch.target, q) : std::nullopt;
				if (!ok || !ltarget) {
					++report.skipped_not_liftable;
					continue;
				}
				std::string key = branch.path_key.empty()
				                      ? detail::quotient_key(p, q)
				                      : branch.path_key + " / " +
				                            detail::quotient_key(p, q);
				SpectralReport rep =
				    kronecker_test(homology_rep(chain_action(*ltarget)).matrix);
				++report.covers_explored;
				report.explored.push_back(
				    ExploredCover{branch.level + 1, key, q,
				                  ltarget->cover.homology_rank(),
				                  deck_trivial, rep.verdict});
				auto path = branch.path;
				path.push_back(q);
				if (!rep.all_roots_of_unity()) {
					report.witness_found = true;
					report.witness_path = std::move(path);
					report.witness_report = std::move(rep);
					return report;
				}
				if (branch.level + 1 < config.max_depth) {
					std::vector<FreeAutomorphism> rebased;
					for (const auto& l : lifted)
						rebased.push_back(rebase_automorphism(l));
					queue.push_back(detail::SearchBranch{
					    std::move(rebased), rebase_automorphism(*ltarget),
					    std::move(path), key, branch.level + 1});
				}
			}
		}
	}
	return report;
}

/// Recomputes a witness verdict from the serialized path alone: lift and
/// re-base the target down the path, then re-run the exact test.
inline SpectralReport recheck_witness(const FreeAutomorphism& target,
                                      const std::vector<FiniteAbelianQuotient>& path)
{
	FreeAutomorphism current = target;
	for (std::size_t i = 0; i < path.size(); ++i) {
		auto lifted = lift_automorphism(current, path[i]);
		if (!lifted)
			throw std::invalid_argument("target does not lift along the recorded path");
		if (i + 1 == path.size())
			return kronecker_test(homology_rep(chain_action(*lifted)).matrix);
		current = rebase_automorphism(*lifted);
	}
	return kronecker_test(current.abelianized());
}

/// Forwarded solvability probe on the homology representations of the
/// generating set at the end of a cover path.
inline SolvabilityVerdict certify_image(const std::vector<FreeAutomorphism>& gamma0,
                                        const std::vector<FiniteAbelianQuotient>& path,
                                        const SolvabilityBudget& budget = {})
{
	std::vector<FreeAutomorphism> gens = gamma0;
	for (std::size_t i = 0; i < path.size(); ++i) {
		std::vector<FreeAutomorphism> next;
		for (const auto& g : gens) {
			auto lifted = lift_automorphism(g, path[i]);
			if (!lifted)
				throw std::invalid_argument(
				    "a generator does not lift along the recorded path");
			next.push_back(rebase_automorphism(*lifted));
		}
		gens = std::move(next);
	}
	std::vector<IntMatrix> reps;
	for (const auto& g : gens)
		reps.push_back(g.abelianized());
	return solvability_probe(reps, budget);
}

inline std::string search_report_to_text(const SearchReport& r)
{
	std::ostringstream os;
	os << "search-report\n";
	os << "config primes";
	for (long long p : r.config.primes)
		os << " " << p;
	os << " max-depth " << r.config.max_depth << " per-level "
	   << r.config.max_covers_per_level << " modulus-cap " << r.config.modulus_cap << "\n";
	os << "covers-explored " << r.covers_explored << "\n";
	os << "skipped-not-liftable " << r.skipped_not_liftable << "\n";
	os << "branches-without-admissible-cover " << r.branches_without_admissible_cover
	   << "\n";
	for (const auto& c : r.explored) {
		os << "cover level " << c.level << " path " << c.path << " rank "
		   << c.homology_rank << " admissible "
		   << (c.admissibility_verified ? "yes" : "no") << " verdict "
		   << (c.verdict == SpectralVerdict::AllRootsOfUnity ? "AllRootsOfUnity"
		                                                     : "OffUnitCircle")
		   << "\n";
	}
	if (r.witness_found) {
		os << "verdict WitnessFound\n";
		os << "witness-path-length " << r.witness_path.size() << "\n";
		for (const auto& q : r.witness_path)
			os << quotient_to_text(q);
		os << spectral_report_to_text(r.witness_report);
	} else {
		os << "verdict Exhausted\n";
	}
	return os.str();
}

} // namespace homcov
