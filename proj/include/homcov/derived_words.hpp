#pragma once

#include "homcov/word.hpp"

#include <algorithm>
#include <cstddef>
#include <vector>

namespace homcov {

inline Word commutator(const Word& u, const Word& v)
{
	return u * v * u.inverse() * v.inverse();
}

/// Formal words over `symbols` abstract generators lying in the depth-th
/// derived subgroup of the free group on those symbols, each of reduced
/// length <= budget. Depth 0 returns the generators. A budget too small
/// to express any depth-k commutator yields an empty list. Deterministic:
/// level k+1 consists of commutators of pairs from level k enlarged by
/// generator conjugates, in enumeration order, capped at `max_words`.
inline std::vector<Word> derived_series_words(int symbols, int depth, std::size_t budget,
                                              std::size_t max_words = 16)
{
	if (symbols < 1)
		throw std::invalid_argument("need at least one symbol");
	if (depth < 0)
		throw std::invalid_argument("depth must be nonnegative");
	std::vector<Word> level;
	for (int i = 1; i <= symbols; ++i)
		level.push_back(Word::generator(i));
	if (depth == 0) {
		if (budget < 1)
			return {};
		return level;
	}
	for (int k = 0; k < depth; ++k) {
		// Enlarge by generator conjugates so that even a single commutator
		// yields independent partners at the next level.
		std::vector<Word> pool = level;
		for (const Word& u : level)
			for (int i = 1; i <= symbols; ++i) {
				Word g = Word::generator(i);
				Word c = g * u * g.inverse();
				if (c != u && std::find(pool.begin(), pool.end(), c) == pool.end())
					pool.push_back(c);
			}
		std::vector<Word> next;
		for (std::size_t a = 0; a < pool.size() && next.size() < max_words; ++a)
			for (std::size_t b = 0; b < pool.size() && next.size() < max_words; ++b) {
				if (a == b)
					continue;
				Word c = commutator(pool[a], pool[b]);
				if (c.empty() || c.length() > budget)
					continue;
				if (std::find(next.begin(), next.end(), c) == next.end())
					next.push_back(c);
			}
		level = std::move(next);
		if (level.empty())
			return {};
	}
	return level;
}

} // namespace homcov
