#pragma once

#include "homcov/matrix.hpp"

#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace homcov {

/// Smith normal form D = U * A * V with U, V unimodular and D diagonal,
/// d_1 | d_2 | ... | d_r, all nonnegative.
struct SmithForm {
	IntMatrix d, u, v;
	std::size_t rank = 0; // number of nonzero diagonal entries

	std::vector<Int> diagonal() const
	{
		std::vector<Int> out;
		for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i)
			out.push_back(d(i, i));
		return out;
	}
};

inline SmithForm smith_normal_form(IntMatrix a)
{
	const std::size_t m = a.rows(), n = a.cols();
	IntMatrix u = IntMatrix::identity(m);
	IntMatrix v = IntMatrix::identity(n);

	auto swap_rows = [&](std::size_t r1, std::size_t r2) {
		for (std::size_t j = 0; j < n; ++j)
			std::swap(a(r1, j), a(r2, j));
		for (std::size_t j = 0; j < m; ++j)
			std::swap(u(r1, j), u(r2, j));
	};
	auto swap_cols = [&](std::size_t c1, std::size_t c2) {
		for (std::size_t i = 0; i < m; ++i)
			std::swap(a(i, c1), a(i, c2));
		for (std::size_t i = 0; i < n; ++i)
			std::swap(v(i, c1), v(i, c2));
	};
	auto add_row = [&](std::size_t dst, std::size_t src, const Int& k) {
		for (std::size_t j = 0; j < n; ++j)
			a(dst, j) += k * a(src, j);
		for (std::size_t j = 0; j < m; ++j)
			u(dst, j) += k * u(src, j);
	};
	auto add_col = [&](std::size_t dst, std::size_t src, const Int& k) {
		for (std::size_t i = 0; i < m; ++i)
			a(i, dst) += k * a(i, src);
		for (std::size_t i = 0; i < n; ++i)
			v(i, dst) += k * v(i, src);
	};
	auto negate_row = [&](std::size_t r) {
		for (std::size_t j = 0; j < n; ++j)
			a(r, j) = -a(r, j);
		for (std::size_t j = 0; j < m; ++j)
			u(r, j) = -u(r, j);
	};

	// Re-select the smallest nonzero entry of the block as the pivot
	// after every remainder step; quotients are then always taken
	// against the current minimum, which keeps entry growth tame.
	std::size_t t = 0;
	while (t < m && t < n) {
		std::size_t pi = t, pj = t;
		bool found = false;
		Int best = 0;
		for (std::size_t i = t; i < m; ++i)
			for (std::size_t j = t; j < n; ++j)
				if (a(i, j) != 0) {
					Int mag = abs(a(i, j));
					if (!found || mag < best) {
						best = mag;
						pi = i;
						pj = j;
						found = true;
					}
				}
		if (!found)
			break;
		swap_rows(t, pi);
		swap_cols(t, pj);
		bool reduced = false;
		for (std::size_t i = t + 1; i < m; ++i) {
			if (a(i, t) == 0)
				continue;
			Int q = a(i, t) / a(t, t);
			add_row(i, t, -q);
			if (a(i, t) != 0)
				reduced = true; // remainder strictly smaller than the pivot
		}
		if (reduced)
			continue; // re-select at the same position
		for (std::size_t j = t + 1; j < n; ++j) {
			if (a(t, j) == 0)
				continue;
			Int q = a(t, j) / a(t, t);
			add_col(j, t, -q);
			if (a(t, j) != 0)
				reduced = true;
		}
		if (reduced)
			continue;
		if (a(t, t) < 0)
			negate_row(t);
		++t;
	}

	// Enforce the divisibility chain d_i | d_{i+1} with 2x2 repairs.
	bool changed = true;
	while (changed) {
		changed = false;
		for (std::size_t i = 0; i + 1 < t; ++i) {
			if (a(i + 1, i + 1) % a(i, i) == 0)
				continue;
			changed = true;
			add_col(i, i + 1, 1); // block becomes [[d_i, 0], [d_{i+1}, d_{i+1}]]
			while (a(i + 1, i) != 0) {
				Int q = a(i, i) / a(i + 1, i);
				add_row(i, i + 1, -q);
				swap_rows(i, i + 1);
			}
			// Block is [[g, s], [0, *]] with g | s; clear s.
			Int q = a(i, i + 1) / a(i, i);
			add_col(i + 1, i, -q);
			if (a(i, i) < 0)
				negate_row(i);
			if (a(i + 1, i + 1) < 0)
				negate_row(i + 1);
		}
	}

	SmithForm out;
	out.d = a;
	out.u = u;
	out.v = v;
	out.rank = t;
	return out;
}

} // namespace homcov
