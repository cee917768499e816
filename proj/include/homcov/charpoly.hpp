#pragma once

#include "homcov/intpoly.hpp"
#include "homcov/matrix.hpp"

#include <stdexcept>
#include <vector>

namespace homcov {

/// Characteristic polynomial det(tI - A) by the Samuelson-Berkowitz
/// iteration: division-free, so it is exact over any commutative ring
/// (Int, Rat, Cyc). Coefficients returned lowest degree first, monic.
template <class T>
std::vector<T> berkowitz_char_poly(const Matrix<T>& a)
{
	if (!a.square())
		throw std::invalid_argument("characteristic polynomial of non-square matrix");
	const std::size_t n = a.rows();
	if (n == 0)
		return {T(1)};
	// c holds coefficients highest degree first during the iteration.
	std::vector<T> c = {T(1), T(0) - a(0, 0)};
	for (std::size_t r = 1; r < n; ++r) {
		// Principal (r+1)x(r+1) block: row R, column S, corner alpha.
		// Toeplitz first column: 1, -alpha, -(R S), -(R A_r S), ...
		std::vector<T> toep(r + 2, T(0));
		toep[0] = T(1);
		toep[1] = T(0) - a(r, r);
		std::vector<T> s(r);
		for (std::size_t i = 0; i < r; ++i)
			s[i] = a(i, r);
		for (std::size_t k = 2; k <= r + 1; ++k) {
			T dot = T(0);
			for (std::size_t i = 0; i < r; ++i)
				dot += a(r, i) * s[i];
			toep[k] = T(0) - dot;
			if (k <= r) {
				std::vector<T> ns(r, T(0));
				for (std::size_t i = 0; i < r; ++i) {
					if (s[i] == T(0))
						continue;
					for (std::size_t j = 0; j < r; ++j)
						ns[j] += a(j, i) * s[i];
				}
				s = std::move(ns);
			}
		}
		std::vector<T> next(r + 2, T(0));
		for (std::size_t i = 0; i < r + 2; ++i)
			for (std::size_t j = 0; j < c.size(); ++j)
				if (i >= j && i - j < toep.size())
					next[i] += toep[i - j] * c[j];
		c = std::move(next);
	}
	std::vector<T> low_first(c.rbegin(), c.rend());
	return low_first;
}

/// Monic integer characteristic polynomial of an integer matrix.
inline IntPoly char_poly(const IntMatrix& a)
{
	auto c = berkowitz_char_poly(a);
	return IntPoly(std::move(c));
}

/// Fraction-free Bareiss determinant of an integer matrix. Used as the
/// independent route for cross-checking Berkowitz in the tests.
inline Int bareiss_determinant(IntMatrix m)
{
	if (!m.square())
		throw std::invalid_argument("determinant of non-square matrix");
	const std::size_t n = m.rows();
	if (n == 0)
		return 1;
	Int sign = 1, prev = 1;
	for (std::size_t k = 0; k + 1 < n; ++k) {
		if (m(k, k) == 0) {
			std::size_t p = k + 1;
			while (p < n && m(p, k) == 0)
				++p;
			if (p == n)
				return 0;
			for (std::size_t j = 0; j < n; ++j)
				std::swap(m(k, j), m(p, j));
			sign = -sign;
		}
		for (std::size_t i = k + 1; i < n; ++i)
			for (std::size_t j = k + 1; j < n; ++j)
				m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
		prev = m(k, k);
	}
	return sign * m(n - 1, n - 1);
}

/// Companion matrix of a monic integer polynomial.
inline IntMatrix companion_matrix(const IntPoly& p)
{
	if (!p.monic() || p.degree() < 1)
		throw std::invalid_argument("companion matrix needs a monic polynomial of degree >= 1");
	const std::size_t n = static_cast<std::size_t>(p.degree());
	IntMatrix m(n, n);
	for (std::size_t i = 1; i < n; ++i)
		m(i, i - 1) = 1;
	for (std::size_t i = 0; i < n; ++i)
		m(i, n - 1) = -p.coeff(static_cast<int>(i));
	return m;
}

} // namespace homcov
