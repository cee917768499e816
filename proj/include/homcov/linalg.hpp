#pragma once

#include "homcov/matrix.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace homcov {

/// Exact Gaussian elimination utilities over a field type (Rat, Cyc).

template <class T>
std::optional<Matrix<T>> field_inverse(const Matrix<T>& a)
{
	if (!a.square())
		throw std::invalid_argument("inverse of non-square matrix");
	const std::size_t n = a.rows();
	Matrix<T> w = a, inv = Matrix<T>::identity(n);
	for (std::size_t c = 0; c < n; ++c) {
		std::size_t p = c;
		while (p < n && w(p, c) == T(0))
			++p;
		if (p == n)
			return std::nullopt;
		if (p != c)
			for (std::size_t j = 0; j < n; ++j) {
				std::swap(w(p, j), w(c, j));
				std::swap(inv(p, j), inv(c, j));
			}
		T piv = w(c, c);
		for (std::size_t j = 0; j < n; ++j) {
			w(c, j) = w(c, j) / piv;
			inv(c, j) = inv(c, j) / piv;
		}
		for (std::size_t r = 0; r < n; ++r) {
			if (r == c || w(r, c) == T(0))
				continue;
			T f = w(r, c);
			for (std::size_t j = 0; j < n; ++j) {
				w(r, j) = w(r, j) - f * w(c, j);
				inv(r, j) = inv(r, j) - f * inv(c, j);
			}
		}
	}
	return inv;
}

/// Solves a * x = b exactly; nullopt when inconsistent. Free variables
/// are set to zero, so the result is deterministic.
template <class T>
std::optional<std::vector<T>> field_solve(Matrix<T> a, std::vector<T> b)
{
	const std::size_t m = a.rows(), n = a.cols();
	if (b.size() != m)
		throw std::invalid_argument("solve shape mismatch");
	std::vector<std::size_t> pivot_col;
	std::size_t row = 0;
	for (std::size_t c = 0; c < n && row < m; ++c) {
		std::size_t p = row;
		while (p < m && a(p, c) == T(0))
			++p;
		if (p == m)
			continue;
		if (p != row) {
			for (std::size_t j = 0; j < n; ++j)
				std::swap(a(p, j), a(row, j));
			std::swap(b[p], b[row]);
		}
		T piv = a(row, c);
		for (std::size_t j = 0; j < n; ++j)
			a(row, j) = a(row, j) / piv;
		b[row] = b[row] / piv;
		for (std::size_t r = 0; r < m; ++r) {
			if (r == row || a(r, c) == T(0))
				continue;
			T f = a(r, c);
			for (std::size_t j = 0; j < n; ++j)
				a(r, j) = a(r, j) - f * a(row, j);
			b[r] = b[r] - f * b[row];
		}
		pivot_col.push_back(c);
		++row;
	}
	for (std::size_t r = row; r < m; ++r)
		if (!(b[r] == T(0)))
			return std::nullopt;
	std::vector<T> x(n, T(0));
	for (std::size_t r = 0; r < row; ++r)
		x[pivot_col[r]] = b[r];
	return x;
}

/// Basis of the kernel of a (columns are the basis vectors).
template <class T>
std::vector<std::vector<T>> field_kernel(Matrix<T> a)
{
	const std::size_t m = a.rows(), n = a.cols();
	std::vector<long long> pivot_of_col(n, -1);
	std::size_t row = 0;
	for (std::size_t c = 0; c < n && row < m; ++c) {
		std::size_t p = row;
		while (p < m && a(p, c) == T(0))
			++p;
		if (p == m)
			continue;
		if (p != row)
			for (std::size_t j = 0; j < n; ++j)
				std::swap(a(p, j), a(row, j));
		T piv = a(row, c);
		for (std::size_t j = 0; j < n; ++j)
			a(row, j) = a(row, j) / piv;
		for (std::size_t r = 0; r < m; ++r) {
			if (r == row || a(r, c) == T(0))
				continue;
			T f = a(r, c);
			for (std::size_t j = 0; j < n; ++j)
				a(r, j) = a(r, j) - f * a(row, j);
		}
		pivot_of_col[c] = static_cast<long long>(row);
		++row;
	}
	std::vector<std::vector<T>> basis;
	for (std::size_t c = 0; c < n; ++c) {
		if (pivot_of_col[c] >= 0)
			continue;
		std::vector<T> v(n, T(0));
		v[c] = T(1);
		for (std::size_t j = 0; j < n; ++j)
			if (pivot_of_col[j] >= 0)
				v[j] = T(0) - a(static_cast<std::size_t>(pivot_of_col[j]), c);
		basis.push_back(v);
	}
	return basis;
}

/// Exact inverse of a unimodular integer matrix (throws otherwise).
inline IntMatrix unimodular_inverse(const IntMatrix& a)
{
	Matrix<Rat> q(a.rows(), a.cols());
	for (std::size_t i = 0; i < a.rows(); ++i)
		for (std::size_t j = 0; j < a.cols(); ++j)
			q(i, j) = Rat(a(i, j));
	auto inv = field_inverse(q);
	if (!inv)
		throw std::invalid_argument("matrix is singular");
	IntMatrix out(a.rows(), a.cols());
	for (std::size_t i = 0; i < a.rows(); ++i)
		for (std::size_t j = 0; j < a.cols(); ++j) {
			const Rat& v = (*inv)(i, j);
			if (denominator(v) != 1)
				throw std::invalid_argument("matrix is not unimodular");
			out(i, j) = numerator(v);
		}
	return out;
}

} // namespace homcov
