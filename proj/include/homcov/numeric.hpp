#pragma once

#include "homcov/matrix.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace homcov {

using Cx = std::complex<double>;
using ComplexMatrixD = Matrix<Cx>;

namespace detail {

inline void givens(Cx f, Cx g, double& c, Cx& s)
{
	if (std::abs(g) == 0.0) {
		c = 1.0;
		s = 0.0;
		return;
	}
	if (std::abs(f) == 0.0) {
		c = 0.0;
		s = std::conj(g) / std::abs(g);
		return;
	}
	double d = std::sqrt(std::norm(f) + std::norm(g));
	c = std::abs(f) / d;
	s = (f / std::abs(f)) * std::conj(g) / d;
}

} // namespace detail

/// Eigenvalues of a complex matrix: Householder reduction to Hessenberg
/// form followed by explicitly shifted QR with Wilkinson shifts and
/// deflation. Advisory-precision only; exact verdicts never rely on it.
inline std::vector<Cx> complex_eigenvalues(Matrix<Cx> a, int max_sweeps = 2000)
{
	if (!a.square())
		throw std::invalid_argument("eigenvalues of non-square matrix");
	const std::size_t n = a.rows();
	if (n == 0)
		return {};
	// Hessenberg reduction.
	for (std::size_t k = 0; k + 2 < n; ++k) {
		double scale = 0.0;
		for (std::size_t i = k + 1; i < n; ++i)
			scale += std::norm(a(i, k));
		scale = std::sqrt(scale);
		if (scale < 1e-300)
			continue;
		Cx x0 = a(k + 1, k);
		Cx alpha = (std::abs(x0) > 0 ? -(x0 / std::abs(x0)) : Cx(-1.0)) * scale;
		std::vector<Cx> v(n, 0.0);
		for (std::size_t i = k + 1; i < n; ++i)
			v[i] = a(i, k);
		v[k + 1] -= alpha;
		double vnorm = 0.0;
		for (std::size_t i = k + 1; i < n; ++i)
			vnorm += std::norm(v[i]);
		if (vnorm < 1e-300)
			continue;
		vnorm = std::sqrt(vnorm);
		for (std::size_t i = k + 1; i < n; ++i)
			v[i] /= vnorm;
		// a <- (I - 2 v v^H) a
		for (std::size_t j = 0; j < n; ++j) {
			Cx dot = 0.0;
			for (std::size_t i = k + 1; i < n; ++i)
				dot += std::conj(v[i]) * a(i, j);
			for (std::size_t i = k + 1; i < n; ++i)
				a(i, j) -= 2.0 * v[i] * dot;
		}
		// a <- a (I - 2 v v^H)
		for (std::size_t i = 0; i < n; ++i) {
			Cx dot = 0.0;
			for (std::size_t j = k + 1; j < n; ++j)
				dot += a(i, j) * v[j];
			for (std::size_t j = k + 1; j < n; ++j)
				a(i, j) -= 2.0 * dot * std::conj(v[j]);
		}
	}

	std::vector<Cx> eig;
	eig.reserve(n);
	long long hi = static_cast<long long>(n) - 1;
	int sweeps = 0;
	const double eps = 1e-14;
	while (hi >= 0) {
		if (hi == 0) {
			eig.push_back(a(0, 0));
			--hi;
			continue;
		}
		// Deflate tiny subdiagonals.
		for (long long i = 0; i < hi; ++i)
			if (std::abs(a(i + 1, i)) <=
			    eps * (std::abs(a(i, i)) + std::abs(a(i + 1, i + 1))))
				a(i + 1, i) = 0.0;
		if (a(hi, hi - 1) == 0.0) {
			eig.push_back(a(hi, hi));
			--hi;
			continue;
		}
		long long lo = hi;
		while (lo > 0 && a(lo, lo - 1) != 0.0)
			--lo;
		if (++sweeps > max_sweeps)
			throw std::runtime_error("QR iteration failed to converge");
		// Wilkinson shift from the trailing 2x2 block.
		Cx h00 = a(hi - 1, hi - 1), h01 = a(hi - 1, hi);
		Cx h10 = a(hi, hi - 1), h11 = a(hi, hi);
		Cx tr = h00 + h11;
		Cx disc = std::sqrt(tr * tr - 4.0 * (h00 * h11 - h01 * h10));
		Cx l1 = (tr + disc) / 2.0, l2 = (tr - disc) / 2.0;
		Cx mu = std::abs(l1 - h11) < std::abs(l2 - h11) ? l1 : l2;
		if (sweeps % 17 == 0)
			mu += Cx(0.3 * std::abs(a(hi, hi - 1)), 0.1);
		// Explicit shifted QR step on the active block.
		for (long long i = lo; i <= hi; ++i)
			a(i, i) -= mu;
		std::vector<double> cs(hi - lo);
		std::vector<Cx> sn(hi - lo);
		for (long long i = lo; i < hi; ++i) {
			double c;
			Cx s;
			detail::givens(a(i, i), a(i + 1, i), c, s);
			cs[i - lo] = c;
			sn[i - lo] = s;
			for (long long j = i; j < static_cast<long long>(n); ++j) {
				Cx t1 = a(i, j), t2 = a(i + 1, j);
				a(i, j) = c * t1 + s * t2;
				a(i + 1, j) = -std::conj(s) * t1 + c * t2;
			}
		}
		for (long long i = lo; i < hi; ++i) {
			double c = cs[i - lo];
			Cx s = sn[i - lo];
			long long top = 0;
			for (long long r = top; r <= std::min(i + 2, hi); ++r) {
				Cx t1 = a(r, i), t2 = a(r, i + 1);
				a(r, i) = c * t1 + std::conj(s) * t2;
				a(r, i + 1) = -s * t1 + c * t2;
			}
		}
		for (long long i = lo; i <= hi; ++i)
			a(i, i) += mu;
	}
	return eig;
}

/// Kernel basis of a complex matrix with entries below `tol` treated as
/// zero, via column-pivoted Gaussian elimination.
inline std::vector<std::vector<Cx>> complex_kernel(Matrix<Cx> a, double tol)
{
	const std::size_t m = a.rows(), n = a.cols();
	std::vector<long long> pivot_of_col(n, -1);
	std::size_t row = 0;
	for (std::size_t c = 0; c < n && row < m; ++c) {
		// Partial pivoting.
		std::size_t best = row;
		for (std::size_t r = row; r < m; ++r)
			if (std::abs(a(r, c)) > std::abs(a(best, c)))
				best = r;
		if (std::abs(a(best, c)) <= tol)
			continue;
		if (best != row)
			for (std::size_t j = 0; j < n; ++j)
				std::swap(a(best, j), a(row, j));
		Cx piv = a(row, c);
		for (std::size_t j = 0; j < n; ++j)
			a(row, j) /= piv;
		for (std::size_t r = 0; r < m; ++r) {
			if (r == row)
				continue;
			Cx f = a(r, c);
			if (std::abs(f) == 0.0)
				continue;
			for (std::size_t j = 0; j < n; ++j)
				a(r, j) -= f * a(row, j);
		}
		pivot_of_col[c] = static_cast<long long>(row);
		++row;
	}
	std::vector<std::vector<Cx>> basis;
	for (std::size_t c = 0; c < n; ++c) {
		if (pivot_of_col[c] >= 0)
			continue;
		std::vector<Cx> v(n, 0.0);
		v[c] = 1.0;
		for (std::size_t j = 0; j < n; ++j)
			if (pivot_of_col[j] >= 0)
				v[j] = -a(static_cast<std::size_t>(pivot_of_col[j]), c);
		basis.push_back(v);
	}
	return basis;
}

inline double matrix_max_abs(const Matrix<Cx>& a)
{
	double m = 0.0;
	for (std::size_t i = 0; i < a.rows(); ++i)
		for (std::size_t j = 0; j < a.cols(); ++j)
			m = std::max(m, std::abs(a(i, j)));
	return m;
}

} // namespace homcov
