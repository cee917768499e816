#pragma once

#include "homcov/numeric.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace homcov {

/// Result of a simultaneous triangularization attempt: either a basis in
/// which every generator is upper triangular within tolerance, or the
/// dimension at which no common eigenvector exists.
struct TriangularizationResult {
	bool success = false;
	ComplexMatrixD basis;                   // columns of the flag basis
	std::vector<ComplexMatrixD> triangular; // generators in that basis
	int failure_dimension = 0;              // set when success is false
	double max_lower_residual = 0.0;        // largest strictly-lower entry
};

namespace detail {

/// Distinct eigenvalue representatives: generous clustering (defective
/// eigenvalues scatter like eps^(1/k) in floating arithmetic) with the
/// cluster mean as representative, which is first-order accurate for
/// Jordan clusters. Sorted deterministically.
inline std::vector<Cx> clustered_eigenvalues(const Matrix<Cx>& a, double radius)
{
	std::vector<Cx> eig = complex_eigenvalues(a);
	std::vector<std::vector<Cx>> clusters;
	for (const Cx& l : eig) {
		bool placed = false;
		for (auto& c : clusters)
			if (!placed && std::abs(l - c.front()) <= radius) {
				c.push_back(l);
				placed = true;
			}
		if (!placed)
			clusters.push_back({l});
	}
	std::vector<Cx> reps;
	for (const auto& c : clusters) {
		Cx mean = 0.0;
		for (const Cx& l : c)
			mean += l;
		reps.push_back(mean / static_cast<double>(c.size()));
	}
	std::sort(reps.begin(), reps.end(), [](const Cx& x, const Cx& y) {
		if (x.real() != y.real())
			return x.real() < y.real();
		return x.imag() < y.imag();
	});
	return reps;
}

/// Intersection of span(U) with ker(B), as columns through U.
inline std::vector<std::vector<Cx>> intersect_with_kernel(const Matrix<Cx>& u,
                                                          const Matrix<Cx>& b, double tol)
{
	Matrix<Cx> bu = b * u;
	auto xs = complex_kernel(bu, tol);
	std::vector<std::vector<Cx>> out;
	for (const auto& x : xs) {
		std::vector<Cx> v(u.rows(), 0.0);
		for (std::size_t i = 0; i < u.rows(); ++i)
			for (std::size_t j = 0; j < u.cols(); ++j)
				v[i] += u(i, j) * x[j];
		out.push_back(std::move(v));
	}
	return out;
}

inline Matrix<Cx> columns_to_matrix(const std::vector<std::vector<Cx>>& cols)
{
	Matrix<Cx> m(cols.empty() ? 0 : cols.front().size(), cols.size());
	for (std::size_t j = 0; j < cols.size(); ++j)
		for (std::size_t i = 0; i < m.rows(); ++i)
			m(i, j) = cols[j][i];
	return m;
}

/// Gram-Schmidt orthonormalization of columns, dropping dependent ones.
inline Matrix<Cx> orthonormalize(const Matrix<Cx>& m, double tol)
{
	std::vector<std::vector<Cx>> kept;
	for (std::size_t j = 0; j < m.cols(); ++j) {
		std::vector<Cx> v(m.rows());
		for (std::size_t i = 0; i < m.rows(); ++i)
			v[i] = m(i, j);
		for (const auto& u : kept) {
			Cx dot = 0.0;
			for (std::size_t i = 0; i < v.size(); ++i)
				dot += std::conj(u[i]) * v[i];
			for (std::size_t i = 0; i < v.size(); ++i)
				v[i] -= dot * u[i];
		}
		double norm = 0.0;
		for (const auto& x : v)
			norm += std::norm(x);
		norm = std::sqrt(norm);
		if (norm > tol) {
			for (auto& x : v)
				x /= norm;
			kept.push_back(std::move(v));
		}
	}
	return columns_to_matrix(kept);
}

/// Searches for a vector that is a simultaneous eigenvector of every
/// generator, branching over eigenvalue choices with subspace pruning.
inline std::optional<std::vector<Cx>>
common_eigenvector(const std::vector<Matrix<Cx>>& gens, std::size_t idx, Matrix<Cx> subspace,
                   double tol)
{
	if (subspace.cols() == 0)
		return std::nullopt;
	if (idx == gens.size()) {
		std::vector<Cx> v(subspace.rows());
		for (std::size_t i = 0; i < v.size(); ++i)
			v[i] = subspace(i, 0);
		return v;
	}
	const Matrix<Cx>& a = gens[idx];
	double scale = std::max(1.0, matrix_max_abs(a));
	// Cluster radius and kernel threshold sit between machine precision
	// and the verification tolerance: the flag found here is re-checked
	// strictly at the end, so the search may be generous.
	const double cluster_radius = 1e-4 * scale;
	const double kernel_tol = std::max(tol, 1e-6) * scale;
	for (const Cx& lambda : clustered_eigenvalues(a, cluster_radius)) {
		Matrix<Cx> shifted = a;
		for (std::size_t i = 0; i < a.rows(); ++i)
			shifted(i, i) -= lambda;
		auto cols = intersect_with_kernel(subspace, shifted, kernel_tol);
		if (cols.empty())
			continue;
		Matrix<Cx> next = orthonormalize(columns_to_matrix(cols), 1e-9);
		if (next.cols() == 0)
			continue;
		if (auto v = common_eigenvector(gens, idx + 1, next, tol))
			return v;
	}
	return std::nullopt;
}

} // namespace detail

/// Finds a common flag: locate a common eigenvector, split it off,
/// transform the generators, recurse on the quotient. Tolerance is
/// relative to the matrix norms.
inline TriangularizationResult
simultaneous_triangularize(std::vector<ComplexMatrixD> gens, double tol = 1e-8)
{
	TriangularizationResult out;
	if (gens.empty()) {
		out.success = true;
		out.basis = ComplexMatrixD::identity(0);
		return out;
	}
	const std::size_t n = gens.front().rows();
	for (const auto& g : gens)
		if (!g.square() || g.rows() != n)
			throw std::invalid_argument("generators must be square of equal dimension");
	double scale = 1.0;
	for (const auto& g : gens)
		scale = std::max(scale, matrix_max_abs(g));

	ComplexMatrixD total = ComplexMatrixD::identity(n);
	std::vector<ComplexMatrixD> work = gens;
	for (std::size_t step = 0; step < n; ++step) {
		const std::size_t d = n - step;
		if (d == 1)
			break;
		auto v = detail::common_eigenvector(work, 0, ComplexMatrixD::identity(d), tol);
		if (!v) {
			out.success = false;
			out.failure_dimension = static_cast<int>(d);
			return out;
		}
		// Basis [v | completion]: complete with the identity columns
		// having the smallest overlap, re-orthonormalized.
		Matrix<Cx> cand(d, d + 1);
		for (std::size_t i = 0; i < d; ++i)
			cand(i, 0) = (*v)[i];
		// Order identity columns by |v_i| ascending so the dropped one
		// is the most parallel.
		std::vector<std::size_t> order(d);
		for (std::size_t i = 0; i < d; ++i)
			order[i] = i;
		std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
			return std::abs((*v)[x]) < std::abs((*v)[y]);
		});
		for (std::size_t j = 0; j < d; ++j)
			cand(order[j], j + 1) = 1.0;
		Matrix<Cx> p = detail::orthonormalize(cand, 1e-12);
		if (p.cols() != d) {
			out.success = false;
			out.failure_dimension = static_cast<int>(d);
			return out;
		}
		// Unitary change of basis: transform generators by p^H work p.
		Matrix<Cx> ph(d, d);
		for (std::size_t i = 0; i < d; ++i)
			for (std::size_t j = 0; j < d; ++j)
				ph(i, j) = std::conj(p(j, i));
		std::vector<ComplexMatrixD> next;
		for (const auto& g : work)
			next.push_back(ph * g * p);
		// Accumulate into the global basis (acting on the trailing block).
		ComplexMatrixD embed = ComplexMatrixD::identity(n);
		for (std::size_t i = 0; i < d; ++i)
			for (std::size_t j = 0; j < d; ++j)
				embed(step + i, step + j) = p(i, j);
		total = total * embed;
		// Drop the first row/column for the quotient action.
		std::vector<ComplexMatrixD> rest;
		for (const auto& g : next) {
			ComplexMatrixD q(d - 1, d - 1);
			for (std::size_t i = 1; i < d; ++i)
				for (std::size_t j = 1; j < d; ++j)
					q(i - 1, j - 1) = g(i, j);
			rest.push_back(q);
		}
		work = std::move(rest);
	}

	// Assemble the triangular forms in the accumulated basis and verify.
	out.basis = total;
	ComplexMatrixD inv = total; // unitary: inverse is conjugate transpose
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j)
			inv(i, j) = std::conj(total(j, i));
	double worst = 0.0;
	for (const auto& g : gens) {
		ComplexMatrixD t = inv * g * total;
		for (std::size_t i = 0; i < n; ++i)
			for (std::size_t j = 0; j < i; ++j)
				worst = std::max(worst, std::abs(t(i, j)));
		out.triangular.push_back(std::move(t));
	}
	out.max_lower_residual = worst;
	out.success = worst < tol * scale;
	if (!out.success)
		out.failure_dimension = static_cast<int>(n);
	return out;
}

} // namespace homcov
