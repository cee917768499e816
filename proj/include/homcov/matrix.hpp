#pragma once

#include "homcov/base.hpp"

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace homcov {

/// Dense row-major matrix over an arbitrary commutative ring element type.
/// Vectors are columns; composition acts by left multiplication.
template <class T>
class Matrix {
public:
	Matrix() = default;
	Matrix(std::size_t rows, std::size_t cols, T fill = T(0))
	    : rows_(rows), cols_(cols), data_(rows * cols, fill)
	{
	}
	Matrix(std::initializer_list<std::initializer_list<T>> rows)
	{
		rows_ = rows.size();
		cols_ = rows_ ? rows.begin()->size() : 0;
		data_.reserve(rows_ * cols_);
		for (auto& r : rows) {
			if (r.size() != cols_)
				throw std::invalid_argument("ragged matrix initializer");
			for (auto& v : r)
				data_.push_back(v);
		}
	}

	static Matrix identity(std::size_t n)
	{
		Matrix m(n, n);
		for (std::size_t i = 0; i < n; ++i)
			m(i, i) = T(1);
		return m;
	}

	std::size_t rows() const { return rows_; }
	std::size_t cols() const { return cols_; }
	bool square() const { return rows_ == cols_; }

	T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
	const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

	bool operator==(const Matrix& o) const
	{
		return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
	}
	bool operator!=(const Matrix& o) const { return !(*this == o); }

	Matrix operator+(const Matrix& o) const
	{
		require_same_shape(o);
		Matrix r = *this;
		for (std::size_t k = 0; k < data_.size(); ++k)
			r.data_[k] += o.data_[k];
		return r;
	}
	Matrix operator-(const Matrix& o) const
	{
		require_same_shape(o);
		Matrix r = *this;
		for (std::size_t k = 0; k < data_.size(); ++k)
			r.data_[k] -= o.data_[k];
		return r;
	}
	Matrix operator*(const Matrix& o) const
	{
		if (cols_ != o.rows_)
			throw std::invalid_argument("matrix product shape mismatch");
		Matrix r(rows_, o.cols_);
		for (std::size_t i = 0; i < rows_; ++i)
			for (std::size_t k = 0; k < cols_; ++k) {
				const T& a = (*this)(i, k);
				if (a == T(0))
					continue;
				for (std::size_t j = 0; j < o.cols_; ++j)
					r(i, j) += a * o(k, j);
			}
		return r;
	}
	Matrix operator*(const T& c) const
	{
		Matrix r = *this;
		for (auto& v : r.data_)
			v *= c;
		return r;
	}

	std::vector<T> apply(const std::vector<T>& v) const
	{
		if (v.size() != cols_)
			throw std::invalid_argument("matrix-vector shape mismatch");
		std::vector<T> r(rows_, T(0));
		for (std::size_t i = 0; i < rows_; ++i)
			for (std::size_t j = 0; j < cols_; ++j)
				r[i] += (*this)(i, j) * v[j];
		return r;
	}

	Matrix transposed() const
	{
		Matrix r(cols_, rows_);
		for (std::size_t i = 0; i < rows_; ++i)
			for (std::size_t j = 0; j < cols_; ++j)
				r(j, i) = (*this)(i, j);
		return r;
	}

	/// Binary exponentiation; exponent may exceed machine range.
	Matrix pow(Int e) const
	{
		if (!square())
			throw std::invalid_argument("pow of non-square matrix");
		if (e < 0)
			throw std::invalid_argument("pow with negative exponent");
		Matrix acc = identity(rows_);
		Matrix base = *this;
		while (e > 0) {
			if ((e & 1) != 0)
				acc = acc * base;
			base = base * base;
			e >>= 1;
		}
		return acc;
	}

	bool is_zero() const
	{
		for (auto& v : data_)
			if (!(v == T(0)))
				return false;
		return true;
	}

private:
	void require_same_shape(const Matrix& o) const
	{
		if (rows_ != o.rows_ || cols_ != o.cols_)
			throw std::invalid_argument("matrix shape mismatch");
	}

	std::size_t rows_ = 0, cols_ = 0;
	std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

/// Structured text form: "rows cols" header line, then one row per line.
template <class T>
std::ostream& operator<<(std::ostream& os, const Matrix<T>& m)
{
	os << m.rows() << " " << m.cols() << "\n";
	for (std::size_t i = 0; i < m.rows(); ++i) {
		for (std::size_t j = 0; j < m.cols(); ++j) {
			if (j)
				os << " ";
			os << m(i, j);
		}
		os << "\n";
	}
	return os;
}

} // namespace homcov
