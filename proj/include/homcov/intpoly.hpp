#pragma once

#include "homcov/base.hpp"
#include "homcov/matrix.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace homcov {

/// Univariate integer polynomial, coefficient k belongs to t^k; trailing
/// zeros trimmed, zero polynomial has empty coefficient list.
class IntPoly {
public:
	IntPoly() = default;
	explicit IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }
	static IntPoly constant(Int v) { return IntPoly({std::move(v)}); }
	/// t^n - 1
	static IntPoly power_minus_one(int n)
	{
		std::vector<Int> c(n + 1, 0);
		c[0] = -1;
		c[n] = 1;
		return IntPoly(std::move(c));
	}

	const std::vector<Int>& coeffs() const { return c_; }
	bool is_zero() const { return c_.empty(); }
	int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
	const Int& leading() const
	{
		if (c_.empty())
			throw std::logic_error("leading coefficient of zero polynomial");
		return c_.back();
	}
	Int coeff(int k) const
	{
		return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : Int(0);
	}
	bool monic() const { return !c_.empty() && c_.back() == 1; }

	bool operator==(const IntPoly& o) const { return c_ == o.c_; }
	bool operator!=(const IntPoly& o) const { return !(*this == o); }

	IntPoly operator+(const IntPoly& o) const
	{
		std::vector<Int> r(std::max(c_.size(), o.c_.size()), 0);
		for (std::size_t i = 0; i < c_.size(); ++i)
			r[i] += c_[i];
		for (std::size_t i = 0; i < o.c_.size(); ++i)
			r[i] += o.c_[i];
		return IntPoly(std::move(r));
	}
	IntPoly operator-(const IntPoly& o) const
	{
		std::vector<Int> r(std::max(c_.size(), o.c_.size()), 0);
		for (std::size_t i = 0; i < c_.size(); ++i)
			r[i] += c_[i];
		for (std::size_t i = 0; i < o.c_.size(); ++i)
			r[i] -= o.c_[i];
		return IntPoly(std::move(r));
	}
	IntPoly operator*(const IntPoly& o) const
	{
		if (is_zero() || o.is_zero())
			return IntPoly();
		std::vector<Int> r(c_.size() + o.c_.size() - 1, 0);
		for (std::size_t i = 0; i < c_.size(); ++i) {
			if (c_[i] == 0)
				continue;
			for (std::size_t j = 0; j < o.c_.size(); ++j)
				r[i + j] += c_[i] * o.c_[j];
		}
		return IntPoly(std::move(r));
	}

	IntPoly derivative() const
	{
		if (c_.size() <= 1)
			return IntPoly();
		std::vector<Int> r(c_.size() - 1);
		for (std::size_t i = 1; i < c_.size(); ++i)
			r[i - 1] = c_[i] * static_cast<long long>(i);
		return IntPoly(std::move(r));
	}

	Int evaluate(const Int& x) const
	{
		Int acc = 0;
		for (auto it = c_.rbegin(); it != c_.rend(); ++it)
			acc = acc * x + *it;
		return acc;
	}
	Rat evaluate(const Rat& x) const
	{
		Rat acc = 0;
		for (auto it = c_.rbegin(); it != c_.rend(); ++it)
			acc = acc * x + *it;
		return acc;
	}

	/// Horner evaluation on a square matrix (exact Cayley-Hamilton checks).
	IntMatrix evaluate(const IntMatrix& m) const
	{
		IntMatrix acc(m.rows(), m.cols());
		for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
			acc = acc * m;
			for (std::size_t i = 0; i < m.rows(); ++i)
				acc(i, i) += *it;
		}
		return acc;
	}

	/// Content (gcd of coefficients, nonnegative).
	Int content() const
	{
		Int g = 0;
		for (auto& v : c_)
			g = int_gcd(g, v);
		return g;
	}
	IntPoly primitive_part() const
	{
		if (is_zero())
			return IntPoly();
		Int g = content();
		if (leading() < 0)
			g = -g;
		std::vector<Int> r = c_;
		for (auto& v : r)
			v /= g;
		return IntPoly(std::move(r));
	}

	std::string str(const std::string& var = "t") const
	{
		if (is_zero())
			return "0";
		std::string s;
		for (int k = degree(); k >= 0; --k) {
			Int a = coeff(k);
			if (a == 0)
				continue;
			std::string term;
			Int mag = a < 0 ? Int(-a) : a;
			if (k == 0)
				term = mag.str();
			else {
				if (mag != 1)
					term = mag.str() + "*";
				term += var;
				if (k > 1)
					term += "^" + std::to_string(k);
			}
			if (s.empty())
				s = (a < 0 ? "-" : "") + term;
			else
				s += (a < 0 ? " - " : " + ") + term;
		}
		return s;
	}

private:
	void trim()
	{
		while (!c_.empty() && c_.back() == 0)
			c_.pop_back();
	}
	std::vector<Int> c_;
};

/// Exact division num / den when den divides num over Q and the quotient
/// is integral; throws when the division is not exact.
inline IntPoly exact_divide(const IntPoly& num, const IntPoly& den)
{
	if (den.is_zero())
		throw std::invalid_argument("division by zero polynomial");
	std::vector<Rat> work(num.coeffs().size());
	for (std::size_t i = 0; i < work.size(); ++i)
		work[i] = Rat(num.coeffs()[i]);
	int dn = num.degree(), dd = den.degree();
	if (dn < dd)
		throw std::invalid_argument("exact_divide: degree too small");
	std::vector<Rat> quot(dn - dd + 1, Rat(0));
	for (int k = dn - dd; k >= 0; --k) {
		Rat c = work[k + dd] / Rat(den.leading());
		quot[k] = c;
		if (c == 0)
			continue;
		for (int i = 0; i <= dd; ++i)
			work[k + i] -= c * Rat(den.coeffs()[i]);
	}
	for (auto& w : work)
		if (w != 0)
			throw std::invalid_argument("exact_divide: remainder is nonzero");
	std::vector<Int> out(quot.size());
	for (std::size_t i = 0; i < quot.size(); ++i) {
		if (denominator(quot[i]) != 1)
			throw std::invalid_argument("exact_divide: quotient not integral");
		out[i] = numerator(quot[i]);
	}
	return IntPoly(std::move(out));
}

/// True iff den divides num exactly over Q.
inline bool divides(const IntPoly& den, const IntPoly& num)
{
	if (num.is_zero())
		return true;
	if (den.is_zero() || num.degree() < den.degree())
		return false;
	std::vector<Rat> work(num.coeffs().size());
	for (std::size_t i = 0; i < work.size(); ++i)
		work[i] = Rat(num.coeffs()[i]);
	int dd = den.degree();
	for (int k = num.degree() - dd; k >= 0; --k) {
		Rat c = work[k + dd] / Rat(den.leading());
		if (c == 0)
			continue;
		for (int i = 0; i <= dd; ++i)
			work[k + i] -= c * Rat(den.coeffs()[i]);
	}
	for (auto& w : work)
		if (w != 0)
			return false;
	return true;
}

/// Primitive gcd over Q[t], returned with positive leading coefficient.
inline IntPoly poly_gcd(IntPoly a, IntPoly b)
{
	// Rational Euclid with primitive renormalization at each step.
	auto to_rat = [](const IntPoly& p) {
		std::vector<Rat> v(p.coeffs().size());
		for (std::size_t i = 0; i < v.size(); ++i)
			v[i] = Rat(p.coeffs()[i]);
		return v;
	};
	auto from_rat = [](std::vector<Rat> v) {
		// Clear denominators and take the primitive part.
		Int l = 1;
		for (auto& c : v)
			l = int_lcm(l, denominator(c));
		std::vector<Int> w(v.size());
		for (std::size_t i = 0; i < v.size(); ++i)
			w[i] = numerator(v[i] * Rat(l));
		return IntPoly(std::move(w)).primitive_part();
	};
	a = a.primitive_part();
	b = b.primitive_part();
	while (!b.is_zero()) {
		// remainder of a by b over Q
		std::vector<Rat> work = to_rat(a);
		int dd = b.degree();
		for (int k = a.degree() - dd; k >= 0; --k) {
			Rat c = work[k + dd] / Rat(b.leading());
			if (c == 0)
				continue;
			for (int i = 0; i <= dd; ++i)
				work[k + i] -= c * Rat(b.coeffs()[i]);
		}
		while (!work.empty() && work.back() == 0)
			work.pop_back();
		IntPoly r = from_rat(std::move(work));
		a = b;
		b = r;
	}
	return a.primitive_part();
}

/// Integer cyclotomic polynomial Phi_n as an IntPoly (exact divisions of
/// t^n - 1 by the proper-divisor cyclotomics; memoized).
inline const IntPoly& cyclotomic_int_poly(int n)
{
	static std::map<int, IntPoly> cache;
	auto it = cache.find(n);
	if (it != cache.end())
		return it->second;
	if (n < 1)
		throw std::invalid_argument("cyclotomic index must be positive");
	IntPoly acc = IntPoly::power_minus_one(n);
	for (int d = 1; d < n; ++d)
		if (n % d == 0)
			acc = exact_divide(acc, cyclotomic_int_poly(d));
	return cache.emplace(n, std::move(acc)).first->second;
}

/// Euler phi for small arguments.
inline int euler_phi(int n)
{
	int result = n;
	for (int p = 2; p * p <= n; ++p) {
		if (n % p)
			continue;
		while (n % p == 0)
			n /= p;
		result -= result / p;
	}
	if (n > 1)
		result -= result / n;
	return result;
}

/// All k with phi(k) <= dim: the orders whose cyclotomic polynomial can
/// divide a degree-dim characteristic polynomial. phi(k) >= sqrt(k/2)
/// gives the scan bound 2*dim^2 + 2.
inline std::vector<int> cyclotomic_orders_for_dimension(int dim)
{
	std::vector<int> out;
	long long bound = 2ll * dim * dim + 2;
	for (long long k = 1; k <= bound; ++k)
		if (euler_phi(static_cast<int>(k)) <= dim)
			out.push_back(static_cast<int>(k));
	return out;
}

} // namespace homcov
