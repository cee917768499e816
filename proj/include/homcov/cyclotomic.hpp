#pragma once

#include "homcov/base.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace homcov {

namespace detail {

/// Dense rational polynomial helpers used by the cyclotomic field type.
/// Coefficient k is the coefficient of x^k; trailing zeros trimmed.
using RatPoly = std::vector<Rat>;

inline void rp_trim(RatPoly& p)
{
	while (!p.empty() && p.back() == 0)
		p.pop_back();
}

inline RatPoly rp_mul(const RatPoly& a, const RatPoly& b)
{
	if (a.empty() || b.empty())
		return {};
	RatPoly r(a.size() + b.size() - 1, Rat(0));
	for (std::size_t i = 0; i < a.size(); ++i) {
		if (a[i] == 0)
			continue;
		for (std::size_t j = 0; j < b.size(); ++j)
			r[i + j] += a[i] * b[j];
	}
	rp_trim(r);
	return r;
}

/// Division with remainder; divisor need not be monic.
inline std::pair<RatPoly, RatPoly> rp_divmod(RatPoly num, RatPoly den)
{
	rp_trim(num);
	rp_trim(den);
	if (den.empty())
		throw std::invalid_argument("polynomial division by zero");
	RatPoly quot(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Rat(0));
	while (num.size() >= den.size()) {
		Rat c = num.back() / den.back();
		std::size_t shift = num.size() - den.size();
		quot[shift] = c;
		for (std::size_t i = 0; i < den.size(); ++i)
			num[shift + i] -= c * den[i];
		rp_trim(num);
	}
	rp_trim(quot);
	return {quot, num};
}

inline RatPoly rp_mod(const RatPoly& num, const RatPoly& den)
{
	return rp_divmod(num, den).second;
}

/// Extended gcd over Q[x]: returns (g, s, t) with s*a + t*b = g.
inline std::array<RatPoly, 3> rp_ext_gcd(RatPoly a, RatPoly b)
{
	RatPoly s0 = {Rat(1)}, s1 = {}, t0 = {}, t1 = {Rat(1)};
	while (!b.empty()) {
		auto [q, r] = rp_divmod(a, b);
		RatPoly s2 = s0, t2 = t0;
		// s2 -= q*s1 ; t2 -= q*t1
		RatPoly qs = rp_mul(q, s1), qt = rp_mul(q, t1);
		s2.resize(std::max(s2.size(), qs.size()), Rat(0));
		for (std::size_t i = 0; i < qs.size(); ++i)
			s2[i] -= qs[i];
		rp_trim(s2);
		t2.resize(std::max(t2.size(), qt.size()), Rat(0));
		for (std::size_t i = 0; i < qt.size(); ++i)
			t2[i] -= qt[i];
		rp_trim(t2);
		a = b;
		b = r;
		s0 = s1;
		s1 = s2;
		t0 = t1;
		t1 = t2;
	}
	return {a, s0, t0};
}

} // namespace detail

/// Integer cyclotomic polynomial Phi_n as rational coefficients
/// (computed by exact division of x^n - 1 by the proper divisors'
/// cyclotomics; memoized).
inline const detail::RatPoly& cyclotomic_polynomial(int n)
{
	static std::map<int, detail::RatPoly> cache;
	auto it = cache.find(n);
	if (it != cache.end())
		return it->second;
	if (n < 1)
		throw std::invalid_argument("cyclotomic index must be positive");
	detail::RatPoly xn1(n + 1, Rat(0));
	xn1[0] = Rat(-1);
	xn1[n] = Rat(1);
	detail::RatPoly acc = xn1;
	for (int d = 1; d < n; ++d) {
		if (n % d != 0)
			continue;
		auto [q, r] = detail::rp_divmod(acc, cyclotomic_polynomial(d));
		if (!r.empty())
			throw std::logic_error("cyclotomic division left a remainder");
		acc = q;
	}
	return cache.emplace(n, acc).first->second;
}

/// Element of the cyclotomic field Q(zeta_N), stored as a rational
/// polynomial in zeta of degree < N (an element of Q[x]/(x^N - 1));
/// zero testing and inversion reduce modulo Phi_N. Arithmetic between
/// different orders lifts both operands to the lcm order.
class Cyc {
public:
	Cyc() : order_(1), coeffs_(1, Rat(0)) {}
	Cyc(const Rat& c) : order_(1), coeffs_(1, c) {}
	Cyc(int i) : Cyc(Rat(i)) {}

	/// zeta_order^power
	static Cyc root_of_unity(long long order, long long power)
	{
		if (order < 1)
			throw std::invalid_argument("root-of-unity order must be positive");
		Cyc c;
		c.order_ = order;
		c.coeffs_.assign(order, Rat(0));
		long long p = ((power % order) + order) % order;
		c.coeffs_[p] = Rat(1);
		return c;
	}

	/// exp(2*pi*i*q) for rational q: the canonical finite-order point.
	static Cyc from_rotation(const Rat& q)
	{
		Rat r = mod_one(q);
		long long den = denominator(r).convert_to<long long>();
		long long num = numerator(r).convert_to<long long>();
		return root_of_unity(den, num);
	}

	long long order() const { return order_; }

	bool is_zero() const
	{
		detail::RatPoly rep(coeffs_.begin(), coeffs_.end());
		detail::rp_trim(rep);
		if (rep.empty())
			return true;
		return detail::rp_mod(rep, cyclotomic_polynomial(static_cast<int>(order_))).empty();
	}

	/// Exact rational value when the element is rational, else nullopt.
	std::optional<Rat> as_rational() const
	{
		detail::RatPoly rep(coeffs_.begin(), coeffs_.end());
		rep = detail::rp_mod(rep, cyclotomic_polynomial(static_cast<int>(order_)));
		if (rep.empty())
			return Rat(0);
		if (rep.size() == 1)
			return rep[0];
		return std::nullopt;
	}

	Cyc operator+(const Cyc& o) const
	{
		auto [a, b] = lifted(*this, o);
		for (long long i = 0; i < a.order_; ++i)
			a.coeffs_[i] += b.coeffs_[i];
		return a;
	}
	Cyc operator-(const Cyc& o) const
	{
		auto [a, b] = lifted(*this, o);
		for (long long i = 0; i < a.order_; ++i)
			a.coeffs_[i] -= b.coeffs_[i];
		return a;
	}
	Cyc operator-() const
	{
		Cyc r = *this;
		for (auto& c : r.coeffs_)
			c = -c;
		return r;
	}
	Cyc operator*(const Cyc& o) const
	{
		auto [a, b] = lifted(*this, o);
		Cyc r;
		r.order_ = a.order_;
		r.coeffs_.assign(a.order_, Rat(0));
		for (long long i = 0; i < a.order_; ++i) {
			if (a.coeffs_[i] == 0)
				continue;
			for (long long j = 0; j < a.order_; ++j) {
				if (b.coeffs_[j] == 0)
					continue;
				r.coeffs_[(i + j) % a.order_] += a.coeffs_[i] * b.coeffs_[j];
			}
		}
		return r;
	}
	Cyc& operator+=(const Cyc& o) { return *this = *this + o; }
	Cyc& operator-=(const Cyc& o) { return *this = *this - o; }
	Cyc& operator*=(const Cyc& o) { return *this = *this * o; }

	bool operator==(const Cyc& o) const { return (*this - o).is_zero(); }
	bool operator!=(const Cyc& o) const { return !(*this == o); }

	/// Multiplicative inverse via extended gcd with Phi_N.
	Cyc inverse() const
	{
		int n = static_cast<int>(order_);
		detail::RatPoly rep(coeffs_.begin(), coeffs_.end());
		rep = detail::rp_mod(rep, cyclotomic_polynomial(n));
		if (rep.empty())
			throw std::domain_error("inverse of zero cyclotomic element");
		auto [g, s, t] = detail::rp_ext_gcd(rep, cyclotomic_polynomial(n));
		(void)t;
		if (g.size() != 1)
			throw std::logic_error("cyclotomic inverse: gcd not a unit");
		Cyc r;
		r.order_ = order_;
		r.coeffs_.assign(order_, Rat(0));
		for (std::size_t i = 0; i < s.size(); ++i)
			r.coeffs_[i % order_] += s[i] / g[0];
		return r;
	}
	Cyc operator/(const Cyc& o) const { return *this * o.inverse(); }

	std::complex<double> to_complex() const
	{
		std::complex<double> z(0.0, 0.0);
		for (long long k = 0; k < order_; ++k) {
			if (coeffs_[k] == 0)
				continue;
			double ang = 2.0 * std::numbers::pi * static_cast<double>(k) /
			             static_cast<double>(order_);
			z += to_double(coeffs_[k]) * std::complex<double>(std::cos(ang), std::sin(ang));
		}
		return z;
	}

	Cyc conjugated() const
	{
		Cyc r;
		r.order_ = order_;
		r.coeffs_.assign(order_, Rat(0));
		for (long long k = 0; k < order_; ++k)
			r.coeffs_[(order_ - k) % order_] = coeffs_[k];
		return r;
	}

private:
	static std::pair<Cyc, Cyc> lifted(const Cyc& x, const Cyc& y)
	{
		long long n = std::lcm(x.order_, y.order_);
		return {x.lift_to(n), y.lift_to(n)};
	}

	Cyc lift_to(long long n) const
	{
		if (n == order_)
			return *this;
		Cyc r;
		r.order_ = n;
		r.coeffs_.assign(n, Rat(0));
		long long f = n / order_;
		for (long long k = 0; k < order_; ++k)
			r.coeffs_[k * f] = coeffs_[k];
		return r;
	}

	long long order_;
	std::vector<Rat> coeffs_;
};

} // namespace homcov
