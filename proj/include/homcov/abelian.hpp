#pragma once

#include "homcov/cyclotomic.hpp"
#include "homcov/laurent.hpp"
#include "homcov/snf.hpp"

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace homcov {

/// Residue tuple, one entry per invariant factor.
using GroupElement = std::vector<long long>;

/// A surjection from the homology lattice Z^n onto a finite abelian group
/// given by invariant factors (m_1, ..., m_r), m_i >= 2, and an r x n
/// integer projection matrix. r = 0 is the trivial quotient.
class FiniteAbelianQuotient {
public:
	FiniteAbelianQuotient(std::vector<long long> invariant_factors, IntMatrix projection,
	                      int rank)
	    : factors_(std::move(invariant_factors)), projection_(std::move(projection)),
	      rank_(rank)
	{
		const std::size_t r = factors_.size();
		if (projection_.rows() != r || projection_.cols() != static_cast<std::size_t>(rank_))
			throw std::invalid_argument("projection shape does not match factors/rank");
		for (long long m : factors_)
			if (m < 2)
				throw std::invalid_argument("invariant factors must be at least 2");
		if (!surjective())
			throw std::invalid_argument("projection is not surjective onto the quotient");
	}

	static FiniteAbelianQuotient trivial(int rank)
	{
		return FiniteAbelianQuotient({}, IntMatrix(0, rank), rank);
	}

	int rank() const { return rank_; }
	const std::vector<long long>& factors() const { return factors_; }
	const IntMatrix& projection() const { return projection_; }
	std::size_t num_factors() const { return factors_.size(); }

	long long order() const
	{
		long long o = 1;
		for (long long m : factors_)
			o *= m;
		return o;
	}

	GroupElement identity() const { return GroupElement(factors_.size(), 0); }

	GroupElement reduce(GroupElement g) const
	{
		if (g.size() != factors_.size())
			throw std::invalid_argument("group element has wrong length");
		for (std::size_t i = 0; i < g.size(); ++i) {
			g[i] %= factors_[i];
			if (g[i] < 0)
				g[i] += factors_[i];
		}
		return g;
	}

	GroupElement add(const GroupElement& a, const GroupElement& b) const
	{
		GroupElement c(a);
		for (std::size_t i = 0; i < c.size(); ++i)
			c[i] += b[i];
		return reduce(c);
	}
	GroupElement negate(const GroupElement& a) const
	{
		GroupElement c(a);
		for (auto& v : c)
			v = -v;
		return reduce(c);
	}

	/// Image of a lattice vector under the projection.
	GroupElement project(const std::vector<long long>& v) const
	{
		if (v.size() != static_cast<std::size_t>(rank_))
			throw std::invalid_argument("lattice vector has wrong length");
		GroupElement g(factors_.size(), 0);
		for (std::size_t i = 0; i < factors_.size(); ++i) {
			Int acc = 0;
			for (int j = 0; j < rank_; ++j)
				acc += projection_(i, j) * v[j];
			acc %= factors_[i];
			if (acc < 0)
				acc += factors_[i];
			g[i] = acc.convert_to<long long>();
		}
		return g;
	}

	/// Image of generator e_j (1-based).
	GroupElement generator_image(int j) const
	{
		std::vector<long long> e(rank_, 0);
		e[j - 1] = 1;
		return project(e);
	}

	/// All elements in lexicographic residue order, identity first.
	std::vector<GroupElement> elements() const
	{
		std::vector<GroupElement> out;
		GroupElement g(factors_.size(), 0);
		out.push_back(g);
		while (true) {
			int i = static_cast<int>(factors_.size()) - 1;
			while (i >= 0 && g[i] + 1 == factors_[i]) {
				g[i] = 0;
				--i;
			}
			if (i < 0)
				break;
			++g[i];
			out.push_back(g);
		}
		return out;
	}

	long long element_index(const GroupElement& g) const
	{
		long long idx = 0;
		for (std::size_t i = 0; i < factors_.size(); ++i)
			idx = idx * factors_[i] + g[i];
		return idx;
	}

	bool operator==(const FiniteAbelianQuotient& o) const
	{
		return rank_ == o.rank_ && factors_ == o.factors_ && projection_ == o.projection_;
	}

private:
	bool surjective() const
	{
		if (factors_.empty())
			return true;
		// Surjective iff [P | diag(m)] has Smith form with all pivots 1.
		const std::size_t r = factors_.size();
		IntMatrix aug(r, static_cast<std::size_t>(rank_) + r);
		for (std::size_t i = 0; i < r; ++i) {
			for (int j = 0; j < rank_; ++j)
				aug(i, j) = projection_(i, j);
			aug(i, rank_ + i) = factors_[i];
		}
		SmithForm s = smith_normal_form(aug);
		if (s.rank != r)
			return false;
		for (std::size_t i = 0; i < r; ++i)
			if (s.d(i, i) != 1)
				return false;
		return true;
	}

	std::vector<long long> factors_;
	IntMatrix projection_;
	int rank_;
};

/// Element of the rational group ring of a finite abelian quotient.
class GroupRingElement {
public:
	explicit GroupRingElement(FiniteAbelianQuotient quotient) : quotient_(std::move(quotient)) {}

	const FiniteAbelianQuotient& quotient() const { return quotient_; }
	const std::map<GroupElement, Rat>& terms() const { return terms_; }
	bool is_zero() const { return terms_.empty(); }

	void add_term(const GroupElement& g, const Rat& c)
	{
		if (c == 0)
			return;
		GroupElement r = quotient_.reduce(g);
		auto [it, fresh] = terms_.emplace(r, c);
		if (!fresh) {
			it->second += c;
			if (it->second == 0)
				terms_.erase(it);
		}
	}

	GroupRingElement operator+(const GroupRingElement& o) const
	{
		GroupRingElement r = *this;
		for (auto& [g, c] : o.terms_)
			r.add_term(g, c);
		return r;
	}
	GroupRingElement operator*(const GroupRingElement& o) const
	{
		GroupRingElement r(quotient_);
		for (auto& [g1, c1] : terms_)
			for (auto& [g2, c2] : o.terms_)
				r.add_term(quotient_.add(g1, g2), c1 * c2);
		return r;
	}

	bool operator==(const GroupRingElement& o) const { return terms_ == o.terms_; }

private:
	FiniteAbelianQuotient quotient_;
	std::map<GroupElement, Rat> terms_;
};

/// Exponent vectors mapped through the projection; colliding terms summed.
inline GroupRingElement push_to_quotient(const LaurentPoly& p, const FiniteAbelianQuotient& q)
{
	if (p.rank() != q.rank())
		throw std::invalid_argument("Laurent rank does not match quotient rank");
	GroupRingElement out(q);
	for (auto& [e, c] : p.terms())
		out.add_term(q.project(e), c);
	return out;
}

/// Character of a finite abelian quotient, stored as rotation numbers
/// q_i in [0,1) with denominator dividing m_i; the value on g is
/// exp(2*pi*i * sum q_i g_i).
class Character {
public:
	Character(std::vector<long long> factors, std::vector<Rat> rotations)
	    : factors_(std::move(factors)), rotations_(std::move(rotations))
	{
		if (factors_.size() != rotations_.size())
			throw std::invalid_argument("one rotation number per invariant factor");
		for (std::size_t i = 0; i < factors_.size(); ++i) {
			rotations_[i] = mod_one(rotations_[i]);
			if (factors_[i] % denominator(rotations_[i]) != 0)
				throw std::invalid_argument("rotation denominator must divide the factor");
		}
	}

	const std::vector<Rat>& rotations() const { return rotations_; }
	bool trivial() const
	{
		for (auto& r : rotations_)
			if (r != 0)
				return false;
		return true;
	}

	/// Rotation number of the value on a group element.
	Rat rotation_on(const GroupElement& g) const
	{
		Rat r(0);
		for (std::size_t i = 0; i < g.size(); ++i)
			r += rotations_[i] * g[i];
		return mod_one(r);
	}

	Cyc value(const GroupElement& g) const { return Cyc::from_rotation(rotation_on(g)); }
	std::complex<double> value_complex(const GroupElement& g) const
	{
		double ang = 2.0 * std::numbers::pi * to_double(rotation_on(g));
		return {std::cos(ang), std::sin(ang)};
	}

	/// Rotation numbers of the pulled-back character of Z^n, one per
	/// torus coordinate X_j.
	std::vector<Rat> torus_rotations(const FiniteAbelianQuotient& q) const
	{
		std::vector<Rat> out;
		for (int j = 1; j <= q.rank(); ++j)
			out.push_back(rotation_on(q.generator_image(j)));
		return out;
	}

	bool operator==(const Character& o) const
	{
		return factors_ == o.factors_ && rotations_ == o.rotations_;
	}
	bool operator<(const Character& o) const { return rotations_ < o.rotations_; }

private:
	std::vector<long long> factors_;
	std::vector<Rat> rotations_;
};

/// Exactly |G| characters, trivial first, then lexicographic in the
/// numerator tuple (a_1, ..., a_r) of rotations a_i / m_i.
inline std::vector<Character> all_characters(const FiniteAbelianQuotient& q)
{
	std::vector<Character> out;
	for (const GroupElement& a : q.elements()) {
		std::vector<Rat> rot;
		for (std::size_t i = 0; i < q.factors().size(); ++i)
			rot.push_back(Rat(a[i], q.factors()[i]));
		out.emplace_back(q.factors(), rot);
	}
	return out;
}

struct LaurentPole : std::domain_error {
	LaurentPole() : std::domain_error("Laurent specialization at a zero coordinate") {}
};

/// Floating-point specialization at a point of (C*)^n.
inline std::complex<double> specialize(const LaurentPoly& p,
                                       const std::vector<std::complex<double>>& point)
{
	if (point.size() != static_cast<std::size_t>(p.rank()))
		throw std::invalid_argument("point dimension mismatch");
	for (auto& z : point)
		if (z == std::complex<double>(0.0, 0.0))
			throw LaurentPole();
	std::complex<double> acc(0.0, 0.0);
	for (auto& [e, c] : p.terms()) {
		std::complex<double> term(to_double(c), 0.0);
		for (int i = 0; i < p.rank(); ++i) {
			if (e[i] == 0)
				continue;
			term *= std::pow(point[i], static_cast<double>(e[i]));
		}
		acc += term;
	}
	return acc;
}

/// Exact specialization at a tuple of roots of unity given by rotation
/// numbers; every coordinate exp(2*pi*i*r_j) is nonzero, so there is no
/// pole case.
inline Cyc specialize_exact(const LaurentPoly& p, const std::vector<Rat>& rotations)
{
	if (rotations.size() != static_cast<std::size_t>(p.rank()))
		throw std::invalid_argument("rotation tuple dimension mismatch");
	Cyc acc(Rat(0));
	for (auto& [e, c] : p.terms()) {
		Rat rot(0);
		for (int i = 0; i < p.rank(); ++i)
			rot += rotations[i] * e[i];
		acc += Cyc::from_rotation(rot) * Cyc(c);
	}
	return acc;
}

} // namespace homcov
