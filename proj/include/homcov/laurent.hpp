#pragma once

#include "homcov/base.hpp"

#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace homcov {

/// Exact multivariate Laurent polynomial with rational coefficients.
/// Terms are kept in a map ordered lexicographically by exponent vector,
/// with no stored zero coefficients, so equality is structural.
class LaurentPoly {
public:
	using Exponent = std::vector<long long>;

	explicit LaurentPoly(int rank = 0) : rank_(rank)
	{
		if (rank < 0)
			throw std::invalid_argument("negative rank");
	}

	static LaurentPoly constant(int rank, const Rat& c)
	{
		LaurentPoly p(rank);
		p.add_term(Exponent(rank, 0), c);
		return p;
	}
	static LaurentPoly monomial(int rank, const Exponent& e, const Rat& c = Rat(1))
	{
		LaurentPoly p(rank);
		p.add_term(e, c);
		return p;
	}
	/// X_i^power
	static LaurentPoly variable(int rank, int i, long long power = 1)
	{
		Exponent e(rank, 0);
		e.at(i - 1) = power;
		return monomial(rank, e);
	}

	int rank() const { return rank_; }
	const std::map<Exponent, Rat>& terms() const { return terms_; }
	bool is_zero() const { return terms_.empty(); }

	void add_term(const Exponent& e, const Rat& c)
	{
		if (static_cast<int>(e.size()) != rank_)
			throw std::invalid_argument("exponent vector has wrong length");
		if (c == 0)
			return;
		auto [it, fresh] = terms_.emplace(e, c);
		if (!fresh) {
			it->second += c;
			if (it->second == 0)
				terms_.erase(it);
		}
	}

	LaurentPoly operator+(const LaurentPoly& o) const
	{
		require_same_rank(o);
		LaurentPoly r = *this;
		for (auto& [e, c] : o.terms_)
			r.add_term(e, c);
		return r;
	}
	LaurentPoly operator-() const
	{
		LaurentPoly r = *this;
		for (auto& [e, c] : r.terms_)
			c = -c;
		return r;
	}
	LaurentPoly operator-(const LaurentPoly& o) const
	{
		require_same_rank(o);
		LaurentPoly r = *this;
		for (auto& [e, c] : o.terms_)
			r.add_term(e, -c);
		return r;
	}
	LaurentPoly operator*(const LaurentPoly& o) const
	{
		require_same_rank(o);
		LaurentPoly r(rank_);
		for (auto& [e1, c1] : terms_)
			for (auto& [e2, c2] : o.terms_) {
				Exponent e(rank_);
				for (int i = 0; i < rank_; ++i)
					e[i] = e1[i] + e2[i];
				r.add_term(e, c1 * c2);
			}
		return r;
	}
	LaurentPoly operator*(const Rat& c) const
	{
		LaurentPoly r(rank_);
		for (auto& [e, k] : terms_)
			r.add_term(e, k * c);
		return r;
	}
	LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
	LaurentPoly& operator-=(const LaurentPoly& o) { return *this = *this - o; }
	LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

	bool operator==(const LaurentPoly& o) const
	{
		return rank_ == o.rank_ && terms_ == o.terms_;
	}
	bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

	/// Coefficient of an exponent vector (zero when absent).
	Rat coefficient(const Exponent& e) const
	{
		auto it = terms_.find(e);
		return it == terms_.end() ? Rat(0) : it->second;
	}

private:
	void require_same_rank(const LaurentPoly& o) const
	{
		if (rank_ != o.rank_)
			throw std::invalid_argument("Laurent rank mismatch");
	}

	int rank_;
	std::map<Exponent, Rat> terms_;
};

/// Serialization: "laurent <rank> <terms>" then one record per term,
/// "<e_1> ... <e_rank> <numerator> <denominator>", in the canonical
/// term order.
inline std::string laurent_to_text(const LaurentPoly& p)
{
	std::ostringstream os;
	os << "laurent " << p.rank() << " " << p.terms().size() << "\n";
	for (auto& [e, c] : p.terms()) {
		for (long long v : e)
			os << v << " ";
		os << numerator(c) << " " << denominator(c) << "\n";
	}
	return os.str();
}

inline LaurentPoly laurent_from_text(std::istream& is)
{
	std::string tag;
	int rank = 0;
	std::size_t nterms = 0;
	if (!(is >> tag >> rank >> nterms) || tag != "laurent")
		throw std::invalid_argument("expected 'laurent <rank> <terms>' header");
	LaurentPoly p(rank);
	for (std::size_t t = 0; t < nterms; ++t) {
		LaurentPoly::Exponent e(rank);
		for (int i = 0; i < rank; ++i)
			if (!(is >> e[i]))
				throw std::invalid_argument("truncated laurent term");
		std::string num, den;
		if (!(is >> num >> den))
			throw std::invalid_argument("truncated laurent coefficient");
		p.add_term(e, rat_num_den(Int(num), Int(den)));
	}
	return p;
}

/// Human-readable single-line form, e.g. "1 - 2*X1^-1*X2".
inline std::string laurent_to_pretty(const LaurentPoly& p)
{
	if (p.is_zero())
		return "0";
	std::string s;
	for (auto& [e, c] : p.terms()) {
		std::string mono;
		for (int i = 0; i < p.rank(); ++i) {
			if (e[i] == 0)
				continue;
			if (!mono.empty())
				mono += "*";
			mono += "X" + std::to_string(i + 1);
			if (e[i] != 1)
				mono += "^" + std::to_string(e[i]);
		}
		Rat a = c;
		std::string sign = a < 0 ? " - " : " + ";
		if (a < 0)
			a = -a;
		std::string coeff = to_string(a);
		std::string term;
		if (mono.empty())
			term = coeff;
		else if (coeff == "1")
			term = mono;
		else
			term = coeff + "*" + mono;
		if (s.empty())
			s = (c < 0 ? "-" : "") + term;
		else
			s += sign + term;
	}
	return s;
}

} // namespace homcov
