#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

namespace homcov {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int int_gcd(Int a, Int b) { return boost::multiprecision::gcd(a, b); }
inline Int int_lcm(Int a, Int b) { return boost::multiprecision::lcm(a, b); }

inline Rat rat_num_den(const Int& num, const Int& den)
{
	if (den == 0)
		throw std::invalid_argument("rational with zero denominator");
	return Rat(num, den);
}

inline Int numerator(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int denominator(const Rat& q) { return boost::multiprecision::denominator(q); }

inline std::string to_string(const Int& v)
{
	return v.str();
}

inline std::string to_string(const Rat& q)
{
	if (denominator(q) == 1)
		return numerator(q).str();
	return numerator(q).str() + "/" + denominator(q).str();
}

inline double to_double(const Rat& q) { return q.convert_to<double>(); }

/// Parses "p" or "p/q" into a rational.
inline Rat parse_rational(const std::string& text)
{
	auto slash = text.find('/');
	try {
		if (slash == std::string::npos)
			return Rat(Int(text));
		Int num(text.substr(0, slash));
		Int den(text.substr(slash + 1));
		return rat_num_den(num, den);
	} catch (const std::runtime_error&) {
		throw std::invalid_argument("cannot parse rational: '" + text + "'");
	}
}

/// Reduction of a rational into [0, 1): the fractional part used for
/// rotation numbers on the circle Q/Z.
inline Rat mod_one(const Rat& q)
{
	Int num = numerator(q), den = denominator(q);
	Int r = num % den;
	if (r < 0)
		r += den;
	return Rat(r, den);
}

} // namespace homcov
