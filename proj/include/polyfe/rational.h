#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace polyfe {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(long num, long den = 1)
{
	return Rational(Integer(num), Integer(den));
}

inline bool is_integral(Rational const &q)
{
	return denominator(q) == 1;
}

// "3", "-1/2"
inline std::string to_string(Rational const &q)
{
	if (denominator(q) == 1)
		return numerator(q).str();
	return numerator(q).str() + "/" + denominator(q).str();
}

Rational parse_rational(std::string const &text);

} // namespace polyfe
