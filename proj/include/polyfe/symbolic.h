#pragma once

#include "polyfe/rational.h"
#include <map>
#include <set>
#include <string>
#include <vector>

namespace polyfe {

// symbol name -> positive exponent; the empty monomial is 1
using Monomial = std::map<std::string, int>;

// polynomial over exact rationals in named commuting symbols
class SymbolPolynomial
{
	std::map<Monomial, Rational> terms_;

	void add_term(Monomial const &m, Rational const &c);

  public:
	SymbolPolynomial() = default;
	SymbolPolynomial(Rational const &c);
	SymbolPolynomial(int c) : SymbolPolynomial(Rational(c)) {}

	static SymbolPolynomial symbol(std::string const &name);
	static SymbolPolynomial monomial(Monomial const &m, Rational const &c = 1);

	std::map<Monomial, Rational> const &terms() const { return terms_; }
	bool is_zero() const { return terms_.empty(); }
	bool is_constant() const;
	Rational constant_term() const;
	Rational coefficient(Monomial const &m) const;
	int total_degree() const;
	int degree_in(std::string const &name) const;
	std::set<std::string> symbols() const;
	bool mentions(std::string const &name) const;

	SymbolPolynomial &operator+=(SymbolPolynomial const &o);
	SymbolPolynomial &operator-=(SymbolPolynomial const &o);
	SymbolPolynomial &operator*=(SymbolPolynomial const &o);
	SymbolPolynomial operator-() const;

	// every symbol with an entry is replaced; others stay
	SymbolPolynomial substitute(std::map<std::string, SymbolPolynomial> const &values) const;
	// exact value at a full rational assignment
	Rational evaluate(std::map<std::string, Rational> const &values) const;
	// coefficient polynomial of name^k
	SymbolPolynomial coefficient_of(std::string const &name, int k) const;

	// graded-lex canonical text, e.g. "1/2*rho_y^2 - C2 + 3"
	std::string str() const;

	bool operator==(SymbolPolynomial const &o) const { return terms_ == o.terms_; }
};

SymbolPolynomial operator+(SymbolPolynomial a, SymbolPolynomial const &b);
SymbolPolynomial operator-(SymbolPolynomial a, SymbolPolynomial const &b);
SymbolPolynomial operator*(SymbolPolynomial a, SymbolPolynomial const &b);
SymbolPolynomial pow(SymbolPolynomial const &p, int n);

inline bool ring_is_zero(SymbolPolynomial const &p)
{
	return p.is_zero();
}

inline std::string ring_str(SymbolPolynomial const &p)
{
	return p.str();
}

// parse the canonical text form and ordinary sums of products such as
// "-2*rho_y^2*rho_6 + 1/3*rho_y"; no parentheses
SymbolPolynomial parse_symbol_polynomial(std::string const &text);

} // namespace polyfe
