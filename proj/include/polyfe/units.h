#pragma once

#include "polyfe/rational.h"
#include <array>
#include <complex>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polyfe {

// sparse polynomial in s1, s2 over the rationals
class Poly2
{
	std::map<std::pair<int, int>, Rational> terms_;

  public:
	Poly2() = default;
	Poly2(Rational const &c);
	Poly2(int c) : Poly2(Rational(c)) {}

	static Poly2 s1();
	static Poly2 s2();

	std::map<std::pair<int, int>, Rational> const &terms() const { return terms_; }
	bool is_zero() const { return terms_.empty(); }
	bool is_constant() const;
	Rational constant_term() const;
	void add_term(std::pair<int, int> e, Rational const &c);

	Poly2 &operator+=(Poly2 const &o);
	Poly2 &operator-=(Poly2 const &o);
	Poly2 operator-() const;

	std::complex<double> evaluate(std::complex<double> s1, std::complex<double> s2) const;
	std::string str() const;

	bool operator==(Poly2 const &o) const { return terms_ == o.terms_; }
};

Poly2 operator+(Poly2 a, Poly2 const &b);
Poly2 operator-(Poly2 a, Poly2 const &b);
Poly2 operator*(Poly2 const &a, Poly2 const &b);

// exact quotient, or nothing when d does not divide p
std::optional<Poly2> divide_exact(Poly2 const &p, Poly2 const &d);

// ordered basis s1, s2, 1-s1, 1-s2, s1-s2, 1-s1*s2
constexpr int unit_basis_size = 6;
std::array<Poly2, unit_basis_size> const &unit_basis();
std::array<std::string, unit_basis_size> const &unit_basis_names();

struct RationalFunction
{
	Poly2 num;
	Poly2 den;

	std::complex<double> evaluate(std::complex<double> s1, std::complex<double> s2) const;
	// this - 1
	RationalFunction minus_one() const;
};

class NotAUnit : public std::runtime_error
{
  public:
	using std::runtime_error::runtime_error;
};

class DivisorError : public std::runtime_error
{
  public:
	using std::runtime_error::runtime_error;
};

struct FactoredUnit
{
	int sign = 1;
	Rational constant = 1;
	std::array<Integer, unit_basis_size> exponents{};

	std::complex<double> evaluate(std::complex<double> s1, std::complex<double> s2) const;
	std::string str() const;
};

FactoredUnit factor_unit(Poly2 const &num, Poly2 const &den);
FactoredUnit factor_unit(RationalFunction const &f);

// the nine arguments f_1..f_9 as functions of (s1, s2)
std::array<RationalFunction, 9> const &nine_functions();

using CoefficientVector = std::array<Integer, 9>;

CoefficientVector schaeffer_coefficients();
CoefficientVector kummer_coefficients();
CoefficientVector hill_coefficients();
CoefficientVector spence_kummer_coefficients();
CoefficientVector coefficients_by_name(std::string const &name);

constexpr int wedge_size = unit_basis_size * (unit_basis_size - 1) / 2;

// index of e_i ^ e_j for i < j
int wedge_index(int i, int j);
std::pair<int, int> wedge_pair(int index);

struct LatticeWedge
{
	std::array<Integer, wedge_size> lattice{};
	// coefficient of (-1) ^ e_j, mod 2
	std::array<int, unit_basis_size> torsion{};

	bool lattice_zero() const;
	bool torsion_zero() const;
	std::string str() const;
};

struct LatticeTensor
{
	std::array<std::array<Integer, wedge_size>, unit_basis_size> lattice{};
	// e_k (x) ((-1) ^ e_j)
	std::array<std::array<int, unit_basis_size>, unit_basis_size> torsion_inner{};
	// (-1) (x) (e_i ^ e_j)
	std::array<int, wedge_size> torsion_outer{};
	// (-1) (x) ((-1) ^ e_j)
	std::array<int, unit_basis_size> torsion_both{};

	bool lattice_zero() const;
	bool torsion_zero() const;
	std::string str() const;
};

LatticeWedge wedge(FactoredUnit const &a, FactoredUnit const &b);
LatticeWedge wedge_criterion(CoefficientVector const &c);
LatticeTensor tensor_criterion(CoefficientVector const &c);

// meridian orders (ord f_i, ord (f_i - 1)) along the divisor of generator
// B_j, j = 1..8 (B7, B8 at s1 = inf, s2 = inf)
std::pair<Integer, Integer> meridian_orders(int i, int j);

} // namespace polyfe
