#include "polyfe/units.h"
#include <fmt/format.h>
#include <optional>

namespace polyfe {

Poly2::Poly2(Rational const &c)
{
	add_term({0, 0}, c);
}

Poly2 Poly2::s1()
{
	Poly2 p;
	p.add_term({1, 0}, 1);
	return p;
}

Poly2 Poly2::s2()
{
	Poly2 p;
	p.add_term({0, 1}, 1);
	return p;
}

bool Poly2::is_constant() const
{
	return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == std::pair{0, 0});
}

Rational Poly2::constant_term() const
{
	auto it = terms_.find({0, 0});
	return it == terms_.end() ? Rational(0) : it->second;
}

void Poly2::add_term(std::pair<int, int> e, Rational const &c)
{
	if (c == 0)
		return;
	auto [it, fresh] = terms_.emplace(e, c);
	if (!fresh)
	{
		it->second += c;
		if (it->second == 0)
			terms_.erase(it);
	}
}

Poly2 &Poly2::operator+=(Poly2 const &o)
{
	for (auto const &[e, c] : o.terms_)
		add_term(e, c);
	return *this;
}

Poly2 &Poly2::operator-=(Poly2 const &o)
{
	for (auto const &[e, c] : o.terms_)
		add_term(e, -c);
	return *this;
}

Poly2 Poly2::operator-() const
{
	Poly2 r;
	r -= *this;
	return r;
}

Poly2 operator+(Poly2 a, Poly2 const &b)
{
	return a += b;
}

Poly2 operator-(Poly2 a, Poly2 const &b)
{
	return a -= b;
}

Poly2 operator*(Poly2 const &a, Poly2 const &b)
{
	Poly2 r;
	for (auto const &[ea, ca] : a.terms())
		for (auto const &[eb, cb] : b.terms())
			r.add_term({ea.first + eb.first, ea.second + eb.second}, ca * cb);
	return r;
}

std::complex<double> Poly2::evaluate(std::complex<double> s1, std::complex<double> s2) const
{
	std::complex<double> r = 0;
	for (auto const &[e, c] : terms_)
		r += static_cast<double>(c) * std::pow(s1, e.first) * std::pow(s2, e.second);
	return r;
}

std::string Poly2::str() const
{
	if (terms_.empty())
		return "0";
	std::string r;
	for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
	{
		auto [e, c] = *it;
		if (!r.empty())
			r += c < 0 ? " - " : " + ";
		else if (c < 0)
			r += "-";
		Rational a = c < 0 ? Rational(-c) : c;
		std::string mono;
		if (e.first)
			mono += e.first == 1 ? "s1" : fmt::format("s1^{}", e.first);
		if (e.second)
			mono += (mono.empty() ? "" : "*") +
			        (e.second == 1 ? std::string("s2") : fmt::format("s2^{}", e.second));
		if (mono.empty())
			r += to_string(a);
		else
			r += a == 1 ? mono : to_string(a) + "*" + mono;
	}
	return r;
}

std::optional<Poly2> divide_exact(Poly2 const &p, Poly2 const &d)
{
	if (d.is_zero())
		throw std::invalid_argument("division by the zero polynomial");
	// lex order with s1 before s2; the map's last entry is the leading term
	auto lead = *d.terms().rbegin();
	Poly2 rest = p, q;
	while (!rest.is_zero())
	{
		auto [e, c] = *rest.terms().rbegin();
		int a = e.first - lead.first.first, b = e.second - lead.first.second;
		if (a < 0 || b < 0)
			return std::nullopt;
		Poly2 t;
		t.add_term({a, b}, c / lead.second);
		q += t;
		rest -= t * d;
	}
	return q;
}

std::array<Poly2, unit_basis_size> const &unit_basis()
{
	static std::array<Poly2, unit_basis_size> const basis = [] {
		auto s1 = Poly2::s1(), s2 = Poly2::s2();
		Poly2 one(1);
		return std::array<Poly2, unit_basis_size>{s1, s2, one - s1, one - s2, s1 - s2, one - s1 * s2};
	}();
	return basis;
}

std::array<std::string, unit_basis_size> const &unit_basis_names()
{
	static std::array<std::string, unit_basis_size> const names{"s1", "s2", "1-s1", "1-s2", "s1-s2", "1-s1*s2"};
	return names;
}

std::complex<double> RationalFunction::evaluate(std::complex<double> s1, std::complex<double> s2) const
{
	auto d = den.evaluate(s1, s2);
	if (d == 0.0)
		throw DivisorError("rational function evaluated on a pole");
	return num.evaluate(s1, s2) / d;
}

RationalFunction RationalFunction::minus_one() const
{
	return {num - den, den};
}

std::complex<double> FactoredUnit::evaluate(std::complex<double> s1, std::complex<double> s2) const
{
	std::complex<double> r = sign * static_cast<double>(constant);
	auto const &basis = unit_basis();
	for (int k = 0; k < unit_basis_size; ++k)
	{
		if (exponents[k] == 0)
			continue;
		auto v = basis[k].evaluate(s1, s2);
		if (v == 0.0)
			throw DivisorError("unit evaluated on the divisor " + unit_basis_names()[k]);
		r *= std::pow(v, static_cast<int>(exponents[k]));
	}
	return r;
}

std::string FactoredUnit::str() const
{
	std::string r = sign < 0 ? "-" : "+";
	if (constant != 1)
		r += to_string(constant) + "*";
	r += "[";
	for (int k = 0; k < unit_basis_size; ++k)
		r += (k ? "," : "") + exponents[k].str();
	return r + "]";
}

namespace {

// strips every basis factor from p, returning the constant left over
Rational strip(Poly2 p, std::array<Integer, unit_basis_size> &exponents, int sign)
{
	auto const &basis = unit_basis();
	for (int k = 0; k < unit_basis_size; ++k)
		while (auto q = divide_exact(p, basis[k]))
		{
			if (q->is_zero())
				break;
			p = *q;
			exponents[k] += sign;
		}
	if (!p.is_constant())
		throw NotAUnit(fmt::format("factor {} is not a product of arrangement factors", p.str()));
	return p.constant_term();
}

} // namespace

FactoredUnit factor_unit(Poly2 const &num, Poly2 const &den)
{
	if (num.is_zero() || den.is_zero())
		throw NotAUnit("zero is not a unit");
	FactoredUnit u;
	Rational c = strip(num, u.exponents, 1) / strip(den, u.exponents, -1);
	u.sign = c < 0 ? -1 : 1;
	u.constant = c < 0 ? Rational(-c) : c;
	return u;
}

FactoredUnit factor_unit(RationalFunction const &f)
{
	return factor_unit(f.num, f.den);
}

std::array<RationalFunction, 9> const &nine_functions()
{
	static std::array<RationalFunction, 9> const fs = [] {
		auto x = Poly2::s1(), y = Poly2::s2();
		Poly2 one(1);
		auto ox = one - x, oy = one - y;
		return std::array<RationalFunction, 9>{{
		    {x * oy * oy, y * ox * ox},
		    {x * y, one},
		    {x, y},
		    {x * oy, y * ox},
		    {x * oy, x - one},
		    {oy, ox},
		    {oy, y * (x - one)},
		    {x, one},
		    {y, one},
		}};
	}();
	return fs;
}

CoefficientVector schaeffer_coefficients()
{
	return {0, 0, -1, 1, 0, -1, 0, 1, -1};
}

CoefficientVector kummer_coefficients()
{
	return {1, 0, 0, -1, -1, -1, -1, 0, 0};
}

CoefficientVector hill_coefficients()
{
	return {0, 1, 0, 0, -1, 0, 1, -1, -1};
}

CoefficientVector spence_kummer_coefficients()
{
	return {1, 1, 1, -2, -2, -2, -2, -2, -2};
}

CoefficientVector coefficients_by_name(std::string const &name)
{
	if (name == "a")
		return schaeffer_coefficients();
	if (name == "b")
		return kummer_coefficients();
	if (name == "c")
		return hill_coefficients();
	if (name == "d")
		return spence_kummer_coefficients();
	throw std::invalid_argument("unknown coefficient vector " + name);
}

int wedge_index(int i, int j)
{
	if (!(0 <= i && i < j && j < unit_basis_size))
		throw std::out_of_range("wedge index needs i < j");
	int idx = 0;
	for (int a = 0; a < i; ++a)
		idx += unit_basis_size - 1 - a;
	return idx + (j - i - 1);
}

std::pair<int, int> wedge_pair(int index)
{
	for (int i = 0; i < unit_basis_size; ++i)
		for (int j = i + 1; j < unit_basis_size; ++j)
			if (wedge_index(i, j) == index)
				return {i, j};
	throw std::out_of_range("wedge index");
}

namespace {

int mod2(Integer const &v)
{
	return static_cast<int>(((v % 2) + 2) % 2);
}

std::string basis_name(int k)
{
	return "(" + unit_basis_names()[k] + ")";
}

} // namespace

bool LatticeWedge::lattice_zero() const
{
	for (auto const &v : lattice)
		if (v != 0)
			return false;
	return true;
}

bool LatticeWedge::torsion_zero() const
{
	for (int v : torsion)
		if (v)
			return false;
	return true;
}

std::string LatticeWedge::str() const
{
	std::string r;
	for (int k = 0; k < wedge_size; ++k)
		if (lattice[k] != 0)
		{
			auto [i, j] = wedge_pair(k);
			r += fmt::format("{}{}*{}^{}", r.empty() ? "" : " + ", lattice[k].str(), basis_name(i), basis_name(j));
		}
	if (r.empty())
		r = "0";
	std::string t;
	for (int k = 0; k < unit_basis_size; ++k)
		t += (k ? "," : "") + std::to_string(torsion[k]);
	return r + " | torsion (" + t + ")";
}

LatticeWedge wedge(FactoredUnit const &a, FactoredUnit const &b)
{
	LatticeWedge w;
	for (int i = 0; i < unit_basis_size; ++i)
		for (int j = 0; j < unit_basis_size; ++j)
		{
			if (i == j)
				continue;
			auto v = a.exponents[i] * b.exponents[j];
			if (i < j)
				w.lattice[wedge_index(i, j)] += v;
			else
				w.lattice[wedge_index(j, i)] -= v;
		}
	for (int k = 0; k < unit_basis_size; ++k)
	{
		Integer t = 0;
		if (a.sign < 0)
			t += b.exponents[k];
		if (b.sign < 0)
			t += a.exponents[k];
		w.torsion[k] = mod2(t);
	}
	return w;
}

LatticeWedge wedge_criterion(CoefficientVector const &c)
{
	LatticeWedge sum;
	auto const &fs = nine_functions();
	for (int i = 0; i < 9; ++i)
	{
		if (c[i] == 0)
			continue;
		auto w = wedge(factor_unit(fs[i]), factor_unit(fs[i].minus_one()));
		for (int k = 0; k < wedge_size; ++k)
			sum.lattice[k] += c[i] * w.lattice[k];
		for (int k = 0; k < unit_basis_size; ++k)
			sum.torsion[k] = (sum.torsion[k] + mod2(c[i] * w.torsion[k])) % 2;
	}
	return sum;
}

bool LatticeTensor::lattice_zero() const
{
	for (auto const &row : lattice)
		for (auto const &v : row)
			if (v != 0)
				return false;
	return true;
}

bool LatticeTensor::torsion_zero() const
{
	for (auto const &row : torsion_inner)
		for (int v : row)
			if (v)
				return false;
	for (int v : torsion_outer)
		if (v)
			return false;
	for (int v : torsion_both)
		if (v)
			return false;
	return true;
}

std::string LatticeTensor::str() const
{
	std::string r;
	for (int k = 0; k < unit_basis_size; ++k)
		for (int w = 0; w < wedge_size; ++w)
			if (lattice[k][w] != 0)
			{
				auto [i, j] = wedge_pair(w);
				r += fmt::format("{}{}*{}@{}^{}", r.empty() ? "" : " + ", lattice[k][w].str(), basis_name(k),
				                 basis_name(i), basis_name(j));
			}
	if (r.empty())
		r = "0";
	int nonzero = 0;
	for (auto const &row : torsion_inner)
		for (int v : row)
			nonzero += v;
	for (int v : torsion_outer)
		nonzero += v;
	for (int v : torsion_both)
		nonzero += v;
	return r + fmt::format(" | torsion terms {}", nonzero);
}

LatticeTensor tensor_criterion(CoefficientVector const &c)
{
	LatticeTensor sum;
	auto const &fs = nine_functions();
	for (int i = 0; i < 9; ++i)
	{
		if (c[i] == 0)
			continue;
		auto f = factor_unit(fs[i]);
		auto inner = wedge(f, factor_unit(fs[i].minus_one()));
		for (int k = 0; k < unit_basis_size; ++k)
		{
			for (int w = 0; w < wedge_size; ++w)
				sum.lattice[k][w] += c[i] * f.exponents[k] * inner.lattice[w];
			for (int j = 0; j < unit_basis_size; ++j)
				sum.torsion_inner[k][j] = (sum.torsion_inner[k][j] + mod2(c[i] * f.exponents[k] * inner.torsion[j])) % 2;
		}
		if (f.sign < 0)
		{
			for (int w = 0; w < wedge_size; ++w)
				sum.torsion_outer[w] = (sum.torsion_outer[w] + mod2(c[i] * inner.lattice[w])) % 2;
			for (int j = 0; j < unit_basis_size; ++j)
				sum.torsion_both[j] = (sum.torsion_both[j] + mod2(c[i] * inner.torsion[j])) % 2;
		}
	}
	return sum;
}

namespace {

// basis factor whose zero locus carries the meridian B_j, j = 1..6
constexpr std::array<int, 6> meridian_factor{0, 1, 4, 2, 3, 5};

Integer order_along(FactoredUnit const &u, int j)
{
	if (j <= 6)
		return u.exponents[meridian_factor[j - 1]];
	// degree of each basis factor in s1 (j = 7) or s2 (j = 8)
	constexpr std::array<int, 6> deg_s1{1, 0, 1, 0, 1, 1};
	constexpr std::array<int, 6> deg_s2{0, 1, 0, 1, 1, 1};
	Integer r = 0;
	for (int k = 0; k < unit_basis_size; ++k)
		r -= u.exponents[k] * (j == 7 ? deg_s1[k] : deg_s2[k]);
	return r;
}

} // namespace

std::pair<Integer, Integer> meridian_orders(int i, int j)
{
	if (i < 1 || i > 9 || j < 1 || j > 8)
		throw std::out_of_range("meridian_orders index");
	auto const &f = nine_functions()[i - 1];
	return {order_along(factor_unit(f), j), order_along(factor_unit(f.minus_one()), j)};
}

} // namespace polyfe
