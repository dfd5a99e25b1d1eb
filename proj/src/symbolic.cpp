#include "polyfe/symbolic.h"
#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace polyfe {

SymbolPolynomial::SymbolPolynomial(Rational const &c)
{
	if (c != 0)
		terms_[{}] = c;
}

SymbolPolynomial SymbolPolynomial::symbol(std::string const &name)
{
	return monomial({{name, 1}});
}

SymbolPolynomial SymbolPolynomial::monomial(Monomial const &m, Rational const &c)
{
	SymbolPolynomial p;
	p.add_term(m, c);
	return p;
}

void SymbolPolynomial::add_term(Monomial const &m, Rational const &c)
{
	if (c == 0)
		return;
	auto [it, fresh] = terms_.emplace(m, c);
	if (!fresh)
	{
		it->second += c;
		if (it->second == 0)
			terms_.erase(it);
	}
}

bool SymbolPolynomial::is_constant() const
{
	return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational SymbolPolynomial::constant_term() const
{
	return coefficient({});
}

Rational SymbolPolynomial::coefficient(Monomial const &m) const
{
	auto it = terms_.find(m);
	return it == terms_.end() ? Rational(0) : it->second;
}

int SymbolPolynomial::total_degree() const
{
	int d = 0;
	for (auto const &[m, c] : terms_)
	{
		int s = 0;
		for (auto const &[n, e] : m)
			s += e;
		d = std::max(d, s);
	}
	return d;
}

int SymbolPolynomial::degree_in(std::string const &name) const
{
	int d = 0;
	for (auto const &[m, c] : terms_)
		if (auto it = m.find(name); it != m.end())
			d = std::max(d, it->second);
	return d;
}

std::set<std::string> SymbolPolynomial::symbols() const
{
	std::set<std::string> r;
	for (auto const &[m, c] : terms_)
		for (auto const &[n, e] : m)
			r.insert(n);
	return r;
}

bool SymbolPolynomial::mentions(std::string const &name) const
{
	return degree_in(name) > 0;
}

SymbolPolynomial &SymbolPolynomial::operator+=(SymbolPolynomial const &o)
{
	for (auto const &[m, c] : o.terms_)
		add_term(m, c);
	return *this;
}

SymbolPolynomial &SymbolPolynomial::operator-=(SymbolPolynomial const &o)
{
	for (auto const &[m, c] : o.terms_)
		add_term(m, -c);
	return *this;
}

SymbolPolynomial &SymbolPolynomial::operator*=(SymbolPolynomial const &o)
{
	SymbolPolynomial r;
	for (auto const &[ma, ca] : terms_)
		for (auto const &[mb, cb] : o.terms_)
		{
			Monomial m = ma;
			for (auto const &[n, e] : mb)
				m[n] += e;
			r.add_term(m, ca * cb);
		}
	*this = std::move(r);
	return *this;
}

SymbolPolynomial SymbolPolynomial::operator-() const
{
	SymbolPolynomial r = *this;
	for (auto &[m, c] : r.terms_)
		c = -c;
	return r;
}

SymbolPolynomial operator+(SymbolPolynomial a, SymbolPolynomial const &b)
{
	return a += b;
}

SymbolPolynomial operator-(SymbolPolynomial a, SymbolPolynomial const &b)
{
	return a -= b;
}

SymbolPolynomial operator*(SymbolPolynomial a, SymbolPolynomial const &b)
{
	return a *= b;
}

SymbolPolynomial pow(SymbolPolynomial const &p, int n)
{
	if (n < 0)
		throw std::invalid_argument("negative power of a polynomial");
	SymbolPolynomial r(1);
	for (int i = 0; i < n; ++i)
		r *= p;
	return r;
}

SymbolPolynomial SymbolPolynomial::substitute(
	std::map<std::string, SymbolPolynomial> const &values) const
{
	SymbolPolynomial r;
	for (auto const &[m, c] : terms_)
	{
		Monomial kept;
		SymbolPolynomial factor(c);
		for (auto const &[n, e] : m)
		{
			auto it = values.find(n);
			if (it == values.end())
				kept[n] = e;
			else
				factor *= pow(it->second, e);
		}
		r += factor * monomial(kept);
	}
	return r;
}

Rational SymbolPolynomial::evaluate(std::map<std::string, Rational> const &values) const
{
	Rational r = 0;
	for (auto const &[m, c] : terms_)
	{
		Rational t = c;
		for (auto const &[n, e] : m)
		{
			auto it = values.find(n);
			if (it == values.end())
				throw std::invalid_argument("no value for symbol " + n);
			for (int i = 0; i < e; ++i)
				t *= it->second;
		}
		r += t;
	}
	return r;
}

SymbolPolynomial SymbolPolynomial::coefficient_of(std::string const &name, int k) const
{
	SymbolPolynomial r;
	for (auto const &[m, c] : terms_)
	{
		auto it = m.find(name);
		int e = it == m.end() ? 0 : it->second;
		if (e != k)
			continue;
		Monomial rest = m;
		rest.erase(name);
		r.add_term(rest, c);
	}
	return r;
}

namespace {

int degree(Monomial const &m)
{
	int s = 0;
	for (auto const &[n, e] : m)
		s += e;
	return s;
}

} // namespace

std::string SymbolPolynomial::str() const
{
	if (terms_.empty())
		return "0";
	std::vector<std::pair<Monomial, Rational>> order(terms_.begin(), terms_.end());
	std::stable_sort(order.begin(), order.end(), [](auto const &a, auto const &b) {
		return degree(a.first) > degree(b.first);
	});
	std::string r;
	for (auto const &[m, c] : order)
	{
		bool neg = c < 0;
		Rational a = neg ? Rational(-c) : c;
		if (r.empty())
			r += neg ? "-" : "";
		else
			r += neg ? " - " : " + ";
		std::string body;
		for (auto const &[n, e] : m)
		{
			if (!body.empty())
				body += "*";
			body += n;
			if (e != 1)
				body += "^" + std::to_string(e);
		}
		if (body.empty())
			r += to_string(a);
		else if (a == 1)
			r += body;
		else
			r += to_string(a) + "*" + body;
	}
	return r;
}

SymbolPolynomial parse_symbol_polynomial(std::string const &text)
{
	SymbolPolynomial r;
	size_t i = 0;
	auto skip = [&] {
		while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
			++i;
	};
	auto fail = [&](std::string const &what) {
		throw std::invalid_argument("polynomial '" + text + "': " + what + " at " +
		                            std::to_string(i));
	};
	skip();
	if (i == text.size())
		fail("empty");
	bool first = true;
	while (true)
	{
		skip();
		if (i == text.size())
			break;
		int sign = 1;
		if (text[i] == '+' || text[i] == '-')
		{
			sign = text[i] == '-' ? -1 : 1;
			++i;
			skip();
		}
		else if (!first)
			fail("expected + or -");
		first = false;
		Rational coeff = sign;
		Monomial m;
		while (true)
		{
			skip();
			if (i == text.size())
				fail("dangling operator");
			if (std::isdigit(static_cast<unsigned char>(text[i])))
			{
				size_t j = i;
				while (j < text.size() &&
				       (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '/'))
					++j;
				coeff *= parse_rational(text.substr(i, j - i));
				i = j;
			}
			else if (std::isalpha(static_cast<unsigned char>(text[i])))
			{
				size_t j = i;
				while (j < text.size() &&
				       (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
					++j;
				auto name = text.substr(i, j - i);
				i = j;
				int e = 1;
				if (i < text.size() && text[i] == '^')
				{
					size_t k = ++i;
					while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k])))
						++k;
					if (k == i)
						fail("missing exponent");
					e = std::stoi(text.substr(i, k - i));
					i = k;
				}
				m[name] += e;
			}
			else
				fail("unexpected character");
			skip();
			if (i < text.size() && text[i] == '*')
			{
				++i;
				continue;
			}
			break;
		}
		r += SymbolPolynomial::monomial(m, coeff);
	}
	return r;
}

} // namespace polyfe
