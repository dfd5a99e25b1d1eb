#include "polyfe/galois.h"
#include "polyfe/graded.h"
#include <fmt/format.h>
#include <fstream>
#include <functional>
#include <sstream>

namespace polyfe {

SymbolPolynomial sym(std::string const &name)
{
	return SymbolPolynomial::symbol(name);
}

namespace {

using SP = SymbolPolynomial;

SP q(long n, long d = 1)
{
	return SP(make_rational(n, d));
}

SymSeries letter_xy(int index, int N)
{
	return SymSeries::letter(lie_letters(), N, index);
}

std::string indexed(char const *stem, int i)
{
	return fmt::format("{}{}", stem, i);
}

std::vector<std::string> six_letters()
{
	return {"X1", "X2", "X3", "X4", "X5", "X6"};
}

constexpr std::array<std::pair<int, int>, 7> generic_pairs{{{1, 4}, {2, 3}, {2, 5}, {2, 6}, {3, 5}, {3, 6}, {5, 6}}};

// Magnus image with target letters renamed to X, Y
SymSeries magnus_xy(Word const &w, int N)
{
	auto r = SymSeries::one(lie_letters(), N);
	for (auto const &s : w.syllables())
	{
		if (s.letter > 1)
			throw std::invalid_argument("Magnus image needs a two-letter target");
		r = r * exp(letter_xy(s.letter, N).scaled(SP(Rational(s.exponent))));
	}
	return r;
}

CoefficientVector const &vector_for(std::string const &id)
{
	static std::map<std::string, CoefficientVector> const m{
	    {"aL", schaeffer_coefficients()},
	    {"bL", kummer_coefficients()},
	    {"cL", hill_coefficients()},
	    {"dL", spence_kummer_coefficients()},
	};
	auto it = m.find(id);
	if (it == m.end())
		throw std::invalid_argument("unknown identity " + id);
	return it->second;
}

SP rho6()
{
	return sym("rho_1y") - sym("rho_1x");
}

} // namespace

SymSeries generic_associator_log(int N)
{
	auto letters = six_letters();
	SymSeries r(letters, N);
	std::vector<SymSeries> xs;
	for (int j = 0; j < 6; ++j)
		xs.push_back(SymSeries::letter(letters, N, j));
	for (int j = 0; j < 6; ++j)
		r += xs[j].scaled(sym(indexed("C", j + 1)));
	if (N >= 2)
		for (int k = 0; k < int(generic_pairs.size()); ++k)
		{
			auto [a, b] = generic_pairs[k];
			r += bracket(xs[a - 1], xs[b - 1]).scaled(sym(indexed("C", 7 + k)));
		}
	return r;
}

SymSeries pushforward_log(MorphismTable const &table, int i, int N)
{
	if (i < 1 || i > int(table.morphisms.size()))
		throw std::out_of_range("pushforward row");
	auto const &m = table.morphisms[i - 1];
	std::vector<SymSeries> images;
	for (int j = 0; j < 6; ++j)
		images.push_back(log(magnus_xy(m.images[j], N)));
	return substitute(generic_associator_log(N), images);
}

SymSeries delta_log(int i, int N)
{
	auto X = letter_xy(0, N), Y = letter_xy(1, N);
	auto half_chi = (sym("chi") - q(1)) * q(1, 2);
	auto zeta_part = [&](SymSeries const &y) {
		auto b = bracket(X, y);
		return b.scaled(sym("Z2")) + bracket(X, b).scaled(sym("Z3")) + bracket(y, b).scaled(sym("Z3"));
	};
	switch (i)
	{
	case 5:
		return X.scaled(half_chi);
	case 6:
		return zeta_part(Y);
	case 7:
		// the 10 associator transported by t -> 1/t, with Y -> log(exp(-Y)exp(-X))
		return bch(X.scaled(half_chi), zeta_part(bch(-Y, -X)));
	default:
		if (i < 1 || i > 9)
			throw std::out_of_range("delta index");
		return SymSeries(lie_letters(), N);
	}
}

SymSeries chain_log(MorphismTable const &table, int i, int N)
{
	return bch(delta_log(i, N), pushforward_log(table, i, N));
}

std::array<SymbolPolynomial, 5> lie_coordinates(SymSeries const &v)
{
	std::array<SP, 5> r;
	auto d1 = lyndon_decompose(v, 1);
	r[0] = d1.at(0);
	r[1] = d1.at(1);
	if (v.truncation() >= 2)
		r[2] = lyndon_decompose(v, 2).at(0);
	if (v.truncation() >= 3)
	{
		auto d3 = lyndon_decompose(v, 3);
		r[3] = d3.at(0);
		r[4] = d3.at(1);
	}
	return r;
}

SymbolMap base_rho_map()
{
	return {
	    {"C1", sym("rho_x")},
	    {"C2", sym("rho_y")},
	    {"C3", sym("rho_1xoy") + sym("rho_y")},
	    {"C4", sym("rho_1x")},
	    {"C5", sym("rho_1y")},
	    {"C6", sym("rho_1xy")},
	};
}

SymbolPolynomial rho_of(MorphismTable const &table, int i)
{
	return lie_coordinates(chain_log(table, i, 1))[0].substitute(base_rho_map());
}

SymbolPolynomial rho_prime_of(MorphismTable const &table, int i)
{
	return lie_coordinates(chain_log(table, i, 1))[1].substitute(base_rho_map());
}

SymbolPolynomial ell_i2(MorphismTable const &table, int i)
{
	return sym(indexed("Li2_", i)) + q(1, 2) * rho_of(table, i) * rho_prime_of(table, i);
}

SymbolPolynomial ell_i3(MorphismTable const &table, int i)
{
	auto r = rho_of(table, i);
	return sym(indexed("Li3_", i)) + q(1, 2) * r * sym(indexed("Li2_", i)) + q(1, 12) * r * r * rho_prime_of(table, i);
}

SymbolMap printed_dictionary(MorphismTable const &table)
{
	auto m = base_rho_map();
	m["C7"] = ell_i2(table, 8);
	m["C8"] = q(1, 2) * sym("rho_y") - ell_i2(table, 3);
	m["C9"] = ell_i2(table, 9);
	m["C10"] = ell_i2(table, 2);
	m["C11"] = -q(1, 2) * sym("rho_1x") - ell_i2(table, 6);
	m["C13"] = q(1, 2) * sym("rho_1x") - sym("rho_1xy") + ell_i2(table, 8) + ell_i2(table, 5);
	return m;
}

SymbolMap substitute_C(MorphismTable const &table)
{
	auto m = printed_dictionary(table);
	m["C11"] += sym("Z2");
	m["C13"] += (sym("chi") - q(1)) * q(1, 4) * (sym("rho_1x") - sym("rho_1xy"));
	return m;
}

SymbolPolynomial criterion_rhs(MorphismTable const &table, int k, CoefficientVector const &c)
{
	SP r;
	for (int i = 1; i <= 9; ++i)
		if (c[i - 1] != 0)
			r += SP(Rational(c[i - 1])) * phi(pushforward_log(table, i, k), k);
	return r;
}

SymbolPolynomial printed_compute1(char which)
{
	switch (which)
	{
	case 'a':
		return SP();
	case 'b':
		return q(1, 2) * sym("rho_y") + sym("rho_1x") - sym("rho_1xy");
	case 'c':
		return q(1, 2) * sym("rho_y");
	default:
		throw std::invalid_argument("compute1 case must be a, b or c");
	}
}

SymbolPolynomial printed_compute3(MorphismTable const &table)
{
	auto ry = sym("rho_y");
	return -sym("Li2_5") - sym("Li2_7") - q(1, 2) * rho_prime_of(table, 5) * (rho_of(table, 1) - q(1)) -
	       q(1, 6) * ry * (q(2) - q(3) * rho_of(table, 6) + q(3) * ry) - sym("Z2");
}

EquationClaim theorem_claim(std::string const &id)
{
	auto const &k = vector_for(id);
	int w = id == "dL" ? 3 : 2;
	EquationClaim c{id, SP(), SP()};
	for (int i = 1; i <= 9; ++i)
		c.lhs += SP(Rational(k[i - 1])) * sym(fmt::format("Li{}_{}", w, i));
	auto ry = sym("rho_y"), r1x = sym("rho_1x"), r1xy = sym("rho_1xy"), z2 = sym("Z2");
	if (id == "aL")
		c.rhs = ry * rho6() - z2;
	else if (id == "bL")
		c.rhs = q(1, 2) * ry * ry + q(1, 2) * ry + r1x - r1xy;
	else if (id == "cL")
		c.rhs = -z2 + ry * rho6() - q(1, 2) * ry * ry - q(1, 2) * ry;
	else
	{
		c.lhs += q(2) * sym("Z3");
		c.rhs = -ry * ry * rho6() + q(2) * z2 * ry + q(1, 3) * ry * ry * ry - sym("Li2_5") - sym("Li2_7") +
		        q(1, 2) * (r1xy - r1x) - q(1, 3) * ry;
	}
	return c;
}

namespace {

// φ_w of the pushforward recovered from the symbolic chain: bch(-delta, chain)
SP native_integral(MorphismTable const &table, int i, int w)
{
	int N = 3;
	auto X = letter_xy(0, N), Y = letter_xy(1, N);
	auto b = bracket(X, Y);
	auto chain = X.scaled(rho_of(table, i)) + Y.scaled(rho_prime_of(table, i)) + b.scaled(ell_i2(table, i)) +
	             bracket(X, b).scaled(ell_i3(table, i)) + bracket(Y, b).scaled(sym(indexed("u_", i)));
	return phi(bch(-delta_log(i, N), chain), w);
}

// solves rows * k = rhs, free unknowns set to zero, inconsistent rows skipped
std::vector<Rational> solve_linear(std::vector<std::vector<Rational>> rows, std::vector<Rational> rhs, int n)
{
	std::vector<int> pivot_col;
	int r = 0;
	for (int c = 0; c < n && r < int(rows.size()); ++c)
	{
		int p = -1;
		for (int i = r; i < int(rows.size()); ++i)
			if (rows[i][c] != 0)
			{
				p = i;
				break;
			}
		if (p < 0)
			continue;
		std::swap(rows[p], rows[r]);
		std::swap(rhs[p], rhs[r]);
		Rational inv = 1 / rows[r][c];
		for (auto &v : rows[r])
			v *= inv;
		rhs[r] *= inv;
		for (int i = 0; i < int(rows.size()); ++i)
			if (i != r && rows[i][c] != 0)
			{
				Rational f = rows[i][c];
				for (int j = 0; j < n; ++j)
					rows[i][j] -= f * rows[r][j];
				rhs[i] -= f * rhs[r];
			}
		pivot_col.push_back(c);
		++r;
	}
	std::vector<Rational> k(n, 0);
	for (int i = 0; i < int(pivot_col.size()); ++i)
		k[pivot_col[i]] = rhs[i];
	return k;
}

bool mentions_prefix(Monomial const &m, std::string const &prefix)
{
	for (auto const &[name, e] : m)
		if (name.rfind(prefix, 0) == 0)
			return true;
	return false;
}

} // namespace

Compute3Comparison compare_compute3(MorphismTable const &table)
{
	Compute3Comparison out;
	auto derived = criterion_rhs(table, 3, spence_kummer_coefficients()).substitute(substitute_C(table));
	out.difference = derived - printed_compute3(table);
	out.exact = out.difference.is_zero();
	std::vector<SP> ids;
	for (auto const *name : {"aL", "bL", "cL"})
	{
		auto c = theorem_claim(name);
		ids.push_back(c.lhs - c.rhs);
	}
	std::set<Monomial> monomials;
	for (auto const &p : ids)
		for (auto const &[m, c] : p.terms())
			monomials.insert(m);
	for (auto const &[m, c] : out.difference.terms())
		monomials.insert(m);
	std::vector<std::vector<Rational>> rows;
	std::vector<Rational> rhs;
	for (auto const &m : monomials)
	{
		std::vector<Rational> row;
		for (auto const &p : ids)
			row.push_back(p.coefficient(m));
		rows.push_back(row);
		rhs.push_back(out.difference.coefficient(m));
	}
	auto sol = solve_linear(rows, rhs, 3);
	out.reduced = out.difference;
	for (int j = 0; j < 3; ++j)
	{
		out.identity_multiples[j] = sol[j];
		out.reduced -= SP(sol[j]) * ids[j];
	}
	out.modulo_identities = out.reduced.is_zero();
	return out;
}

EquationCheck derive_equation(MorphismTable const &table, EquationClaim const &claim)
{
	auto const &k = vector_for(claim.id);
	int w = claim.id == "dL" ? 3 : 2;
	SP lhs;
	for (int i = 1; i <= 9; ++i)
		if (k[i - 1] != 0)
			lhs += SP(Rational(k[i - 1])) * native_integral(table, i, w);
	SP e = lhs - criterion_rhs(table, w, k).substitute(substitute_C(table));
	EquationCheck out{claim.id, SP(), {}, false};
	if (w == 2)
	{
		out.residual = e - (claim.lhs - claim.rhs);
		out.pass = out.residual.is_zero();
		return out;
	}
	std::vector<SP> ids;
	for (auto const *name : {"aL", "bL", "cL"})
	{
		auto c = theorem_claim(name);
		ids.push_back(c.lhs - c.rhs);
	}
	std::vector<SP> basis{sym("rho_x"), sym("rho_y"), sym("rho_1x"), sym("rho_1y"), sym("rho_1xy"), sym("rho_1xoy"), sym("chi"), q(1)};
	int n = int(basis.size() * ids.size());
	SP r = e - (claim.lhs - claim.rhs);
	for (size_t a = 0; a < ids.size(); ++a)
		for (size_t b = 0; b < basis.size(); ++b)
			r -= sym(fmt::format("_k{}", a * basis.size() + b)) * basis[b] * ids[a];
	// one linear equation per monomial carrying a Li2 symbol
	std::map<Monomial, std::pair<std::vector<Rational>, Rational>> eqs;
	for (auto const &[m, c] : r.terms())
	{
		Monomial rest;
		int unknown = -1;
		for (auto const &[name, e] : m)
			if (name.rfind("_k", 0) == 0)
				unknown = std::stoi(name.substr(2));
			else
				rest[name] = e;
		if (!mentions_prefix(rest, "Li2_"))
			continue;
		auto &row = eqs[rest];
		row.first.resize(n, 0);
		if (unknown >= 0)
			row.first[unknown] += c;
		else
			row.second -= c;
	}
	std::vector<std::vector<Rational>> rows;
	std::vector<Rational> rhs;
	for (auto &[m, row] : eqs)
	{
		row.first.resize(n, 0);
		rows.push_back(row.first);
		rhs.push_back(row.second);
	}
	auto sol = solve_linear(rows, rhs, n);
	SymbolMap values;
	for (int j = 0; j < n; ++j)
		values[fmt::format("_k{}", j)] = SP(sol[j]);
	out.residual = r.substitute(values);
	for (size_t a = 0; a < ids.size(); ++a)
	{
		SP p;
		for (size_t b = 0; b < basis.size(); ++b)
			p += SP(sol[a * basis.size() + b]) * basis[b];
		out.multipliers.push_back(p);
	}
	out.pass = out.residual.is_zero();
	return out;
}

EquationCheck derive_equation(MorphismTable const &table, std::string const &id)
{
	return derive_equation(table, theorem_claim(id));
}

std::vector<PerturbationResult> negative_control_sweep(MorphismTable const &table, std::string const &id)
{
	auto base = theorem_claim(id);
	int w = id == "dL" ? 3 : 2;
	std::vector<PerturbationResult> out;
	auto run = [&](std::string const &what, EquationClaim const &c) {
		out.push_back({what, !derive_equation(table, c).pass});
	};
	for (int i = 1; i <= 9; ++i)
	{
		auto c = base;
		c.lhs += sym(fmt::format("Li{}_{}", w, i));
		run(fmt::format("{} coefficient of Li{}_{} +1", id, w, i), c);
	}
	for (auto const &[m, coeff] : base.lhs.terms())
	{
		if (mentions_prefix(m, fmt::format("Li{}_", w)))
			continue;
		auto c = base;
		c.lhs += SP::monomial(m);
		run(fmt::format("{} left term {} +1", id, SP::monomial(m).str()), c);
	}
	for (auto const &[m, coeff] : base.rhs.terms())
	{
		auto c = base;
		c.rhs += SP::monomial(m);
		run(fmt::format("{} right term {} +1", id, SP::monomial(m).str()), c);
	}
	return out;
}

namespace {

bool acceptable(Rational const &v, int ell)
{
	auto d = denominator(v);
	if (ell == 0)
		return d == 1;
	return d % ell != 0;
}

Integer binomial(int n, int k)
{
	Integer r = 1;
	for (int i = 0; i < k; ++i)
		r = r * (n - i) / (i + 1);
	return r;
}

} // namespace

IntegralityResult integer_valued(SymbolPolynomial const &p, ConstraintDomain const &dom, int ell)
{
	SymbolMap shift;
	std::map<std::string, std::string> shifted_name;
	for (auto const &name : p.symbols())
	{
		auto it = dom.find(name);
		if (it == dom.end())
			throw std::invalid_argument("symbol " + name + " has no declared domain");
		if (it->second == SymbolDomain::odd_integer)
		{
			auto u = "_u_" + name;
			shift[name] = q(1) + q(2) * sym(u);
			shifted_name[u] = name;
		}
	}
	auto poly = p.substitute(shift);
	auto names = poly.symbols();
	std::vector<std::string> vars(names.begin(), names.end());
	std::vector<int> deg;
	size_t total = 1;
	for (auto const &v : vars)
	{
		deg.push_back(poly.degree_in(v));
		total *= size_t(deg.back() + 1);
	}
	// values on the box {0..deg_v}, first variable fastest
	std::vector<Rational> grid(total);
	std::vector<int> idx(vars.size(), 0);
	for (size_t n = 0; n < total; ++n)
	{
		std::map<std::string, Rational> at;
		size_t t = n;
		for (size_t v = 0; v < vars.size(); ++v)
		{
			idx[v] = int(t % size_t(deg[v] + 1));
			t /= size_t(deg[v] + 1);
			at[vars[v]] = idx[v];
		}
		grid[n] = poly.evaluate(at);
	}
	// forward differences at 0 along each axis give the binomial-basis coefficients
	size_t stride = 1;
	for (size_t v = 0; v < vars.size(); ++v)
	{
		int len = deg[v] + 1;
		for (size_t base = 0; base < total; ++base)
		{
			if ((base / stride) % size_t(len) != 0)
				continue;
			std::vector<Rational> line(len);
			for (int j = 0; j < len; ++j)
				line[j] = grid[base + size_t(j) * stride];
			for (int m = 0; m < len; ++m)
			{
				Rational c = 0;
				for (int j = 0; j <= m; ++j)
					c += Rational(((m - j) % 2 ? -1 : 1) * binomial(m, j)) * line[j];
				grid[base + size_t(m) * stride] = c;
			}
		}
		stride *= size_t(len);
	}
	IntegralityResult res;
	int best = -1;
	for (size_t n = 0; n < total; ++n)
	{
		if (acceptable(grid[n], ell))
			continue;
		size_t t = n;
		int sum = 0;
		std::map<std::string, Integer> w;
		for (size_t v = 0; v < vars.size(); ++v)
		{
			int k = int(t % size_t(deg[v] + 1));
			t /= size_t(deg[v] + 1);
			sum += k;
			auto it = shifted_name.find(vars[v]);
			if (it != shifted_name.end())
				w[it->second] = 1 + 2 * k;
			else
				w[vars[v]] = k;
		}
		if (best < 0 || sum < best)
		{
			best = sum;
			res.integral = false;
			res.witness = w;
		}
	}
	if (!res.integral)
	{
		std::map<std::string, Rational> at;
		for (auto const &name : p.symbols())
			at[name] = res.witness.count(name) ? Rational(res.witness[name]) : Rational(dom.at(name) == SymbolDomain::odd_integer ? 1 : 0);
		for (auto const &[name, v] : at)
			res.witness[name] = numerator(v);
		res.witness_value = p.evaluate(at);
	}
	return res;
}

ConstraintDomain character_domain()
{
	ConstraintDomain d;
	for (auto const *name : {"rho_y", "rho_6", "rho_1x", "rho_1xy", "rho_1z5", "ct2_10", "ct2_5", "ct2_7"})
		d[name] = SymbolDomain::integer;
	d["chi"] = SymbolDomain::odd_integer;
	return d;
}

std::vector<CharacterEquation> character_equations()
{
	auto ry = sym("rho_y"), r6 = sym("rho_6"), r1x = sym("rho_1x"), r1xy = sym("rho_1xy"), chi = sym("chi");
	auto h = (chi - q(1)) * q(1, 2);
	auto ct10 = sym("ct2_10");
	return {
	    {"a'", r6 * ry - ct10},
	    {"b'", q(1, 2) * ry * ry - q(1, 2) * ry - r1x + r1xy + h * (q(2) * r1xy - q(2) * r1x - ry)},
	    {"c'", -ct10 + r6 * ry - q(1, 2) * ry * ry + q(1, 2) * ry + h * ry},
	    {"d'", -q(2) * ry * ry * r6 + (q(1) - chi * chi) * q(1, 2) * ry + q(2, 3) * ry * ry * ry +
	               q(2) * chi * (sym("ct2_5") + sym("ct2_7")) + chi * chi * sym("rho_1z5") - q(2, 3) * ry},
	};
}

SymbolPolynomial spence_kummer_character_rhs_rearranged()
{
	auto ry = sym("rho_y"), chi = sym("chi");
	return -q(2) * ry * ry * sym("rho_6") - q(12) * sym("ct2_10") * ry + q(2) * chi * (sym("ct2_5") + sym("ct2_7")) +
	       chi * chi * sym("rho_1z5") - q(2, 3) * ry * (q(1) - ry) * (q(1) + ry);
}

std::vector<CharacterCheck> check_character_integrality()
{
	std::vector<CharacterCheck> out;
	auto dom = character_domain();
	for (auto const &e : character_equations())
		out.push_back({e.id, integer_valued(e.rhs, dom, 0)});
	out.push_back({"d' rearranged", integer_valued(spence_kummer_character_rhs_rearranged(), dom, 0)});
	return out;
}

std::vector<Table12Row> parse_table12(std::string const &text, std::string const &name)
{
	std::vector<Table12Row> rows;
	std::istringstream in(text);
	std::string line;
	int no = 0;
	while (std::getline(in, line))
	{
		++no;
		if (auto h = line.find('#'); h != std::string::npos)
			line = line.substr(0, h);
		std::istringstream ls(line);
		std::string key;
		if (!(ls >> key) || key == "table" || key == "basis")
			continue;
		if (key != "row")
			throw ParseError(name, no, "unrecognised line");
		std::vector<std::string> parts;
		std::string part;
		std::istringstream ps(line);
		while (std::getline(ps, part, '|'))
			parts.push_back(part);
		if (parts.size() != 5)
			throw ParseError(name, no, "row needs four cells");
		Table12Row r;
		try
		{
			r.row = std::stoi(parts[0].substr(parts[0].find("row") + 3));
			for (int c = 0; c < 4; ++c)
				r.cells[c] = parse_symbol_polynomial(parts[c + 1]);
		}
		catch (std::exception const &e)
		{
			throw ParseError(name, no, e.what());
		}
		rows.push_back(r);
	}
	return rows;
}

std::vector<Table12Row> load_table12(std::string const &path)
{
	std::ifstream in(path);
	if (!in)
		throw std::runtime_error("cannot open " + path);
	std::stringstream ss;
	ss << in.rdbuf();
	return parse_table12(ss.str(), path);
}

std::vector<Table12Row> regenerate_table12(MorphismTable const &table)
{
	std::vector<Table12Row> rows;
	for (int i = 1; i <= 9; ++i)
	{
		auto c = lie_coordinates(pushforward_log(table, i, 3));
		rows.push_back({i, {c[0], c[1], c[2], c[3]}});
	}
	return rows;
}

} // namespace polyfe
