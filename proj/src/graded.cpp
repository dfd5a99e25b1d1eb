#include "polyfe/graded.h"
#include <algorithm>
#include <cctype>
#include <fmt/format.h>
#include <fstream>
#include <sstream>

namespace polyfe {

int BracketExpr::depth() const
{
	return is_leaf() ? 1 : left->depth() + right->depth();
}

bool BracketExpr::has_wildcard() const
{
	return is_leaf() ? generator == 0 : left->has_wildcard() || right->has_wildcard();
}

BracketExpr BracketExpr::bind(int j) const
{
	if (is_leaf())
		return {generator == 0 ? j : generator, nullptr, nullptr};
	return {0, std::make_shared<BracketExpr const>(left->bind(j)),
	        std::make_shared<BracketExpr const>(right->bind(j))};
}

std::string BracketExpr::str() const
{
	if (is_leaf())
		return generator == 0 ? "Bj" : fmt::format("B{}", generator);
	return "[" + left->str() + "," + right->str() + "]";
}

namespace {

BracketExpr parse_at(std::string const &s, size_t &i)
{
	auto fail = [&](std::string const &what) {
		throw std::invalid_argument(fmt::format("bracket '{}': {} at {}", s, what, i));
	};
	if (i >= s.size())
		fail("unexpected end");
	if (s[i] == '[')
	{
		++i;
		auto l = parse_at(s, i);
		if (i >= s.size() || s[i] != ',')
			fail("expected ','");
		++i;
		auto r = parse_at(s, i);
		if (i >= s.size() || s[i] != ']')
			fail("expected ']'");
		++i;
		return {0, std::make_shared<BracketExpr const>(l), std::make_shared<BracketExpr const>(r)};
	}
	if (s[i] != 'B')
		fail("expected generator");
	++i;
	if (i < s.size() && s[i] == 'j')
	{
		++i;
		return {0, nullptr, nullptr};
	}
	size_t j = i;
	while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
		++j;
	if (j == i)
		fail("expected generator index");
	int g = std::stoi(s.substr(i, j - i));
	if (g < 1 || g > 6)
		fail("generator outside B1..B6");
	i = j;
	return {g, nullptr, nullptr};
}

} // namespace

BracketExpr parse_bracket(std::string const &text)
{
	std::string s;
	for (char c : text)
		if (!std::isspace(static_cast<unsigned char>(c)))
			s += c;
	size_t i = 0;
	auto b = parse_at(s, i);
	if (i != s.size())
		throw std::invalid_argument("bracket '" + text + "': trailing text");
	return b;
}

namespace {

std::vector<BracketExpr> parse_all(std::vector<std::string> const &texts)
{
	std::vector<BracketExpr> r;
	for (auto const &t : texts)
		r.push_back(parse_bracket(t));
	return r;
}

} // namespace

std::vector<BracketExpr> const &gr2_basis()
{
	static auto const basis = parse_all({"[B1,B4]", "[B2,B3]", "[B2,B5]", "[B2,B6]", "[B3,B5]", "[B3,B6]", "[B5,B6]"});
	return basis;
}

std::vector<BracketExpr> const &gr3_basis()
{
	static auto const basis = parse_all({
	    "[B1,[B1,B4]]", "[B4,[B1,B4]]", "[B2,[B2,B3]]", "[B3,[B2,B3]]", "[B2,[B2,B5]]", "[B5,[B2,B5]]",
	    "[B2,[B2,B6]]", "[B6,[B2,B6]]", "[B3,[B3,B5]]", "[B5,[B3,B5]]", "[B3,[B3,B6]]", "[B6,[B3,B6]]",
	    "[B5,[B5,B6]]", "[B6,[B5,B6]]", "[B2,[B3,B5]]", "[B3,[B5,B2]]", "[B2,[B3,B6]]", "[B3,[B6,B2]]",
	    "[B2,[B5,B6]]", "[B5,[B6,B2]]", "[B3,[B5,B6]]", "[B5,[B6,B3]]",
	});
	return basis;
}

std::vector<std::string> const &lie_letters()
{
	static std::vector<std::string> const letters{"X", "Y"};
	return letters;
}

namespace {

GroupMorphism const &row(MorphismTable const &table, int i)
{
	if (i < 1 || i > int(table.morphisms.size()))
		throw std::out_of_range(fmt::format("morphism row {} out of range", i));
	return table.morphisms[i - 1];
}

} // namespace

QSeries degree1_symbol(MorphismTable const &table, int i, int j, int N)
{
	auto const &m = row(table, i);
	if (j < 1 || j > m.source->size())
		throw std::out_of_range(fmt::format("generator B{} out of range", j));
	auto ab = abelianize(m.images[j - 1]);
	QSeries r(lie_letters(), N);
	for (int k = 0; k < int(ab.size()) && k < 2; ++k)
		r.add(LetterWord(1, char(k)), Rational(ab[k]));
	return r;
}

QSeries induced_bracket_image(MorphismTable const &table, int i, BracketExpr const &b, int N)
{
	if (b.is_leaf())
	{
		if (b.generator == 0)
			throw std::invalid_argument("unbound Bj in bracket");
		return degree1_symbol(table, i, b.generator, N);
	}
	return bracket(induced_bracket_image(table, i, *b.left, N), induced_bracket_image(table, i, *b.right, N));
}

namespace {

Integer as_integer(Rational const &q)
{
	if (!is_integral(q))
		throw std::logic_error("nonintegral graded coefficient " + to_string(q));
	return numerator(q);
}

} // namespace

std::vector<CriterionEntry> criterion_sum(MorphismTable const &table, int k, CoefficientVector const &c)
{
	std::vector<BracketExpr> brackets;
	if (k == 2)
		brackets = gr2_basis();
	else if (k == 3)
	{
		brackets = gr3_basis();
		auto family = parse_bracket("[Bj,[B3,B6]]");
		for (int j = 1; j <= 6; ++j)
			brackets.push_back(family.bind(j));
	}
	else
		throw std::invalid_argument("criterion degree must be 2 or 3");
	std::vector<CriterionEntry> out;
	for (auto const &b : brackets)
	{
		Integer s = 0;
		for (int i = 1; i <= 9; ++i)
			if (c[i - 1] != 0)
				s += c[i - 1] * as_integer(phi(induced_bracket_image(table, i, b, k), k));
		out.push_back({b, s});
	}
	return out;
}

std::string render_cell(QSeries const &v, int degree)
{
	auto coeffs = lyndon_decompose(v, degree);
	if (degree == 2)
		return as_integer(coeffs.at(0)).str();
	if (degree != 3)
		throw std::invalid_argument("cells are rendered in degree 2 or 3");
	std::string r;
	char const *names[] = {"P", "Q"};
	for (int k = 0; k < 2; ++k)
	{
		auto a = as_integer(coeffs.at(k));
		if (a == 0)
			continue;
		if (a < 0)
			r += "-";
		else if (!r.empty())
			r += "+";
		Integer m = a < 0 ? Integer(-a) : a;
		if (m != 1)
			r += m.str();
		r += names[k];
	}
	return r.empty() ? "0" : r;
}

GradedTable parse_graded_table(std::string const &text, std::string const &name)
{
	GradedTable t;
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
		if (!(ls >> key))
			continue;
		std::vector<std::string> rest;
		for (std::string tok; ls >> tok;)
			rest.push_back(tok);
		if (key == "table" && rest.size() == 1)
			t.number = std::stoi(rest[0]);
		else if (key == "degree" && rest.size() == 1)
			t.degree = std::stoi(rest[0]);
		else if (key == "columns")
			t.columns = rest;
		else if (key == "row" && rest.size() >= 2 && rest[1] == ":")
		{
			if (rest.size() - 2 != t.columns.size())
				throw ParseError(name, no, "row width does not match columns");
			t.row_labels.push_back(std::stoi(rest[0]));
			t.cells.emplace_back(rest.begin() + 2, rest.end());
		}
		else
			throw ParseError(name, no, "unrecognised line");
	}
	if (t.number == 0 || (t.degree != 2 && t.degree != 3) || t.columns.empty())
		throw ParseError(name, no, "table, degree and columns lines are required");
	return t;
}

GradedTable load_graded_table(std::string const &path)
{
	std::ifstream in(path);
	if (!in)
		throw std::runtime_error("cannot open " + path);
	std::stringstream ss;
	ss << in.rdbuf();
	return parse_graded_table(ss.str(), path);
}

std::string format_graded_table(GradedTable const &t)
{
	std::string r = fmt::format("table {}\ndegree {}\ncolumns", t.number, t.degree);
	for (auto const &c : t.columns)
		r += " " + c;
	r += "\n";
	for (size_t i = 0; i < t.row_labels.size(); ++i)
	{
		r += fmt::format("row {} :", t.row_labels[i]);
		for (auto const &c : t.cells[i])
			r += " " + c;
		r += "\n";
	}
	return r;
}

GradedTable table_layout(int which)
{
	GradedTable t;
	t.number = which;
	auto names = [](std::vector<BracketExpr> const &bs) {
		std::vector<std::string> r;
		for (auto const &b : bs)
			r.push_back(b.str());
		return r;
	};
	switch (which)
	{
	case 7:
		t.row_labels = {4, 9, 8, 3, 6};
		break;
	case 8:
		t.row_labels = {1, 5, 7, 4, 6};
		break;
	case 9:
		t.row_labels = {7, 2, 8, 9, 5};
		break;
	case 10:
	case 11:
		t.row_labels = {1, 2, 3, 4, 5, 6, 7, 8, 9};
		break;
	default:
		throw std::invalid_argument(fmt::format("no homotopy table {}", which));
	}
	if (which <= 9)
	{
		t.degree = 2;
		t.columns = names(gr2_basis());
	}
	else
	{
		t.degree = 3;
		if (which == 10)
			t.columns = {"[B1,[B1,B4]]", "[B4,[B1,B4]]", "[B2,[B2,B3]]", "[B3,[B2,B3]]", "[B2,[B2,B5]]",
			             "[B5,[B2,B5]]", "[B2,[B2,B6]]", "[B6,[B2,B6]]", "[B3,[B3,B5]]"};
		else
			t.columns = {"[B5,[B3,B5]]", "[B3,[B5,B6]]", "[B2,[B5,B6]]", "[Bj,[B3,B6]]",
			             "[B5,[B5,B6]]", "[B6,[B5,B6]]", "[B2,[B3,B5]]", "[B5,[B6,B3]]",
			             "[B3,[B5,B2]]", "[B5,[B6,B2]]", "[B3,[B6,B2]]"};
	}
	return t;
}

GradedTable regenerate_table(MorphismTable const &table, int which)
{
	auto t = table_layout(which);
	for (int i : t.row_labels)
	{
		std::vector<std::string> cells;
		for (auto const &col : t.columns)
		{
			auto b = parse_bracket(col);
			if (!b.has_wildcard())
			{
				cells.push_back(render_cell(induced_bracket_image(table, i, b, t.degree), t.degree));
				continue;
			}
			std::vector<std::string> values;
			for (int j = 1; j <= 6; ++j)
				values.push_back(render_cell(induced_bracket_image(table, i, b.bind(j), t.degree), t.degree));
			bool same = std::all_of(values.begin(), values.end(), [&](auto const &v) { return v == values[0]; });
			if (same)
				cells.push_back(values[0]);
			else
			{
				std::string joined;
				for (auto const &v : values)
					joined += (joined.empty() ? "" : "/") + v;
				cells.push_back(joined);
			}
		}
		t.cells.push_back(cells);
	}
	return t;
}

std::vector<CellDiff> diff_tables(GradedTable const &expected, GradedTable const &actual)
{
	std::vector<CellDiff> out;
	if (expected.columns != actual.columns || expected.row_labels != actual.row_labels ||
	    expected.degree != actual.degree)
	{
		out.push_back({0, "", "layout of table " + std::to_string(expected.number),
		               "layout of table " + std::to_string(actual.number)});
		return out;
	}
	for (size_t r = 0; r < expected.row_labels.size(); ++r)
		for (size_t c = 0; c < expected.columns.size(); ++c)
			if (expected.cells[r][c] != actual.cells[r][c])
				out.push_back({expected.row_labels[r], expected.columns[c], expected.cells[r][c], actual.cells[r][c]});
	return out;
}

} // namespace polyfe
