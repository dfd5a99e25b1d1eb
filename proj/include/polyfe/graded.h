#pragma once

#include "polyfe/series.h"
#include "polyfe/units.h"
#include "polyfe/words.h"
#include <memory>
#include <string>
#include <vector>

namespace polyfe {

// nested bracket of generators B1..B6; generator 0 marks "Bj", every j
struct BracketExpr
{
	int generator = 0;
	std::shared_ptr<BracketExpr const> left;
	std::shared_ptr<BracketExpr const> right;

	bool is_leaf() const { return !left; }
	int depth() const;
	bool has_wildcard() const;
	// the wildcard replaced by generator j
	BracketExpr bind(int j) const;
	std::string str() const;
};

BracketExpr parse_bracket(std::string const &text);

std::vector<BracketExpr> const &gr2_basis();
std::vector<BracketExpr> const &gr3_basis();

std::vector<std::string> const &lie_letters();

// degree-one part of the log of the Magnus image of B_j under row i
QSeries degree1_symbol(MorphismTable const &table, int i, int j, int N = 3);

// bracket evaluated on degree-one symbols; homogeneous of degree depth(b)
QSeries induced_bracket_image(MorphismTable const &table, int i, BracketExpr const &b, int N = 3);

struct CriterionEntry
{
	BracketExpr bracket;
	Integer value;
};

// sum over i of c_i phi_k(image) for each basis bracket; for k = 3 the
// family [Bj,[B3,B6]], j = 1..6, is appended
std::vector<CriterionEntry> criterion_sum(MorphismTable const &table, int k, CoefficientVector const &c);

// "0", "-2" for degree 2; "P+Q", "-2P" for degree 3
std::string render_cell(QSeries const &v, int degree);

struct GradedTable
{
	int number = 0;
	int degree = 0;
	std::vector<std::string> columns;
	std::vector<int> row_labels;
	std::vector<std::vector<std::string>> cells;
};

GradedTable parse_graded_table(std::string const &text, std::string const &name = "<string>");
GradedTable load_graded_table(std::string const &path);
std::string format_graded_table(GradedTable const &t);

// row/column layout of the printed homotopy tables 7..11
GradedTable table_layout(int which);
GradedTable regenerate_table(MorphismTable const &table, int which);

struct CellDiff
{
	int row;
	std::string column;
	std::string expected;
	std::string actual;
};

// structural mismatch (rows, columns) is reported as a diff with empty column
std::vector<CellDiff> diff_tables(GradedTable const &expected, GradedTable const &actual);

} // namespace polyfe
