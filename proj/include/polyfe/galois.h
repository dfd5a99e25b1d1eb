#pragma once

#include "polyfe/series.h"
#include "polyfe/symbolic.h"
#include "polyfe/units.h"
#include "polyfe/words.h"
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace polyfe {

using SymSeries = Series<SymbolPolynomial>;
using SymbolMap = std::map<std::string, SymbolPolynomial>;

SymbolPolynomial sym(std::string const &name);

// Σ C_j X_j + C7[X1,X4] + C8[X2,X3] + C9[X2,X5] + C10[X2,X6] + C11[X3,X5]
// + C12[X3,X6] + C13[X5,X6]; the brackets only for N >= 2
SymSeries generic_associator_log(int N = 3);

// X_j -> log of the Magnus image of B_j under row i, applied to the generic log
SymSeries pushforward_log(MorphismTable const &table, int i, int N = 3);

// log of the inverse associator of the connecting path delta_i
SymSeries delta_log(int i, int N = 3);

// log of the inverse associator of gamma_i = delta_i . f_i(gamma_0):
// bch(delta_log, pushforward_log)
SymSeries chain_log(MorphismTable const &table, int i, int N = 3);

// coefficients of X, Y, [X,Y], [X,[X,Y]], [Y,[X,Y]]
std::array<SymbolPolynomial, 5> lie_coordinates(SymSeries const &v);

// C1..C6 in terms of the Kummer cocycle symbols
SymbolMap base_rho_map();

// rho_{f_i} and rho_{1-f_i} along gamma_i in cocycle symbols
SymbolPolynomial rho_of(MorphismTable const &table, int i);
SymbolPolynomial rho_prime_of(MorphismTable const &table, int i);

// ℓi_k(f_i; gamma_i) through the Li^ℓ symbols and the cocycles
SymbolPolynomial ell_i2(MorphismTable const &table, int i);
SymbolPolynomial ell_i3(MorphismTable const &table, int i);

// C-dictionary as derived from the chain coefficients (C12 absent)
SymbolMap substitute_C(MorphismTable const &table);
// the dictionary with the values as printed
SymbolMap printed_dictionary(MorphismTable const &table);

// Σ c_i φ_k(pushforward_log(i)) in the C symbols
SymbolPolynomial criterion_rhs(MorphismTable const &table, int k, CoefficientVector const &c);

// printed right-hand sides of the criterion identity after substitution
SymbolPolynomial printed_compute1(char which);
SymbolPolynomial printed_compute3(MorphismTable const &table);

// difference between the substituted degree-3 criterion and the printed closed form,
// and its reduction by rational multiples of the (a), (b), (c) identities
struct Compute3Comparison
{
	SymbolPolynomial difference;
	std::array<Rational, 3> identity_multiples{};
	SymbolPolynomial reduced;
	bool exact = false;
	bool modulo_identities = false;
};

Compute3Comparison compare_compute3(MorphismTable const &table);

struct EquationClaim
{
	std::string id;
	// Σ k_i Li_k(f_i) (+ 2 Z3 for dL) and the claimed right side
	SymbolPolynomial lhs;
	SymbolPolynomial rhs;
};

EquationClaim theorem_claim(std::string const &id);

struct EquationCheck
{
	std::string id;
	SymbolPolynomial residual;
	// multipliers of the (a), (b), (c) identities used for the Li2 elimination
	std::vector<SymbolPolynomial> multipliers;
	bool pass = false;
};

EquationCheck derive_equation(MorphismTable const &table, std::string const &id);
EquationCheck derive_equation(MorphismTable const &table, EquationClaim const &claim);

struct PerturbationResult
{
	std::string description;
	bool detected;
};

// +1 on each claimed coefficient and on each vector entry, one at a time
std::vector<PerturbationResult> negative_control_sweep(MorphismTable const &table, std::string const &id);

enum class SymbolDomain
{
	integer,
	odd_integer,
};

using ConstraintDomain = std::map<std::string, SymbolDomain>;

struct IntegralityResult
{
	bool integral = true;
	// assignment of the original symbols where the value is not integral
	std::map<std::string, Integer> witness;
	Rational witness_value;
};

// ell = 0 means integrality at every prime
IntegralityResult integer_valued(SymbolPolynomial const &p, ConstraintDomain const &dom, int ell = 0);

struct CharacterEquation
{
	std::string id;
	SymbolPolynomial rhs;
};

std::vector<CharacterEquation> character_equations();
ConstraintDomain character_domain();
SymbolPolynomial spence_kummer_character_rhs_rearranged();

struct CharacterCheck
{
	std::string id;
	IntegralityResult result;
};

std::vector<CharacterCheck> check_character_integrality();

struct Table12Row
{
	int row;
	std::array<SymbolPolynomial, 4> cells;
};

std::vector<Table12Row> load_table12(std::string const &path);
std::vector<Table12Row> parse_table12(std::string const &text, std::string const &name = "<string>");
std::vector<Table12Row> regenerate_table12(MorphismTable const &table);

} // namespace polyfe
