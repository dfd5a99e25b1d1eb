#include "polyfe/galois.h"
#include "support/generators.h"
#include "support/integrality_oracle.h"
#include <gtest/gtest.h>
#include <random>

using namespace polyfe;
using polyfe::testing::data;

namespace {

MorphismTable const &table6()
{
	static auto const t = load_morphisms(data("table6.morphisms"));
	return t;
}

SymbolPolynomial P(std::string const &text)
{
	return parse_symbol_polynomial(text);
}

} // namespace

namespace polyfe {

void PrintTo(SymbolPolynomial const &p, std::ostream *os)
{
	*os << p.str();
}

} // namespace polyfe

TEST(SymbolPolynomial, ArithmeticAndParsing)
{
	auto p = P("1/2*rho_y^2 - C2 + 3");
	EXPECT_EQ(P(p.str()), p);
	EXPECT_EQ(p.total_degree(), 2);
	EXPECT_EQ(p.degree_in("rho_y"), 2);
	EXPECT_EQ(p.coefficient_of("rho_y", 2), SymbolPolynomial(make_rational(1, 2)));
	EXPECT_EQ((P("a + b") * P("a - b")), P("a^2 - b^2"));
	EXPECT_EQ(pow(P("a + 1"), 3), P("a^3 + 3*a^2 + 3*a + 1"));
	EXPECT_EQ(P("a*b + a").substitute({{"a", P("b - 1")}}), P("b^2 - 1"));
	EXPECT_EQ(P("2*a*b - 1/3").evaluate({{"a", 1}, {"b", make_rational(1, 2)}}), make_rational(2, 3));
	EXPECT_TRUE((p - p).is_zero());
	EXPECT_THROW(P("a + (b"), std::exception);
}

TEST(GenericAssociator, Shape)
{
	auto g = generic_associator_log(3);
	auto d1 = lyndon_decompose(g, 1);
	ASSERT_EQ(d1.size(), 6u);
	for (int j = 0; j < 6; ++j)
		EXPECT_EQ(d1[j], sym("C" + std::to_string(j + 1)));
	int brackets = 0;
	for (auto const &c : lyndon_decompose(g, 2))
		brackets += !c.is_zero();
	EXPECT_EQ(brackets, 7);
	EXPECT_TRUE(g.component(3).is_zero());
	auto g1 = generic_associator_log(1);
	EXPECT_EQ(g1.truncation(), 1);
	EXPECT_EQ(g1, g.truncate(1));
	EXPECT_TRUE(is_lie(g));
}

TEST(Pushforward, TableRowsFromTheSpecification)
{
	auto const &t = table6();
	auto r2 = lie_coordinates(pushforward_log(t, 2));
	EXPECT_EQ(r2[0], P("C1 + C2"));
	EXPECT_EQ(r2[1], P("C6"));
	EXPECT_EQ(r2[2], P("C10"));
	auto r3 = lie_coordinates(pushforward_log(t, 3));
	EXPECT_EQ(r3[2], P("1/2*C2 - C8"));
	auto r9 = lie_coordinates(pushforward_log(t, 9));
	EXPECT_EQ(r9[0], P("C2"));
	EXPECT_EQ(r9[1], P("C5"));
	EXPECT_EQ(r9[2], P("C9"));
	for (int i = 1; i <= 9; ++i)
		EXPECT_TRUE(is_lie(pushforward_log(t, i)));
}

TEST(Pushforward, DegreeThreeCoordinatesOfARow)
{
	// hand expansion of row 8: X_j -> X, Y, 0, ... with images l0, l1 only in B1, B4
	auto r8 = lie_coordinates(pushforward_log(table6(), 8));
	EXPECT_EQ(r8[0], P("C1"));
	EXPECT_EQ(r8[1], P("C4"));
	EXPECT_EQ(r8[2], P("C7"));
	EXPECT_TRUE(r8[3].is_zero());
	EXPECT_TRUE(r8[4].is_zero());
}

TEST(Chain, Examples)
{
	auto const &t = table6();
	auto c5 = lie_coordinates(chain_log(t, 5));
	EXPECT_EQ(c5[0], P("C1 - C4 + C5 + 1/2*chi - 1/2"));
	EXPECT_EQ(c5[1], P("-C4 + C6"));
	auto c8 = lie_coordinates(chain_log(t, 8));
	EXPECT_EQ(c8[0], P("C1"));
	EXPECT_EQ(c8[1], P("C4"));
	EXPECT_EQ(c8[2], P("C7"));
	auto c6 = lie_coordinates(chain_log(t, 6));
	auto p6 = lie_coordinates(pushforward_log(t, 6));
	EXPECT_EQ(c6[0], p6[0]);
	EXPECT_EQ(c6[1], p6[1]);
	EXPECT_EQ(c6[2], p6[2] + sym("Z2"));
}

TEST(Chain, ConnectingPathLogs)
{
	EXPECT_TRUE(delta_log(1).is_zero());
	auto d5 = lie_coordinates(delta_log(5));
	EXPECT_EQ(d5[0], P("1/2*chi - 1/2"));
	EXPECT_TRUE(d5[1].is_zero());
	auto d6 = lie_coordinates(delta_log(6));
	EXPECT_EQ(d6[2], P("Z2"));
	EXPECT_EQ(d6[3], P("Z3"));
	EXPECT_EQ(d6[4], P("Z3"));
	EXPECT_THROW(delta_log(10), std::exception);
}

// the printed Kummer cocycle relations along each gamma_i
TEST(Chain, CocycleLedgerMatchesPublishedRelations)
{
	auto const &t = table6();
	std::map<int, std::pair<std::string, std::string>> printed{
	    {1, {"rho_x + 2*rho_1y - rho_y - 2*rho_1x", "rho_1xoy + rho_1xy - 2*rho_1x"}},
	    {2, {"rho_x + rho_y", ""}},
	    {3, {"rho_x - rho_y", ""}},
	    {4, {"rho_x + rho_1y - rho_y - rho_1x", "rho_1xoy - rho_1x"}},
	    {5, {"rho_x + rho_1y - rho_1x + 1/2*chi - 1/2", "rho_1xy - rho_1x"}},
	    {6, {"rho_1y - rho_1x", ""}},
	    {7, {"rho_1y - rho_y - rho_1x + 1/2*chi - 1/2", "rho_1xy - rho_y - rho_1x"}},
	    {8, {"rho_x", "rho_1x"}},
	    {9, {"rho_y", "rho_1y"}},
	};
	for (auto const &[i, rows] : printed)
	{
		EXPECT_EQ(rho_of(t, i), P(rows.first)) << "i=" << i;
		if (!rows.second.empty())
			EXPECT_EQ(rho_prime_of(t, i), P(rows.second)) << "i=" << i;
	}
}

TEST(Dictionary, PrintedEntries)
{
	auto d = printed_dictionary(table6());
	EXPECT_EQ(d.at("C6"), P("rho_1xy"));
	EXPECT_EQ(d.at("C8"), P("1/2*rho_y") - ell_i2(table6(), 3));
	EXPECT_EQ(d.at("C13"), P("1/2*rho_1x - rho_1xy") + ell_i2(table6(), 8) + ell_i2(table6(), 5));
	EXPECT_FALSE(d.count("C12"));
	EXPECT_FALSE(substitute_C(table6()).count("C12"));
}

TEST(Dictionary, DerivedEntriesDifferOnlyInC11AndC13)
{
	auto printed = printed_dictionary(table6());
	auto derived = substitute_C(table6());
	for (auto const &[k, v] : printed)
		if (k != "C11" && k != "C13")
			EXPECT_EQ(derived.at(k), v) << k;
	EXPECT_EQ(derived.at("C11") - printed.at("C11"), P("Z2"));
	EXPECT_EQ(derived.at("C13") - printed.at("C13"), P("1/4*chi*rho_1x - 1/4*chi*rho_1xy - 1/4*rho_1x + 1/4*rho_1xy"));
}

TEST(Criterion, SchaefferVanishesBeforeSubstitution)
{
	EXPECT_TRUE(criterion_rhs(table6(), 2, schaeffer_coefficients()).is_zero());
}

TEST(Criterion, Degree2PrintedValues)
{
	auto const &t = table6();
	auto d = substitute_C(t);
	for (char w : {'a', 'b', 'c'})
	{
		auto v = criterion_rhs(t, 2, coefficients_by_name(std::string(1, w))).substitute(d);
		EXPECT_EQ(v, printed_compute1(w)) << w;
	}
}

TEST(Criterion, Degree3PrintedClosedForm)
{
	auto c = compare_compute3(table6());
	EXPECT_TRUE(c.exact) << "difference " << c.difference.str();
}

TEST(Criterion, Degree3DifferenceIsTheHillIdentity)
{
	auto c = compare_compute3(table6());
	EXPECT_TRUE(c.modulo_identities);
	EXPECT_TRUE(c.reduced.is_zero());
	EXPECT_EQ(c.identity_multiples, (std::array<Rational, 3>{0, 0, 1}));
	auto hill = theorem_claim("cL");
	EXPECT_EQ(c.difference, hill.lhs - hill.rhs);
}

class Derivation : public ::testing::TestWithParam<std::string>
{
};

TEST_P(Derivation, ResidualIsZero)
{
	auto r = derive_equation(table6(), GetParam());
	EXPECT_TRUE(r.pass);
	EXPECT_TRUE(r.residual.is_zero()) << r.residual.str();
}

TEST_P(Derivation, EveryPerturbationIsDetected)
{
	auto sweep = negative_control_sweep(table6(), GetParam());
	EXPECT_GE(sweep.size(), 9u);
	for (auto const &p : sweep)
		EXPECT_TRUE(p.detected) << p.description;
}

INSTANTIATE_TEST_SUITE_P(Identities, Derivation, ::testing::Values("aL", "bL", "cL", "dL"));

TEST(Derivation, SpenceKummerMultipliersEliminateTheDilogarithms)
{
	auto r = derive_equation(table6(), "dL");
	ASSERT_EQ(r.multipliers.size(), 3u);
	// substituting the multipliers back must reproduce the derivation exactly
	auto claim = theorem_claim("dL");
	auto r2 = derive_equation(table6(), claim);
	EXPECT_TRUE(r2.residual.is_zero());
	for (auto const &m : r.multipliers)
		EXPECT_LE(m.total_degree(), 1);
}

TEST(Derivation, PerturbedZeta3IsNamed)
{
	auto claim = theorem_claim("dL");
	claim.lhs += sym("Z3");
	auto r = derive_equation(table6(), claim);
	EXPECT_FALSE(r.pass);
	EXPECT_TRUE(r.residual.mentions("Z3")) << r.residual.str();
	EXPECT_THROW(theorem_claim("eL"), std::exception);
}

TEST(Integrality, Examples)
{
	ConstraintDomain dom{{"rho", SymbolDomain::integer}};
	EXPECT_TRUE(integer_valued(P("1/2*rho^2 + 1/2*rho"), dom).integral);
	auto r = integer_valued(P("1/2*rho^2"), dom);
	EXPECT_FALSE(r.integral);
	EXPECT_EQ(r.witness.at("rho"), 1);
	EXPECT_EQ(r.witness_value, make_rational(1, 2));
	EXPECT_TRUE(integer_valued(P("2/3*rho - 2/3*rho^3"), dom).integral);
	EXPECT_TRUE(integer_valued(P("1/3*rho"), dom, 2).integral);
	EXPECT_FALSE(integer_valued(P("1/3*rho"), dom, 3).integral);
}

TEST(Integrality, OddCharacter)
{
	ConstraintDomain dom{{"chi", SymbolDomain::odd_integer}};
	EXPECT_TRUE(integer_valued(P("1/2*chi - 1/2"), dom).integral);
	EXPECT_TRUE(integer_valued(P("1/8*chi^2 - 1/8"), dom).integral);
	auto r = integer_valued(P("1/4*chi - 1/4"), dom);
	EXPECT_FALSE(r.integral);
	EXPECT_EQ(r.witness.at("chi") % 2 != 0, true);
}

TEST(Integrality, AgreesWithGridOracle)
{
	auto g = polyfe::testing::compare_with_grid(51, 300);
	EXPECT_EQ(g.disagreements, 0) << g.first_disagreement;
	EXPECT_EQ(g.bad_witnesses, 0);
	EXPECT_GE(g.integral, 30);
	EXPECT_GE(g.polynomials - g.integral, 30);
}

TEST(Integrality, CharacterEquations)
{
	auto checks = check_character_integrality();
	ASSERT_EQ(checks.size(), 5u);
	for (auto const &c : checks)
		EXPECT_TRUE(c.result.integral) << c.id;
}

TEST(Integrality, CharacterNegativeControl)
{
	auto eqs = character_equations();
	auto d = eqs.at(3);
	auto bad = d.rhs - P("1/3*rho_y^3");
	auto r = integer_valued(bad, character_domain());
	EXPECT_FALSE(r.integral);
	EXPECT_EQ(denominator(r.witness_value), 3);
	// the rearranged form hides 2/3 inside rho (1 - rho)(1 + rho), which stays integral when halved
	auto rearranged = spence_kummer_character_rhs_rearranged();
	EXPECT_TRUE(integer_valued(rearranged, character_domain()).integral);
}

TEST(Table12, SpecifiedRowsMatch)
{
	auto golden = load_table12(data("table12.golden"));
	auto computed = regenerate_table12(table6());
	ASSERT_EQ(golden.size(), 9u);
	ASSERT_EQ(computed.size(), 9u);
	for (int row : {2, 3, 9})
		for (int c = 0; c < 4; ++c)
			EXPECT_EQ(computed[row - 1].cells[c], golden[row - 1].cells[c]) << "row " << row << " column " << c;
}

// every row of the regenerated table equals the printed one
TEST(Table12, AllRowsMatchGolden)
{
	auto golden = load_table12(data("table12.golden"));
	auto computed = regenerate_table12(table6());
	for (size_t r = 0; r < golden.size(); ++r)
		for (int c = 0; c < 4; ++c)
			EXPECT_EQ(computed[r].cells[c], golden[r].cells[c]) << "row " << golden[r].row << " column " << c;
}

TEST(Table12, ParseErrors)
{
	EXPECT_THROW(parse_table12("row 1 : C1 | C2\n"), std::exception);
	EXPECT_THROW(load_table12(data("missing.golden")), std::exception);
}
