#include "polyfe/report.h"
#include "polyfe/galois.h"
#include "polyfe/graded.h"
#include "polyfe/kz.h"
#include "polyfe/units.h"
#include "polyfe/words.h"
#include <boost/math/special_functions/zeta.hpp>
#include <boost/version.hpp>
#include <chrono>
#include <fmt/format.h>
#include <functional>
#include <numbers>

namespace polyfe {

std::string status_name(Status s)
{
	switch (s)
	{
	case Status::pass:
		return "pass";
	case Status::fail:
		return "fail";
	default:
		return "skip";
	}
}

bool VerificationReport::pass() const
{
	for (auto const &c : checks)
		if (c.status == Status::fail)
			return false;
	return true;
}

int exit_status(VerificationReport const &r)
{
	return r.pass() ? 0 : 1;
}

std::vector<std::string> const &suite_names()
{
	static std::vector<std::string> const names{"relations", "homotopy", "tensor", "complex", "galois", "integrality", "tables", "all"};
	return names;
}

namespace {

std::string sci(double v)
{
	return fmt::format("{:.3e}", v);
}

Status verdict(bool ok)
{
	return ok ? Status::pass : Status::fail;
}

class SuiteRunner
{
	Config const &config_;
	VerificationReport &report_;
	std::optional<MorphismTable> table_;

  public:
	SuiteRunner(Config const &c, VerificationReport &r) : config_(c), report_(r) {}

	MorphismTable const &table()
	{
		if (!table_)
			table_ = load_morphisms(data_path(config_, "table6.morphisms"));
		return *table_;
	}

	void timed(std::function<Check()> const &f)
	{
		auto t0 = std::chrono::steady_clock::now();
		Check c;
		try
		{
			c = f();
		}
		catch (std::exception const &e)
		{
			c.status = Status::fail;
			c.detail = std::string("error: ") + e.what();
		}
		c.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
		report_.checks.push_back(c);
	}

	void add(Check c) { report_.checks.push_back(std::move(c)); }

	void relations()
	{
		auto p = load_presentation(data_path(config_, "non_fano.presentation"));
		auto const &t = table();
		std::map<std::string, std::vector<std::string>> failures;
		std::vector<std::string> order;
		auto t0 = std::chrono::steady_clock::now();
		for (size_t i = 0; i < t.morphisms.size(); ++i)
			for (auto const &r : verify_relations(p, t.morphisms[i]))
			{
				if (!failures.count(r.relator))
				{
					failures[r.relator];
					order.push_back(r.relator);
				}
				if (!r.pass)
					failures[r.relator].push_back(fmt::format("i={}: {}", i + 1, r.image.str()));
			}
		double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
		for (auto const &label : order)
		{
			auto const &f = failures[label];
			Check c{"relations." + label, verdict(f.empty()), fmt::format("{}", f.size()), std::nullopt, ms / order.size(), ""};
			for (size_t k = 0; k < f.size(); ++k)
				c.detail += (k ? "; " : "") + f[k];
			add(c);
		}
	}

	void homotopy()
	{
		struct Item
		{
			char const *id;
			int k;
			char const *vec;
		};
		for (auto it : {Item{"a", 2, "a"}, Item{"b", 2, "b"}, Item{"c", 2, "c"}, Item{"d", 3, "d"}})
			timed([&] {
				auto entries = criterion_sum(table(), it.k, coefficients_by_name(it.vec));
				Check c{fmt::format("homotopy.{}.degree{}", it.id, it.k), Status::pass, "0", std::nullopt, 0, ""};
				int nonzero = 0;
				for (auto const &e : entries)
					if (e.value != 0)
					{
						++nonzero;
						c.detail += fmt::format("; {}={}", e.bracket.str(), to_string(Rational(e.value)));
					}
				c.status = verdict(nonzero == 0);
				c.residual = std::to_string(nonzero);
				c.detail = fmt::format("{} brackets", entries.size()) + c.detail;
				return c;
			});
	}

	void tensor()
	{
		for (auto const *id : {"a", "b", "c"})
			timed([&] {
				auto w = wedge_criterion(coefficients_by_name(id));
				return Check{fmt::format("tensor.wedge.{}", id), verdict(w.lattice_zero()), w.lattice_zero() ? "0" : w.str(), std::nullopt, 0,
				             "torsion side channel: " + w.str()};
			});
		timed([&] {
			auto t = tensor_criterion(coefficients_by_name("d"));
			return Check{"tensor.triple.d", verdict(t.lattice_zero()), t.lattice_zero() ? "0" : t.str(), std::nullopt, 0,
			             "torsion side channel: " + t.str()};
		});
	}

	TransportOptions options() const
	{
		TransportOptions o;
		o.degree = config_.degree;
		o.epsilon = config_.epsilons.front();
		return o;
	}

	void complex()
	{
		auto opt = options();
		timed([&] {
			auto e = extract(transport(standard_delta(6), opt));
			double err = std::max(std::abs(e.Li2 - std::numbers::pi * std::numbers::pi / 6), std::abs(e.Li3 - boost::math::zeta(3.0)));
			return Check{"complex.zeta_values", verdict(err <= 1e-10), sci(err), 1e-10, 0, "Li2, Li3 at 10 against pi^2/6, zeta(3)"};
		});
		for (auto const &d : drinfeld_constants(opt))
			add(Check{fmt::format("complex.drinfeld.delta{}.li{}", d.i, d.j), verdict(d.error <= 1e-9), sci(d.error), 1e-9, 0,
			          fmt::format("-li = {:.12f}{:+.12f}i, published {:.12f}{:+.12f}i", d.computed.real(), d.computed.imag(),
			                      d.expected.real(), d.expected.imag())});
		for (auto [x, y] : config_.points)
		{
			std::optional<SystemEvaluation> sys;
			timed([&] {
				sys = evaluate_system(x, y, opt);
				double worst = 0;
				for (auto const &v : sys->values)
					worst = std::max(worst, v.consistency);
				return Check{fmt::format("complex.li_consistency@({},{})", x, y), verdict(worst <= 1e-9), sci(worst), 1e-9, 0, ""};
			});
			if (!sys)
				continue;
			for (auto const *id : {"aC", "bC", "cC", "dC"})
				timed([&] {
					auto r = verify_equation(id, *sys, config_.tolerance);
					return Check{fmt::format("complex.{}@({},{})", id, x, y), verdict(r.pass), sci(r.residual), config_.tolerance, 0, ""};
				});
			timed([&] {
				double worst = 0;
				std::string bad;
				for (auto const &b : branch_ledger(*sys))
				{
					worst = std::max(worst, b.error);
					if (b.error > 1e-10)
						bad += fmt::format("{} of z{} ", b.quantity, b.i);
				}
				return Check{fmt::format("complex.branch_ledger@({},{})", x, y), verdict(worst <= 1e-10), sci(worst), 1e-10, 0, bad};
			});
			timed([&] {
				double worst = 0;
				for (auto const &c : composition_law(*sys, opt))
					worst = std::max(worst, c.error);
				return Check{fmt::format("complex.composition@({},{})", x, y), verdict(worst <= 1e-9), sci(worst), 1e-9, 0, ""};
			});
		}
		auto [x0, y0] = config_.points.front();
		auto base = canonical_base_path(x0, y0);
		std::vector<std::pair<std::string, PathSpec>> paths{{"delta5", standard_delta(5)}, {"delta6", standard_delta(6)}, {"delta7", standard_delta(7)}};
		for (int i = 1; i <= 9; ++i)
			paths.emplace_back(fmt::format("f{}(gamma0)", i), base.pushforwards[i - 1]);
		for (auto const &[name, p] : paths)
			timed([&, name = name, p = p] {
				auto e = epsilon_schedule(name, p, config_.epsilons, opt);
				return Check{"complex.epsilon." + name, verdict(e.spread <= 1e-9), sci(e.spread), 1e-9, 0, ""};
			});
	}

	void table12()
	{
		timed([&] {
			auto golden = load_table12(data_path(config_, "table12.golden"));
			auto rows = regenerate_table12(table());
			Check c{"tables.table12", Status::pass, "0", std::nullopt, 0, ""};
			static char const *const basis[] = {"X", "Y", "[X,Y]", "[X,[X,Y]]"};
			int diffs = 0;
			for (auto const &g : golden)
			{
				auto const &r = rows.at(size_t(g.row - 1));
				for (int k = 0; k < 4; ++k)
					if (!(g.cells[k] - r.cells[k]).is_zero())
					{
						++diffs;
						c.detail += fmt::format("row {} {}: printed {} computed {}; ", g.row, basis[k], g.cells[k].str(), r.cells[k].str());
					}
			}
			if (golden.size() != rows.size())
				++diffs, c.detail += "row count differs; ";
			c.status = verdict(diffs == 0);
			c.residual = std::to_string(diffs);
			return c;
		});
	}

	void galois()
	{
		table12();
		auto dict = [&] { return substitute_C(table()); };
		for (char w : {'a', 'b', 'c'})
			timed([&] {
				auto v = criterion_rhs(table(), 2, coefficients_by_name(std::string(1, w))).substitute(dict());
				auto diff = v - printed_compute1(w);
				return Check{fmt::format("galois.compute1.{}", w), verdict(diff.is_zero()), diff.str(), std::nullopt, 0,
				             "computed " + v.str() + "; printed " + printed_compute1(w).str()};
			});
		timed([&] {
			auto c3 = compare_compute3(table());
			Check c{"galois.compute3", verdict(c3.exact || c3.modulo_identities), c3.reduced.str(), std::nullopt, 0, ""};
			c.detail = c3.exact ? "exact" :
			                      fmt::format("differs by {} (a) + {} (b) + {} (c)", to_string(c3.identity_multiples[0]),
			                                  to_string(c3.identity_multiples[1]), to_string(c3.identity_multiples[2]));
			return c;
		});
		for (auto const *id : {"aL", "bL", "cL", "dL"})
		{
			timed([&] {
				auto e = derive_equation(table(), id);
				Check c{fmt::format("galois.derive.{}", id), verdict(e.pass), e.residual.str(), std::nullopt, 0, ""};
				for (size_t k = 0; k < e.multipliers.size(); ++k)
					c.detail += fmt::format("p_{} = {}; ", char('a' + k), e.multipliers[k].str());
				return c;
			});
			timed([&] {
				auto sweep = negative_control_sweep(table(), id);
				Check c{fmt::format("galois.negative_control.{}", id), Status::pass, "0", std::nullopt, 0, ""};
				int missed = 0;
				for (auto const &p : sweep)
					if (!p.detected)
						++missed, c.detail += p.description + "; ";
				c.status = verdict(missed == 0);
				c.residual = std::to_string(missed);
				c.detail = fmt::format("{} perturbations; ", sweep.size()) + c.detail;
				return c;
			});
		}
	}

	void integrality()
	{
		for (auto const &c : check_character_integrality())
			add(Check{"integrality." + c.id, verdict(c.result.integral), c.result.integral ? "integral" : to_string(c.result.witness_value),
			          std::nullopt, 0, ""});
		timed([&] {
			auto ry = SymbolPolynomial::symbol("rho_y");
			auto d = character_equations().at(3).rhs;
			auto bad = d - SymbolPolynomial(make_rational(1, 3)) * ry * ry * ry;
			auto r = integer_valued(bad, character_domain(), 0);
			std::string w;
			for (auto const &[k, v] : r.witness)
				w += fmt::format("{}={} ", k, v.str());
			return Check{"integrality.negative_control", verdict(!r.integral), r.integral ? "integral" : to_string(r.witness_value),
			             std::nullopt, 0, "rho_y^3 coefficient 2/3 replaced by 1/3; witness " + w};
		});
	}

	void tables()
	{
		timed([&] {
			Check c{"tables.table6", Status::pass, "0", std::nullopt, 0, ""};
			int diffs = 0;
			auto const &t = table();
			for (int i = 1; i <= 9; ++i)
				for (int j = 1; j <= 8; ++j)
				{
					auto ab = abelianize(t.morphisms[i - 1].images[j - 1]);
					auto [a, b] = meridian_orders(i, j);
					if (ab.at(0) != a || ab.at(1) != b)
						++diffs, c.detail += fmt::format("i={} B{}: ({},{}) vs ({},{}); ", i, j, ab[0].str(), ab[1].str(), a.str(), b.str());
				}
			c.status = verdict(diffs == 0);
			c.residual = std::to_string(diffs);
			return c;
		});
		for (int n = 7; n <= 11; ++n)
			timed([&] {
				auto golden = load_graded_table(data_path(config_, fmt::format("table{}.golden", n)));
				auto diffs = diff_tables(golden, regenerate_table(table(), n));
				Check c{fmt::format("tables.table{}", n), verdict(diffs.empty()), std::to_string(diffs.size()), std::nullopt, 0, ""};
				for (auto const &d : diffs)
					c.detail += fmt::format("row {} {}: printed {} computed {}; ", d.row, d.column, d.expected, d.actual);
				return c;
			});
		table12();
	}
};

std::string compiler()
{
#if defined(__clang__)
	return fmt::format("clang {}.{}.{}", __clang_major__, __clang_minor__, __clang_patchlevel__);
#elif defined(__GNUC__)
	return fmt::format("gcc {}.{}.{}", __GNUC__, __GNUC_MINOR__, __GNUC_PATCHLEVEL__);
#else
	return "unknown";
#endif
}

} // namespace

VerificationReport run_suite(std::string const &name, Config const &config)
{
	if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
		throw ConfigError("unknown suite " + name);
	validate(config);
	VerificationReport r{name, {}, {}};
	r.toolchain = {
	    {"compiler", compiler()},
	    {"standard", std::to_string(__cplusplus)},
	    {"boost", fmt::format("{}.{}.{}", BOOST_VERSION / 100000, BOOST_VERSION / 100 % 1000, BOOST_VERSION % 100)},
	    {"fmt", std::to_string(FMT_VERSION)},
	};
	SuiteRunner run(config, r);
	bool all = name == "all";
	if (all || name == "relations")
		run.relations();
	if (all || name == "homotopy")
		run.homotopy();
	if (all || name == "tensor")
		run.tensor();
	if (all || name == "complex")
		run.complex();
	if (all || name == "galois")
		run.galois();
	if (all || name == "integrality")
		run.integrality();
	if (name == "tables")
		run.tables();
	else if (all)
	{
		// table 12 is already part of the galois suite
		VerificationReport extra{name, {}, {}};
		SuiteRunner more(config, extra);
		more.tables();
		for (auto &c : extra.checks)
			if (c.id != "tables.table12")
				r.checks.push_back(c);
	}
	return r;
}

std::string emit_report(VerificationReport const &r, std::string const &format, bool timings)
{
	if (format == "json")
	{
		nlohmann::ordered_json j;
		j["schema"] = report_schema;
		j["suite"] = r.suite;
		j["checks"] = nlohmann::ordered_json::array();
		for (auto const &c : r.checks)
		{
			nlohmann::ordered_json e;
			e["id"] = c.id;
			e["status"] = status_name(c.status);
			e["residual"] = c.residual;
			e["tolerance"] = c.tolerance ? nlohmann::ordered_json(*c.tolerance) : nlohmann::ordered_json(nullptr);
			if (timings)
				e["runtime_ms"] = c.runtime_ms;
			e["detail"] = c.detail;
			j["checks"].push_back(e);
		}
		j["pass"] = r.pass();
		nlohmann::ordered_json tc;
		for (auto const &[k, v] : r.toolchain)
			tc[k] = v;
		j["toolchain"] = tc;
		return j.dump(2) + "\n";
	}
	if (format == "md" || format == "markdown")
	{
		int passed = 0, failed = 0, skipped = 0;
		for (auto const &c : r.checks)
			(c.status == Status::pass ? passed : c.status == Status::fail ? failed : skipped)++;
		std::string out = fmt::format("# Verification report: {}\n\n", r.suite);
		out += fmt::format("{} passed, {} failed, {} skipped. Overall: **{}**\n\n", passed, failed, skipped, r.pass() ? "pass" : "fail");
		out += timings ? "| check | status | residual | tolerance | ms | detail |\n|---|---|---|---|---|---|\n" :
		                 "| check | status | residual | tolerance | detail |\n|---|---|---|---|---|\n";
		auto cell = [](std::string s) {
			for (size_t p = 0; (p = s.find('|', p)) != std::string::npos; p += 2)
				s.replace(p, 1, "\\|");
			return s;
		};
		for (auto const &c : r.checks)
		{
			out += fmt::format("| {} | {} | {} | {} |", cell(c.id), status_name(c.status), cell(c.residual), c.tolerance ? sci(*c.tolerance) : "exact");
			if (timings)
				out += fmt::format(" {:.1f} |", c.runtime_ms);
			out += fmt::format(" {} |\n", cell(c.detail));
		}
		out += "\nToolchain:";
		for (size_t k = 0; k < r.toolchain.size(); ++k)
			out += fmt::format("{} {} {}", k ? "," : "", r.toolchain[k].first, r.toolchain[k].second);
		return out + "\n";
	}
	throw ConfigError("unknown report format " + format);
}

} // namespace polyfe
