#include "polyfe/report.h"
#include <gtest/gtest.h>
#include <nlohmann/json.hpp>
#include <set>

using namespace polyfe;

namespace {

Config one_point()
{
	Config c;
	c.points = {{0.3, 0.7}};
	return c;
}

} // namespace

TEST(Config, Defaults)
{
	Config c;
	EXPECT_EQ(c.points.size(), 5u);
	EXPECT_EQ(c.degree, 3);
	EXPECT_DOUBLE_EQ(c.tolerance, 1e-8);
	EXPECT_EQ(c.epsilons, (std::vector<double>{1e-5, 1e-6, 1e-7}));
	EXPECT_NO_THROW(validate(c));
}

TEST(Config, ParsesEveryKey)
{
	auto c = parse_config(R"(# sample run
points = (0.3, 0.7), (0.2, 0.9)   # two points
degree = 4
tolerance = 1e-9
epsilons = [1e-5, 1e-7]
data_dir = "/tmp/golden"
)");
	EXPECT_EQ(c.points, (std::vector<std::pair<double, double>>{{0.3, 0.7}, {0.2, 0.9}}));
	EXPECT_EQ(c.degree, 4);
	EXPECT_DOUBLE_EQ(c.tolerance, 1e-9);
	EXPECT_EQ(c.epsilons, (std::vector<double>{1e-5, 1e-7}));
	EXPECT_EQ(c.data_dir, "/tmp/golden");
	EXPECT_EQ(data_path(c, "x.golden"), "/tmp/golden/x.golden");
}

TEST(Config, Errors)
{
	for (auto const *text : {"points = 0.3", "points = (0.7, 0.3)", "degree = 2", "degree = 3.5", "tolerance = 0",
	                         "tolerance = small", "epsilons = 0.5", "colour = blue", "degree 3"})
		EXPECT_THROW(parse_config(text), ConfigError) << text;
	try
	{
		parse_config("degree = 3\nwhat = 1\n", "run.conf");
		FAIL();
	}
	catch (ConfigError const &e)
	{
		EXPECT_NE(std::string(e.what()).find("run.conf:2"), std::string::npos);
	}
	EXPECT_THROW(load_config("/nonexistent/run.conf"), ConfigError);
}

TEST(Config, SampleFileLoads)
{
	auto c = load_config(default_data_dir() + "/sample.conf");
	EXPECT_NO_THROW(validate(c));
	EXPECT_GE(c.points.size(), 5u);
}

TEST(Suite, UnknownNameIsAConfigError)
{
	EXPECT_THROW(run_suite("everything", Config{}), ConfigError);
	Config bad;
	bad.degree = 1;
	EXPECT_THROW(run_suite("homotopy", bad), ConfigError);
}

TEST(Suite, HomotopyHasFourPassingChecks)
{
	auto r = run_suite("homotopy", Config{});
	ASSERT_EQ(r.checks.size(), 4u);
	std::vector<std::string> ids;
	for (auto const &c : r.checks)
	{
		ids.push_back(c.id);
		EXPECT_EQ(c.status, Status::pass) << c.id;
	}
	EXPECT_EQ(ids, (std::vector<std::string>{"homotopy.a.degree2", "homotopy.b.degree2", "homotopy.c.degree2", "homotopy.d.degree3"}));
	EXPECT_TRUE(r.pass());
	EXPECT_EQ(exit_status(r), 0);
}

TEST(Suite, ComplexAtOnePointCertifiesTheEquations)
{
	auto r = run_suite("complex", one_point());
	int equations = 0;
	for (auto const &c : r.checks)
		if (c.id.rfind("complex.", 0) == 0 && c.id.size() > 11 && c.id.substr(9, 3) == "C@(")
		{
			++equations;
			EXPECT_EQ(c.status, Status::pass) << c.id;
			EXPECT_LT(std::stod(c.residual), 1e-8);
		}
	EXPECT_EQ(equations, 4);
}

TEST(Suite, ChecksAreUnique)
{
	auto r = run_suite("all", one_point());
	std::set<std::string> seen;
	for (auto const &c : r.checks)
		EXPECT_TRUE(seen.insert(c.id).second) << c.id;
	for (auto const &name : suite_names())
		if (name != "all" && name != "complex")
			for (auto const &c : run_suite(name, one_point()).checks)
				EXPECT_TRUE(seen.count(c.id)) << c.id << " missing from all";
}

TEST(Report, JsonSchema)
{
	auto r = run_suite("tensor", Config{});
	auto j = nlohmann::json::parse(emit_report(r, "json"));
	EXPECT_EQ(j.at("schema"), report_schema);
	EXPECT_EQ(j.at("suite"), "tensor");
	EXPECT_EQ(j.at("pass"), r.pass());
	ASSERT_EQ(j.at("checks").size(), r.checks.size());
	for (auto const &c : j.at("checks"))
	{
		for (auto const *k : {"id", "status", "residual", "tolerance", "detail"})
			EXPECT_TRUE(c.contains(k)) << k;
		EXPECT_FALSE(c.contains("runtime_ms"));
	}
	EXPECT_TRUE(j.at("toolchain").contains("compiler"));
	auto timed = nlohmann::json::parse(emit_report(r, "json", true));
	EXPECT_TRUE(timed.at("checks").at(0).contains("runtime_ms"));
}

TEST(Report, FieldOrderIsStable)
{
	auto text = emit_report(run_suite("homotopy", Config{}), "json");
	auto at = [&](char const *k) { return text.find(std::string("\"") + k + "\""); };
	EXPECT_LT(at("schema"), at("suite"));
	EXPECT_LT(at("suite"), at("checks"));
	EXPECT_LT(at("checks"), at("pass"));
	EXPECT_LT(at("pass"), at("toolchain"));
}

TEST(Report, Deterministic)
{
	for (auto const *suite : {"homotopy", "tables", "galois", "complex"})
	{
		auto a = emit_report(run_suite(suite, one_point()), "json");
		auto b = emit_report(run_suite(suite, one_point()), "json");
		EXPECT_EQ(a, b) << suite;
	}
	auto r = run_suite("homotopy", one_point());
	EXPECT_EQ(emit_report(r, "md"), emit_report(r, "markdown"));
}

TEST(Report, MarkdownSummarisesTables)
{
	auto md = emit_report(run_suite("tables", Config{}), "md");
	EXPECT_NE(md.find("# Verification report: tables"), std::string::npos);
	EXPECT_NE(md.find("| tables.table7 | pass |"), std::string::npos);
	EXPECT_NE(md.find("| tables.table10 | fail |"), std::string::npos);
	EXPECT_THROW(emit_report(run_suite("homotopy", Config{}), "xml"), ConfigError);
}

TEST(Report, FailingCheckSetsExitStatus)
{
	VerificationReport r{"custom", {Check{"ok", Status::pass, "0", std::nullopt, 0, ""}}, {}};
	EXPECT_EQ(exit_status(r), 0);
	r.checks.push_back(Check{"bad", Status::fail, "3.2e-4", 1e-8, 0, "residual too large"});
	EXPECT_EQ(exit_status(r), 1);
	auto j = nlohmann::json::parse(emit_report(r, "json"));
	EXPECT_EQ(j.at("pass"), false);
	EXPECT_EQ(j.at("checks").at(1).at("residual"), "3.2e-4");
	r.checks[1].status = Status::skip;
	EXPECT_EQ(exit_status(r), 0);
}

TEST(Report, MissingDataIsReportedAsFailure)
{
	Config c;
	c.data_dir = "/nonexistent";
	auto r = run_suite("homotopy", c);
	EXPECT_FALSE(r.pass());
	for (auto const &chk : r.checks)
		EXPECT_NE(chk.detail.find("error"), std::string::npos);
}
