#include "CLI11.hpp"
#include "polyfe/config.h"
#include "polyfe/report.h"
#include <iostream>

int main(int argc, char **argv)
{
	CLI::App app{"Batch verification of the trilogarithm functional equation and its dilogarithm companions"};
	std::string suite;
	std::optional<double> x, y, tol;
	std::optional<int> degree;
	std::string config_path, format = "json", data_dir;
	bool timings = false;
	app.add_option("suite", suite, "relations, homotopy, tensor, complex, galois, integrality, tables or all")->required();
	app.add_option("--x", x, "sample point x (with --y)");
	app.add_option("--y", y, "sample point y (with --x)");
	app.add_option("--degree", degree, "truncation degree");
	app.add_option("--tol", tol, "tolerance for the complex residuals");
	app.add_option("--config", config_path, "key = value config file");
	app.add_option("--format", format, "json or md")->check(CLI::IsMember({"json", "md", "markdown"}));
	app.add_option("--data-dir", data_dir, "directory with presentations and golden tables");
	app.add_flag("--timings", timings, "include per-check runtimes");
	CLI11_PARSE(app, argc, argv);

	polyfe::Config config;
	try
	{
		if (!config_path.empty())
			config = polyfe::load_config(config_path);
		if (x.has_value() != y.has_value())
			throw polyfe::ConfigError("--x and --y must be given together");
		if (x)
			config.points = {{*x, *y}};
		if (degree)
			config.degree = *degree;
		if (tol)
			config.tolerance = *tol;
		if (!data_dir.empty())
			config.data_dir = data_dir;
		polyfe::validate(config);
		auto report = polyfe::run_suite(suite, config);
		std::cout << polyfe::emit_report(report, format, timings);
		return polyfe::exit_status(report);
	}
	catch (polyfe::ConfigError const &e)
	{
		std::cerr << "config error: " << e.what() << "\n";
		return 2;
	}
	catch (std::exception const &e)
	{
		std::cerr << "error: " << e.what() << "\n";
		return 3;
	}
}
