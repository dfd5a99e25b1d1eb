#pragma once

#include "polyfe/config.h"
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace polyfe {

enum class Status
{
	pass,
	fail,
	skip
};

std::string status_name(Status s);

struct Check
{
	std::string id;
	Status status = Status::pass;
	// numeric residual or a rendered polynomial
	std::string residual;
	std::optional<double> tolerance;
	double runtime_ms = 0;
	std::string detail;
};

struct VerificationReport
{
	std::string suite;
	std::vector<Check> checks;
	std::vector<std::pair<std::string, std::string>> toolchain;

	bool pass() const;
};

constexpr char const *report_schema = "polyfe-report/1";

std::vector<std::string> const &suite_names();
// throws ConfigError before running anything when the suite or config is invalid
VerificationReport run_suite(std::string const &name, Config const &config);

// timings are wall-clock dependent and left out unless asked for
std::string emit_report(VerificationReport const &r, std::string const &format, bool timings = false);
int exit_status(VerificationReport const &r);

} // namespace polyfe
