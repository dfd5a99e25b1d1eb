#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polyfe {

class ConfigError : public std::runtime_error
{
  public:
	using std::runtime_error::runtime_error;
};

struct Config
{
	std::vector<std::pair<double, double>> points{{0.3, 0.7}, {0.2, 0.9}, {0.1, 0.5}, {0.6, 0.8}, {0.45, 0.55}};
	int degree = 3;
	double tolerance = 1e-8;
	std::vector<double> epsilons{1e-5, 1e-6, 1e-7};
	std::string data_dir;
};

// key = value lines; '#' starts a comment
Config parse_config(std::string const &text, std::string const &name = "<string>");
Config load_config(std::string const &path);
// throws ConfigError on out-of-range values
void validate(Config const &c);

// POLYFE_DATA_DIR, else the directory configured at build time
std::string default_data_dir();
std::string data_path(Config const &c, std::string const &file);

} // namespace polyfe
