#include "polyfe/config.h"
#include <cstdlib>
#include <fmt/format.h>
#include <fstream>
#include <regex>
#include <sstream>

namespace polyfe {

namespace {

std::string trim(std::string const &s)
{
	auto b = s.find_first_not_of(" \t\r");
	if (b == std::string::npos)
		return "";
	auto e = s.find_last_not_of(" \t\r");
	return s.substr(b, e - b + 1);
}

std::vector<double> numbers(std::string const &value, std::string const &where)
{
	static std::regex const number(R"([-+]?(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?)");
	std::string rest = std::regex_replace(value, number, "");
	if (rest.find_first_not_of(" \t,;()[]") != std::string::npos)
		throw ConfigError(where + ": expected a list of numbers");
	std::vector<double> out;
	for (std::sregex_iterator it(value.begin(), value.end(), number), end; it != end; ++it)
		out.push_back(std::stod(it->str()));
	return out;
}

double single(std::string const &value, std::string const &where)
{
	auto v = numbers(value, where);
	if (v.size() != 1)
		throw ConfigError(where + ": expected one number");
	return v[0];
}

} // namespace

Config parse_config(std::string const &text, std::string const &name)
{
	Config c;
	std::istringstream in(text);
	std::string line;
	int no = 0;
	while (std::getline(in, line))
	{
		++no;
		if (auto h = line.find('#'); h != std::string::npos)
			line = line.substr(0, h);
		line = trim(line);
		if (line.empty())
			continue;
		auto eq = line.find('=');
		std::string where = fmt::format("{}:{}", name, no);
		if (eq == std::string::npos)
			throw ConfigError(where + ": expected key = value");
		std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
		if (key == "points")
		{
			auto v = numbers(value, where);
			if (v.empty() || v.size() % 2)
				throw ConfigError(where + ": points need (x, y) pairs");
			c.points.clear();
			for (size_t i = 0; i < v.size(); i += 2)
				c.points.emplace_back(v[i], v[i + 1]);
		}
		else if (key == "degree")
		{
			double d = single(value, where);
			if (d != int(d))
				throw ConfigError(where + ": degree must be an integer");
			c.degree = int(d);
		}
		else if (key == "tolerance")
			c.tolerance = single(value, where);
		else if (key == "epsilons")
			c.epsilons = numbers(value, where);
		else if (key == "data_dir")
		{
			if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
				value = value.substr(1, value.size() - 2);
			c.data_dir = value;
		}
		else
			throw ConfigError(where + ": unknown key " + key);
	}
	validate(c);
	return c;
}

Config load_config(std::string const &path)
{
	std::ifstream in(path);
	if (!in)
		throw ConfigError("cannot open config " + path);
	std::stringstream ss;
	ss << in.rdbuf();
	return parse_config(ss.str(), path);
}

void validate(Config const &c)
{
	if (c.points.empty())
		throw ConfigError("no sample points");
	for (auto [x, y] : c.points)
		if (!(0 < x && x < y && y < 1))
			throw ConfigError(fmt::format("sample point ({}, {}) is outside 0 < x < y < 1", x, y));
	if (c.degree < 3 || c.degree > 8)
		throw ConfigError("degree must lie in 3..8");
	if (!(c.tolerance > 0))
		throw ConfigError("tolerance must be positive");
	if (c.epsilons.empty())
		throw ConfigError("empty regularization schedule");
	for (double e : c.epsilons)
		if (!(e > 0 && e <= 0.125))
			throw ConfigError(fmt::format("regularization offset {} outside (0, 0.125]", e));
}

std::string default_data_dir()
{
	if (char const *env = std::getenv("POLYFE_DATA_DIR"); env && *env)
		return env;
	return POLYFE_DEFAULT_DATA_DIR;
}

std::string data_path(Config const &c, std::string const &file)
{
	return (c.data_dir.empty() ? default_data_dir() : c.data_dir) + "/" + file;
}

} // namespace polyfe
