#pragma once

#include <array>
#include <complex>
#include "json.hpp"
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace polyfe {

using Complex = std::complex<double>;

class TransportError : public std::runtime_error
{
  public:
	using std::runtime_error::runtime_error;
};

// dense truncated series over the letters X, Y with complex coefficients
class CSeries
{
	int N_;
	std::vector<Complex> c_;

  public:
	explicit CSeries(int N);

	static CSeries one(int N);
	static CSeries letter(int N, int index);

	static size_t offset(int length) { return (size_t(1) << length) - 1; }
	static size_t index(std::string_view word);

	int truncation() const { return N_; }
	std::vector<Complex> const &data() const { return c_; }

	Complex coeff(std::string_view word) const { return c_[index(word)]; }
	Complex &at(std::string_view word) { return c_[index(word)]; }
	Complex constant() const { return c_[0]; }

	CSeries &operator+=(CSeries const &o);
	CSeries &operator-=(CSeries const &o);
	CSeries operator-() const;
	CSeries scaled(Complex k) const;
	double max_abs() const;

	std::string str() const;
};

CSeries operator+(CSeries a, CSeries const &b);
CSeries operator-(CSeries a, CSeries const &b);
CSeries operator*(CSeries const &a, CSeries const &b);
CSeries exp(CSeries const &a);
CSeries log(CSeries const &a);
CSeries inverse(CSeries const &a);
double max_abs_diff(CSeries const &a, CSeries const &b);

// largest violation of the shuffle relations a_u a_v = sum over u sh v
double shuffle_defect(CSeries const &a);

enum class Chart
{
	z,
	w
};

struct TangentialPoint
{
	enum class Base
	{
		zero,
		one,
		infinity,
		interior
	};

	Base base = Base::zero;
	// tangent direction in the local chart (w = 1/z at infinity); the point itself when interior
	Complex value = 1.0;

	static TangentialPoint v01() { return {Base::zero, 1.0}; }
	static TangentialPoint v10() { return {Base::one, -1.0}; }
	static TangentialPoint v0inf() { return {Base::zero, -1.0}; }
	static TangentialPoint vinf0() { return {Base::infinity, -1.0}; }
	static TangentialPoint at(Complex z) { return {Base::interior, z}; }

	bool tangential() const { return base != Base::interior; }
	bool same(TangentialPoint const &o, double tol = 1e-9) const;
	std::string str() const;
};

struct Segment
{
	enum class Kind
	{
		line,
		arc,
		ray,
		image
	};

	Kind kind = Kind::line;
	Chart chart = Chart::z;
	bool reversed = false;
	// line
	Complex from = 0.0, to = 0.0;
	// arc
	Complex center = 0.0;
	double radius = 0, angle0 = 0, angle1 = 0;
	// ray: tangential start at base (0 or 1 in the chart) in the given direction
	int base = 0;
	Complex direction = 1.0;
	double length = 0;
	// image of a leg of the base path under f_function
	int function = 0, leg = 1;
	double x = 0, y = 0;

	static Segment make_line(Complex from, Complex to, Chart chart = Chart::z);
	static Segment make_arc(Complex center, double radius, double angle0, double angle1, Chart chart = Chart::z);
	static Segment make_ray(int base, Complex direction, double length, Chart chart = Chart::z);
	static Segment make_image(int function, int leg, double x, double y);

	Segment reverse() const;
	// starts at a tangential base point when traversed forwards
	bool tangential_start() const;
};

struct PathSpec
{
	TangentialPoint start = TangentialPoint::v01();
	TangentialPoint end = TangentialPoint::v01();
	std::vector<Segment> segments;

	PathSpec reverse() const;
	std::string str() const;
};

// checks chaining, singularities and endpoint declarations; throws TransportError
void validate(PathSpec const &p);

PathSpec concatenate(PathSpec const &a, PathSpec const &b);

void to_json(nlohmann::json &j, TangentialPoint const &p);
void from_json(nlohmann::json const &j, TangentialPoint &p);
void to_json(nlohmann::json &j, Segment const &s);
void from_json(nlohmann::json const &j, Segment &s);
void to_json(nlohmann::json &j, PathSpec const &p);
void from_json(nlohmann::json const &j, PathSpec &p);

struct TransportOptions
{
	int degree = 3;
	// parameter offset at which the local expansion hands over to quadrature
	double epsilon = 1e-6;
	double tolerance = 1e-12;
};

struct Associator
{
	CSeries value{3};
	TangentialPoint start, end;
	double error_estimate = 0;
};

Associator transport(PathSpec const &p, TransportOptions const &opt = {});
Associator identity_associator(TangentialPoint const &at, int degree = 3);
// the path of a followed by the path of b
Associator compose(Associator const &a, Associator const &b);

struct Extraction
{
	Complex log, log1m, Li2, Li3;
	std::array<Complex, 4> li;
	// li_1..li_3 recomputed from log, Li_k through the Bernoulli combination
	std::array<Complex, 4> li_bernoulli;
	double consistency = 0;
};

Extraction extract(Associator const &a);

// straight path or tangential ray from 01 to a point in (0, 1)
PathSpec straight_path(double z);
PathSpec standard_delta(int i);

struct BasePath
{
	double x, y;
	std::array<PathSpec, 9> pushforwards;
	// leg 1: (t^2, t) for t in (0, y]; leg 2: s1 from y^2 to x at s2 = y
	std::array<Complex, 2> leg_point(int leg, double s) const;
};

BasePath canonical_base_path(double x, double y);
std::array<TangentialPoint, 9> const &pushforward_starts();
// a path from 01 to f_i(x, y) homotopic to delta_i followed by the pushforward
PathSpec direct_path(int i, double x, double y);

struct SystemEvaluation
{
	double x, y;
	std::array<Associator, 9> gamma;
	std::array<Extraction, 9> values;
};

SystemEvaluation evaluate_system(double x, double y, TransportOptions const &opt = {});

struct EquationResidual
{
	std::string id;
	double x, y;
	Complex lhs, rhs;
	double residual;
	bool pass;
};

EquationResidual verify_equation(std::string const &id, SystemEvaluation const &sys, double tol = 1e-8);
EquationResidual verify_equation(std::string const &id, double x, double y, double tol = 1e-8, TransportOptions const &opt = {});

struct BranchCheck
{
	int i;
	std::string quantity;
	Complex computed, expected;
	double error;
};

std::vector<BranchCheck> branch_ledger(SystemEvaluation const &sys);

struct CompositionCheck
{
	int i;
	double error;
};

std::vector<CompositionCheck> composition_law(SystemEvaluation const &sys, TransportOptions const &opt = {});

struct DrinfeldConstant
{
	int i, j;
	Complex computed, expected;
	double error;
};

// -li_j of the delta paths against the published constants
std::vector<DrinfeldConstant> drinfeld_constants(TransportOptions const &opt = {});

struct EpsilonCheck
{
	std::string path;
	std::vector<double> epsilons;
	double spread;
};

EpsilonCheck epsilon_schedule(std::string const &name, PathSpec const &p, std::vector<double> const &epsilons, TransportOptions opt = {});

} // namespace polyfe
