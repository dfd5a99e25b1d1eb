#include "polyfe/kz.h"
#include "polyfe/units.h"
#include <boost/math/special_functions/legendre.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <functional>
#include <map>
#include <numbers>

namespace polyfe {

namespace {

constexpr double pi = std::numbers::pi;
constexpr Complex two_pi_i{0, 2 * pi};

int word_length(size_t idx)
{
	int k = 0;
	while (CSeries::offset(k + 1) <= idx)
		++k;
	return k;
}

} // namespace

CSeries::CSeries(int N) : N_(N), c_(offset(N + 1), 0.0)
{
	if (N < 0 || N > 12)
		throw TransportError("truncation degree out of range");
}

CSeries CSeries::one(int N)
{
	CSeries s(N);
	s.c_[0] = 1.0;
	return s;
}

CSeries CSeries::letter(int N, int index)
{
	CSeries s(N);
	if (N >= 1)
		s.c_[1 + size_t(index)] = 1.0;
	return s;
}

size_t CSeries::index(std::string_view word)
{
	size_t bits = 0;
	for (char ch : word)
	{
		if (ch != 'X' && ch != 'Y')
			throw TransportError(fmt::format("word {} uses letters other than X, Y", word));
		bits = (bits << 1) | (ch == 'Y' ? 1 : 0);
	}
	return offset(int(word.size())) + bits;
}

CSeries &CSeries::operator+=(CSeries const &o)
{
	if (o.N_ != N_)
		throw TransportError("truncation mismatch");
	for (size_t i = 0; i < c_.size(); ++i)
		c_[i] += o.c_[i];
	return *this;
}

CSeries &CSeries::operator-=(CSeries const &o)
{
	return *this += -o;
}

CSeries CSeries::operator-() const
{
	return scaled(-1.0);
}

CSeries CSeries::scaled(Complex k) const
{
	CSeries r = *this;
	for (auto &v : r.c_)
		v *= k;
	return r;
}

double CSeries::max_abs() const
{
	double m = 0;
	for (auto const &v : c_)
		m = std::max(m, std::abs(v));
	return m;
}

std::string CSeries::str() const
{
	std::string out;
	for (size_t i = 0; i < c_.size(); ++i)
	{
		if (std::abs(c_[i]) == 0)
			continue;
		int k = word_length(i);
		size_t bits = i - offset(k);
		std::string w;
		for (int p = k - 1; p >= 0; --p)
			w += (bits >> p) & 1 ? 'Y' : 'X';
		out += fmt::format("{}({:.12g}{:+.12g}i) ", w.empty() ? "1" : w, c_[i].real(), c_[i].imag());
	}
	return out.empty() ? "0" : out;
}

CSeries operator+(CSeries a, CSeries const &b)
{
	return a += b;
}

CSeries operator-(CSeries a, CSeries const &b)
{
	return a -= b;
}

CSeries operator*(CSeries const &a, CSeries const &b)
{
	int N = std::min(a.truncation(), b.truncation());
	CSeries r(N);
	auto const &x = a.data();
	auto const &y = b.data();
	auto &out = const_cast<std::vector<Complex> &>(r.data());
	for (int k1 = 0; k1 <= N; ++k1)
		for (size_t i = 0; i < (size_t(1) << k1); ++i)
		{
			Complex u = x[CSeries::offset(k1) + i];
			if (u == 0.0)
				continue;
			for (int k2 = 0; k1 + k2 <= N; ++k2)
				for (size_t j = 0; j < (size_t(1) << k2); ++j)
					out[CSeries::offset(k1 + k2) + (i << k2) + j] += u * y[CSeries::offset(k2) + j];
		}
	return r;
}

CSeries exp(CSeries const &a)
{
	int N = a.truncation();
	Complex c0 = a.constant();
	CSeries b = a;
	const_cast<std::vector<Complex> &>(b.data())[0] = 0.0;
	CSeries r = CSeries::one(N), term = CSeries::one(N);
	for (int n = 1; n <= N; ++n)
	{
		term = (term * b).scaled(1.0 / n);
		r += term;
	}
	return r.scaled(std::exp(c0));
}

CSeries log(CSeries const &a)
{
	int N = a.truncation();
	Complex c0 = a.constant();
	if (c0 == 0.0)
		throw TransportError("log of a series with zero constant term");
	CSeries b = a.scaled(1.0 / c0);
	const_cast<std::vector<Complex> &>(b.data())[0] = 0.0;
	CSeries r(N), power = CSeries::one(N);
	for (int n = 1; n <= N; ++n)
	{
		power = power * b;
		r += power.scaled((n % 2 ? 1.0 : -1.0) / n);
	}
	const_cast<std::vector<Complex> &>(r.data())[0] = std::log(c0);
	return r;
}

CSeries inverse(CSeries const &a)
{
	int N = a.truncation();
	Complex c0 = a.constant();
	if (c0 == 0.0)
		throw TransportError("inverse of a series with zero constant term");
	CSeries b = a.scaled(1.0 / c0);
	const_cast<std::vector<Complex> &>(b.data())[0] = 0.0;
	CSeries r = CSeries::one(N), power = CSeries::one(N);
	for (int n = 1; n <= N; ++n)
	{
		power = power * (-b);
		r += power;
	}
	return r.scaled(1.0 / c0);
}

double max_abs_diff(CSeries const &a, CSeries const &b)
{
	return (a - b).max_abs();
}

namespace {

void shuffles(std::string const &u, std::string const &v, std::string prefix, std::vector<std::string> &out)
{
	if (u.empty() || v.empty())
	{
		out.push_back(prefix + u + v);
		return;
	}
	shuffles(u.substr(1), v, prefix + u[0], out);
	shuffles(u, v.substr(1), prefix + v[0], out);
}

std::vector<std::string> words_of_length(int k)
{
	std::vector<std::string> out;
	for (size_t bits = 0; bits < (size_t(1) << k); ++bits)
	{
		std::string w;
		for (int p = k - 1; p >= 0; --p)
			w += (bits >> p) & 1 ? 'Y' : 'X';
		out.push_back(w);
	}
	return out;
}

} // namespace

double shuffle_defect(CSeries const &a)
{
	int N = a.truncation();
	double worst = std::abs(a.constant() - 1.0);
	for (int k1 = 1; k1 < N; ++k1)
		for (int k2 = k1; k1 + k2 <= N; ++k2)
			for (auto const &u : words_of_length(k1))
				for (auto const &v : words_of_length(k2))
				{
					std::vector<std::string> sh;
					shuffles(u, v, "", sh);
					Complex s = 0;
					for (auto const &w : sh)
						s += a.coeff(w);
					worst = std::max(worst, std::abs(a.coeff(u) * a.coeff(v) - s));
				}
	return worst;
}

bool TangentialPoint::same(TangentialPoint const &o, double tol) const
{
	return base == o.base && std::abs(value - o.value) <= tol * std::max(1.0, std::abs(value));
}

std::string TangentialPoint::str() const
{
	auto dir = [&](std::string const &at) {
		if (std::abs(value - 1.0) < 1e-12)
			return at + "+";
		if (std::abs(value + 1.0) < 1e-12)
			return at + "-";
		return fmt::format("{}({:.6g}{:+.6g}i)", at, value.real(), value.imag());
	};
	switch (base)
	{
	case Base::zero:
		if (std::abs(value - 1.0) < 1e-12)
			return "01";
		if (std::abs(value + 1.0) < 1e-12)
			return "0inf";
		return dir("0");
	case Base::one:
		if (std::abs(value + 1.0) < 1e-12)
			return "10";
		return dir("1");
	case Base::infinity:
		if (std::abs(value + 1.0) < 1e-12)
			return "inf0";
		return dir("inf");
	default:
		return fmt::format("({:.12g}{:+.12g}i)", value.real(), value.imag());
	}
}

Segment Segment::make_line(Complex from, Complex to, Chart chart)
{
	Segment s;
	s.kind = Kind::line;
	s.from = from;
	s.to = to;
	s.chart = chart;
	return s;
}

Segment Segment::make_arc(Complex center, double radius, double angle0, double angle1, Chart chart)
{
	Segment s;
	s.kind = Kind::arc;
	s.center = center;
	s.radius = radius;
	s.angle0 = angle0;
	s.angle1 = angle1;
	s.chart = chart;
	return s;
}

Segment Segment::make_ray(int base, Complex direction, double length, Chart chart)
{
	if (base != 0 && base != 1)
		throw TransportError("ray base must be 0 or 1");
	if (std::abs(std::abs(direction) - 1) > 1e-12 || length <= 0)
		throw TransportError("ray needs a unit direction and positive length");
	Segment s;
	s.kind = Kind::ray;
	s.base = base;
	s.direction = direction;
	s.length = length;
	s.chart = chart;
	return s;
}

Segment Segment::make_image(int function, int leg, double x, double y)
{
	if (function < 1 || function > 9 || (leg != 1 && leg != 2))
		throw TransportError("image segment needs function 1..9 and leg 1 or 2");
	Segment s;
	s.kind = Kind::image;
	s.function = function;
	s.leg = leg;
	s.x = x;
	s.y = y;
	return s;
}

Segment Segment::reverse() const
{
	Segment s = *this;
	s.reversed = !reversed;
	return s;
}

bool Segment::tangential_start() const
{
	return kind == Kind::ray || (kind == Kind::image && leg == 1);
}

PathSpec PathSpec::reverse() const
{
	PathSpec p{end, start, {}};
	for (auto it = segments.rbegin(); it != segments.rend(); ++it)
		p.segments.push_back(it->reverse());
	return p;
}

namespace {

// the segment traversed forwards, parameter s in [0, 1]
struct SegmentForm
{
	Segment seg;

	// chart coordinate and its derivative
	std::pair<Complex, Complex> chart_point(Complex s) const
	{
		switch (seg.kind)
		{
		case Segment::Kind::line:
			return {seg.from + (seg.to - seg.from) * s, seg.to - seg.from};
		case Segment::Kind::arc:
		{
			double dt = seg.angle1 - seg.angle0;
			Complex e = std::exp(Complex(0, 1) * (seg.angle0 + dt * s));
			return {seg.center + seg.radius * e, Complex(0, 1) * seg.radius * dt * e};
		}
		case Segment::Kind::ray:
			return {double(seg.base) + seg.direction * seg.length * s, seg.direction * seg.length};
		default:
			throw TransportError("image segments have no chart parametrization");
		}
	}

	std::pair<std::array<Complex, 2>, std::array<Complex, 2>> leg(Complex s) const
	{
		if (seg.leg == 1)
		{
			Complex t = seg.y * s;
			return {{t * t, t}, {2.0 * t * seg.y, seg.y}};
		}
		double y2 = seg.y * seg.y;
		return {{y2 + (seg.x - y2) * s, seg.y}, {seg.x - y2, 0.0}};
	}

	Complex z(Complex s) const
	{
		if (seg.kind == Segment::Kind::image)
		{
			auto [p, dp] = leg(s);
			return nine_functions()[seg.function - 1].evaluate(p[0], p[1]);
		}
		auto u = chart_point(s).first;
		return seg.chart == Chart::z ? u : 1.0 / u;
	}

	// local coordinate at the tangential base: z, z - 1 or 1/z
	Complex local(Complex s, TangentialPoint::Base base) const
	{
		if (seg.kind != Segment::Kind::image && seg.chart == Chart::w)
		{
			auto u = chart_point(s).first;
			if (base == TangentialPoint::Base::infinity)
				return u;
			return base == TangentialPoint::Base::zero ? 1.0 / u : 1.0 / u - 1.0;
		}
		Complex v = z(s);
		switch (base)
		{
		case TangentialPoint::Base::zero:
			return v;
		case TangentialPoint::Base::one:
			return v - 1.0;
		default:
			return 1.0 / v;
		}
	}

	// omega = a X ds + b Y ds
	std::pair<Complex, Complex> form(Complex s) const
	{
		if (seg.kind == Segment::Kind::image)
			return image_form(s);
		auto [u, du] = chart_point(s);
		if (seg.chart == Chart::z)
			return {du / u, du / (u - 1.0)};
		return {-du / u, -du / u + du / (u - 1.0)};
	}

	std::pair<Complex, Complex> image_form(Complex s) const
	{
		static std::array<std::pair<FactoredUnit, FactoredUnit>, 9> const units = [] {
			std::array<std::pair<FactoredUnit, FactoredUnit>, 9> u;
			for (int i = 0; i < 9; ++i)
				u[i] = {factor_unit(nine_functions()[i]), factor_unit(nine_functions()[i].minus_one())};
			return u;
		}();
		auto [p, dp] = leg(s);
		Complex s1 = p[0], s2 = p[1];
		std::array<Complex, 6> g{s1, s2, 1.0 - s1, 1.0 - s2, s1 - s2, 1.0 - s1 * s2};
		std::array<Complex, 6> dg{dp[0], dp[1], -dp[0], -dp[1], dp[0] - dp[1], -(s2 * dp[0] + s1 * dp[1])};
		auto dlog = [&](FactoredUnit const &f) {
			Complex r = 0;
			for (int k = 0; k < 6; ++k)
				if (f.exponents[k] != 0)
					r += f.exponents[k].convert_to<double>() * dg[k] / g[k];
			return r;
		};
		auto const &[f, fm1] = units[seg.function - 1];
		return {dlog(f), dlog(fm1)};
	}
};

struct Quadrature
{
	static constexpr int nodes = 12;
	std::array<double, nodes> x{}, w{};
	std::array<std::array<double, nodes>, nodes> S{};

	Quadrature()
	{
		auto zeros = boost::math::legendre_p_zeros<double>(nodes);
		std::vector<double> all;
		for (double r : zeros)
		{
			all.push_back(r);
			if (r != 0)
				all.push_back(-r);
		}
		std::sort(all.begin(), all.end());
		for (int m = 0; m < nodes; ++m)
		{
			x[m] = all[m];
			double dp = boost::math::legendre_p_prime(nodes, x[m]);
			w[m] = 2 / ((1 - x[m] * x[m]) * dp * dp);
		}
		// integral from -1 to x_j of the Lagrange basis at x_m, through the Legendre expansion
		for (int j = 0; j < nodes; ++j)
			for (int m = 0; m < nodes; ++m)
			{
				double sum = 0;
				for (int n = 0; n < nodes; ++n)
				{
					double q = n == 0 ? x[j] + 1 :
					                    (boost::math::legendre_p(n + 1, x[j]) - boost::math::legendre_p(n - 1, x[j])) / (2 * n + 1);
					sum += w[m] * boost::math::legendre_p(n, x[m]) * (2 * n + 1) / 2 * q;
				}
				S[j][m] = sum;
			}
	}
};

Quadrature const &quadrature()
{
	static Quadrature const q;
	return q;
}

using FormFunction = std::function<std::pair<Complex, Complex>(double)>;

CSeries panel_transport(FormFunction const &f, double a, double b, int N)
{
	auto const &q = quadrature();
	constexpr int n = Quadrature::nodes;
	double half = (b - a) / 2, mid = (a + b) / 2;
	std::array<std::array<Complex, n>, 2> fl;
	for (int m = 0; m < n; ++m)
	{
		auto [fa, fb] = f(mid + half * q.x[m]);
		fl[0][m] = fa * half;
		fl[1][m] = fb * half;
	}
	CSeries end = CSeries::one(N);
	auto &out = const_cast<std::vector<Complex> &>(end.data());
	std::vector<std::array<Complex, n>> values(CSeries::offset(N + 1));
	values[0].fill(1.0);
	for (int k = 0; k < N; ++k)
		for (size_t i = 0; i < (size_t(1) << k); ++i)
		{
			auto const &vi = values[CSeries::offset(k) + i];
			for (int l = 0; l < 2; ++l)
			{
				size_t child = CSeries::offset(k + 1) + (i << 1) + size_t(l);
				std::array<Complex, n> prod;
				Complex total = 0;
				for (int m = 0; m < n; ++m)
				{
					prod[m] = vi[m] * fl[l][m];
					total += q.w[m] * prod[m];
				}
				for (int j = 0; j < n; ++j)
				{
					Complex acc = 0;
					for (int m = 0; m < n; ++m)
						acc += q.S[j][m] * prod[m];
					values[child][j] = acc;
				}
				out[child] = total;
			}
		}
	return end;
}

CSeries interval_transport(FormFunction const &f, double a, double b, int N, double tol, double &error)
{
	if (a == b)
		return CSeries::one(N);
	auto run = [&](int panels) {
		CSeries r = CSeries::one(N);
		double h = (b - a) / panels;
		for (int p = 0; p < panels; ++p)
			r = r * panel_transport(f, a + p * h, p + 1 == panels ? b : a + (p + 1) * h, N);
		return r;
	};
	int panels = 2;
	CSeries prev = run(panels);
	while (panels < (1 << 14))
	{
		panels *= 2;
		CSeries cur = run(panels);
		double diff = max_abs_diff(cur, prev);
		if (diff <= tol * std::max(1.0, cur.max_abs()))
		{
			error += diff;
			return cur;
		}
		prev = cur;
	}
	throw TransportError("quadrature did not converge");
}

// integral of u^j log^k u from 0 to s as sum_i c_i s^(j+1) log^(k-i) s
std::vector<double> log_power_integral(int j, int k)
{
	std::vector<double> c(k + 1);
	double falling = 1;
	for (int i = 0; i <= k; ++i)
	{
		c[i] = (i % 2 ? -1.0 : 1.0) * falling / std::pow(j + 1.0, i + 1);
		falling *= k - i;
	}
	return c;
}

CSeries bracket(CSeries const &a, CSeries const &b)
{
	return a * b - b * a;
}

struct TangentialStart
{
	TangentialPoint point;
	CSeries value;
};

// regularized transport from the tangential start of a forward segment to parameter eps
TangentialStart local_expansion(SegmentForm const &sf, int N, double eps)
{
	constexpr int K = 64;
	constexpr int J = 32;
	constexpr double rho = 0.25;
	if (!(eps > 0 && eps <= rho / 2))
		throw TransportError("regularization offset must lie in (0, 0.125]");
	std::array<std::vector<Complex>, 2> samples{std::vector<Complex>(K), std::vector<Complex>(K)};
	std::vector<Complex> circle(K);
	for (int k = 0; k < K; ++k)
	{
		circle[k] = std::polar(rho, 2 * pi * k / K);
		auto [a, b] = sf.form(circle[k]);
		samples[0][k] = circle[k] * a;
		samples[1][k] = circle[k] * b;
	}
	auto taylor = [&](std::vector<Complex> const &v, int j) {
		Complex sum = 0;
		for (int k = 0; k < K; ++k)
			sum += v[k] * std::polar(1.0, -2 * pi * double(j) * k / K);
		return sum / double(K) / std::pow(rho, j);
	};
	std::array<double, 2> residue;
	std::array<std::vector<Complex>, 2> h;
	for (int l = 0; l < 2; ++l)
	{
		Complex r = taylor(samples[l], 0);
		residue[l] = std::round(r.real());
		if (std::abs(r - residue[l]) > 1e-8)
			throw TransportError("tangential start has a non-integral residue");
		for (int j = 0; j < J; ++j)
			h[l].push_back(taylor(samples[l], j + 1));
	}
	// check the expansion against the form inside the circle
	{
		Complex s = std::polar(rho / 2, 0.3);
		auto [a, b] = sf.form(s);
		std::array<Complex, 2> direct{a - residue[0] / s, b - residue[1] / s};
		for (int l = 0; l < 2; ++l)
		{
			Complex series = 0, p = 1;
			for (int j = 0; j < J; ++j, p *= s)
				series += h[l][j] * p;
			if (std::abs(series - direct[l]) > 1e-10 * std::max(1.0, std::abs(direct[l])))
				throw TransportError("regularization failed: local expansion does not converge");
		}
	}
	TangentialPoint::Base base;
	int m;
	if (residue[0] > 0 && residue[1] == 0)
		base = TangentialPoint::Base::zero, m = int(residue[0]);
	else if (residue[0] == 0 && residue[1] > 0)
		base = TangentialPoint::Base::one, m = int(residue[1]);
	else if (residue[0] < 0 && residue[0] == residue[1])
		base = TangentialPoint::Base::infinity, m = -int(residue[0]);
	else
		throw TransportError("segment does not start at a tangential base point");
	Complex lead = 0;
	for (int k = 0; k < K; ++k)
		lead += sf.local(circle[k], base) / std::pow(circle[k], m);
	lead /= double(K);
	double lambda = std::abs(lead);
	TangentialPoint point{base, lead / lambda};

	CSeries R = CSeries::letter(N, 0).scaled(residue[0]) + CSeries::letter(N, 1).scaled(residue[1]);
	// M_{j,n} = ad_R^n(h_j) / n!, the conjugate exp(R log u) h exp(-R log u)
	std::vector<std::vector<CSeries>> M(J, std::vector<CSeries>(N, CSeries(N)));
	for (int j = 0; j < J; ++j)
	{
		CSeries term = CSeries::letter(N, 0).scaled(h[0][j]) + CSeries::letter(N, 1).scaled(h[1][j]);
		for (int n = 0; n < N; ++n)
		{
			M[j][n] = term;
			term = bracket(R, term).scaled(1.0 / (n + 1));
		}
	}
	// K(s) = sum c_{j,k} s^j log^k s, K' = K M, K(0) = 1
	using Expansion = std::vector<std::vector<CSeries>>;
	auto zero = [&] { return Expansion(J + 1, std::vector<CSeries>(N + 1, CSeries(N))); };
	Expansion Kx = zero();
	Kx[0][0] = CSeries::one(N);
	for (int iter = 0; iter < N; ++iter)
	{
		Expansion next = zero();
		next[0][0] = CSeries::one(N);
		for (int j1 = 0; j1 <= J; ++j1)
			for (int k1 = 0; k1 <= N; ++k1)
			{
				if (Kx[j1][k1].max_abs() == 0)
					continue;
				for (int j2 = 0; j1 + j2 < J; ++j2)
					for (int n = 0; n < N && k1 + n <= N; ++n)
					{
						CSeries prod = Kx[j1][k1] * M[j2][n];
						if (prod.max_abs() == 0)
							continue;
						int j = j1 + j2, k = k1 + n;
						auto c = log_power_integral(j, k);
						for (int i = 0; i <= k; ++i)
							next[j + 1][k - i] += prod.scaled(c[i]);
					}
			}
		Kx = std::move(next);
	}
	double L = std::log(eps);
	CSeries Ke(N);
	for (int j = 0; j <= J; ++j)
		for (int k = 0; k <= N; ++k)
			Ke += Kx[j][k].scaled(std::pow(eps, j) * std::pow(L, k));
	CSeries G = Ke * exp(R.scaled(L));
	CSeries prefactor = exp(R.scaled(std::log(lambda) / m));
	return {point, prefactor * G};
}

struct SegmentTransport
{
	CSeries value;
	std::optional<TangentialPoint> tangential;
	double error = 0;
};

SegmentTransport forward_transport(Segment const &seg, TransportOptions const &opt)
{
	SegmentForm sf{seg};
	int N = opt.degree;
	SegmentTransport out{CSeries::one(N), std::nullopt, 0};
	FormFunction in_s = [&](double s) { return sf.form(s); };
	if (!seg.tangential_start())
	{
		out.value = interval_transport(in_s, 0, 1, N, opt.tolerance, out.error);
		return out;
	}
	auto start = local_expansion(sf, N, opt.epsilon);
	out.tangential = start.point;
	constexpr double handover = 0.25;
	FormFunction in_sigma = [&](double sigma) {
		double s = std::exp(sigma);
		auto [a, b] = sf.form(s);
		return std::pair<Complex, Complex>{a * s, b * s};
	};
	CSeries near = interval_transport(in_sigma, std::log(opt.epsilon), std::log(handover), N, opt.tolerance, out.error);
	CSeries far = interval_transport(in_s, handover, 1, N, opt.tolerance, out.error);
	out.value = start.value * near * far;
	return out;
}

Complex segment_start(Segment const &seg)
{
	SegmentForm sf{seg};
	return sf.z(seg.reversed ? 1.0 : 0.0);
}

Complex segment_end(Segment const &seg)
{
	SegmentForm sf{seg};
	return sf.z(seg.reversed ? 0.0 : 1.0);
}

bool close_points(Complex a, Complex b)
{
	if (std::abs(a) > 1e6 && std::abs(b) > 1e6)
		return std::abs(1.0 / a - 1.0 / b) < 1e-9;
	return std::abs(a - b) < 1e-9 * std::max(1.0, std::abs(a));
}

} // namespace

void validate(PathSpec const &p)
{
	if (p.segments.empty())
	{
		if (!p.start.same(p.end))
			throw TransportError("empty path with distinct endpoints");
		return;
	}
	for (size_t k = 0; k < p.segments.size(); ++k)
	{
		auto const &seg = p.segments[k];
		bool tangential_first = seg.tangential_start() && !seg.reversed;
		bool tangential_last = seg.tangential_start() && seg.reversed;
		if (tangential_first && k != 0)
			throw TransportError("tangential start inside a path");
		if (tangential_last && k + 1 != p.segments.size())
			throw TransportError("tangential end inside a path");
		if (seg.kind == Segment::Kind::image)
		{
			if (!(0 < seg.x && seg.x < seg.y && seg.y < 1))
				throw TransportError("image segment outside the chamber 0 < x < y < 1");
		}
		SegmentForm sf{seg};
		constexpr int samples = 256;
		for (int q = 0; q <= samples; ++q)
		{
			double s = double(q) / samples;
			if (seg.tangential_start() && s < 1e-3)
				continue;
			Complex z = sf.z(s);
			if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) < 1e-10 || std::abs(z - 1.0) < 1e-10 ||
			    std::abs(z) > 1e10)
				throw TransportError(fmt::format("segment {} touches a singularity", k));
		}
		if (k + 1 < p.segments.size() && !close_points(segment_end(seg), segment_start(p.segments[k + 1])))
			throw TransportError(fmt::format("segments {} and {} do not chain", k, k + 1));
	}
	auto const &first = p.segments.front();
	auto const &last = p.segments.back();
	if ((first.tangential_start() && !first.reversed) != p.start.tangential())
		throw TransportError("declared start does not match the first segment");
	if ((last.tangential_start() && last.reversed) != p.end.tangential())
		throw TransportError("declared end does not match the last segment");
	auto check_ray = [](Segment const &seg, TangentialPoint const &declared) {
		using Base = TangentialPoint::Base;
		if (seg.kind != Segment::Kind::ray || (seg.chart == Chart::w && seg.base != 0))
			return;
		Base base = seg.chart == Chart::w ? Base::infinity : seg.base == 0 ? Base::zero : Base::one;
		TangentialPoint ray{base, seg.direction};
		if (!declared.same(ray))
			throw TransportError(fmt::format("path declares tangential point {} but the ray is {}", declared.str(), ray.str()));
	};
	if (!first.reversed)
		check_ray(first, p.start);
	if (last.reversed)
		check_ray(last, p.end);
	if (!p.start.tangential() && !close_points(segment_start(first), p.start.value))
		throw TransportError("first segment does not start at the declared point");
	if (!p.end.tangential() && !close_points(segment_end(last), p.end.value))
		throw TransportError("last segment does not end at the declared point");
}

PathSpec concatenate(PathSpec const &a, PathSpec const &b)
{
	if (!a.end.same(b.start))
		throw TransportError("concatenation endpoint mismatch");
	PathSpec r{a.start, b.end, a.segments};
	r.segments.insert(r.segments.end(), b.segments.begin(), b.segments.end());
	return r;
}

Associator identity_associator(TangentialPoint const &at, int degree)
{
	return {CSeries::one(degree), at, at, 0};
}

Associator transport(PathSpec const &p, TransportOptions const &opt)
{
	validate(p);
	Associator out = identity_associator(p.start, opt.degree);
	out.end = p.end;
	for (auto const &seg : p.segments)
	{
		auto t = forward_transport(seg.reversed ? seg.reverse() : seg, opt);
		if (t.tangential)
		{
			auto const &declared = seg.reversed ? p.end : p.start;
			if (!t.tangential->same(declared, 1e-8))
				throw TransportError(
				    fmt::format("path declares tangential point {} but the segment starts at {}", declared.str(), t.tangential->str()));
		}
		out.value = out.value * (seg.reversed ? inverse(t.value) : t.value);
		out.error_estimate += t.error;
	}
	return out;
}

Associator compose(Associator const &a, Associator const &b)
{
	bool match = a.end.tangential() ? a.end.same(b.start) : close_points(a.end.value, b.start.value) && !b.start.tangential();
	if (!match)
		throw TransportError(fmt::format("cannot compose: {} does not meet {}", a.end.str(), b.start.str()));
	return {a.value * b.value, a.start, b.end, a.error_estimate + b.error_estimate};
}

Extraction extract(Associator const &a)
{
	auto const &v = a.value;
	if (v.truncation() < 3)
		throw TransportError("extraction needs degree 3");
	if (shuffle_defect(v) > 1e-8 * std::max(1.0, v.max_abs()))
		throw TransportError("associator is not group-like");
	Extraction e;
	e.log = v.coeff("X");
	e.log1m = v.coeff("Y");
	e.Li2 = -v.coeff("YX");
	e.Li3 = -v.coeff("YXX");
	CSeries L = log(inverse(v));
	e.li[0] = -e.log / two_pi_i;
	e.li[1] = L.coeff("Y") / two_pi_i;
	e.li[2] = L.coeff("XY") / std::pow(two_pi_i, 2);
	e.li[3] = L.coeff("XXY") / std::pow(two_pi_i, 3);
	Complex Li1 = -e.log1m;
	e.li_bernoulli[0] = e.li[0];
	e.li_bernoulli[1] = Li1 / two_pi_i;
	e.li_bernoulli[2] = -(e.Li2 - 0.5 * e.log * Li1) / std::pow(two_pi_i, 2);
	e.li_bernoulli[3] = (e.Li3 - 0.5 * e.log * e.Li2 + e.log * e.log * Li1 / 12.0) / std::pow(two_pi_i, 3);
	for (int k = 1; k <= 3; ++k)
		e.consistency = std::max(e.consistency, std::abs(e.li[k] - e.li_bernoulli[k]));
	return e;
}

PathSpec straight_path(double z)
{
	if (!(0 < z && z < 1))
		throw TransportError("straight path needs 0 < z < 1");
	return {TangentialPoint::v01(), TangentialPoint::at(z), {Segment::make_ray(0, 1.0, z)}};
}

PathSpec standard_delta(int i)
{
	auto ray = Segment::make_ray(0, 1.0, 0.5);
	auto arc = Segment::make_arc(0.0, 0.5, 0, pi);
	switch (i)
	{
	case 5:
		return {TangentialPoint::v01(), TangentialPoint::v0inf(), {ray, arc, Segment::make_ray(0, -1.0, 0.5).reverse()}};
	case 6:
		return {TangentialPoint::v01(), TangentialPoint::v10(), {ray, Segment::make_ray(1, -1.0, 0.5).reverse()}};
	case 7:
		return {TangentialPoint::v01(),
		        TangentialPoint::vinf0(),
		        {ray, arc, Segment::make_line(-0.5, -2.0), Segment::make_ray(0, -1.0, 0.5, Chart::w).reverse()}};
	default:
		if (i < 1 || i > 9)
			throw TransportError("delta index out of range");
		return {TangentialPoint::v01(), TangentialPoint::v01(), {}};
	}
}

std::array<TangentialPoint, 9> const &pushforward_starts()
{
	static std::array<TangentialPoint, 9> const s{
	    TangentialPoint::v01(), TangentialPoint::v01(),  TangentialPoint::v01(),   TangentialPoint::v01(), TangentialPoint::v0inf(),
	    TangentialPoint::v10(), TangentialPoint::vinf0(), TangentialPoint::v01(), TangentialPoint::v01(),
	};
	return s;
}

std::array<Complex, 2> BasePath::leg_point(int leg, double s) const
{
	if (leg == 1)
	{
		double t = y * s;
		return {t * t, t};
	}
	return {y * y + (x - y * y) * s, y};
}

BasePath canonical_base_path(double x, double y)
{
	if (!(0 < x && x < y && y < 1))
		throw TransportError(fmt::format("({}, {}) is outside the chamber 0 < x < y < 1", x, y));
	BasePath b{x, y, {}};
	for (int i = 1; i <= 9; ++i)
	{
		Complex z = nine_functions()[i - 1].evaluate(x, y);
		b.pushforwards[i - 1] = {pushforward_starts()[i - 1],
		                         TangentialPoint::at(z),
		                         {Segment::make_image(i, 1, x, y), Segment::make_image(i, 2, x, y)}};
	}
	return b;
}

PathSpec direct_path(int i, double x, double y)
{
	if (!(0 < x && x < y && y < 1))
		throw TransportError("direct path needs 0 < x < y < 1");
	double z = nine_functions()[i - 1].evaluate(x, y).real();
	if (i != 5 && i != 7)
		return straight_path(z);
	PathSpec p{TangentialPoint::v01(),
	           TangentialPoint::at(z),
	           {Segment::make_ray(0, 1.0, 0.5), Segment::make_arc(0.0, 0.5, 0, pi)}};
	if (std::abs(z + 0.5) > 1e-12)
		p.segments.push_back(Segment::make_line(-0.5, z));
	return p;
}

SystemEvaluation evaluate_system(double x, double y, TransportOptions const &opt)
{
	auto base = canonical_base_path(x, y);
	SystemEvaluation sys{x, y, {}, {}};
	for (int i = 1; i <= 9; ++i)
	{
		auto delta = transport(standard_delta(i), opt);
		auto push = transport(base.pushforwards[i - 1], opt);
		sys.gamma[i - 1] = compose(delta, push);
		sys.values[i - 1] = extract(sys.gamma[i - 1]);
	}
	return sys;
}

EquationResidual verify_equation(std::string const &id, SystemEvaluation const &sys, double tol)
{
	static std::map<std::string, std::string> const names{{"aC", "a"}, {"bC", "b"}, {"cC", "c"}, {"dC", "d"}};
	auto it = names.find(id);
	if (it == names.end())
		throw std::invalid_argument("unknown complex identity " + id);
	auto k = coefficients_by_name(it->second);
	auto const &v = sys.values;
	Complex L9 = v[8].log, L6 = v[5].log;
	double z2 = pi * pi / 6, z3 = boost::math::zeta(3.0);
	EquationResidual r{id, sys.x, sys.y, 0, 0, 0, false};
	for (int i = 0; i < 9; ++i)
		r.lhs += k[i].convert_to<double>() * (id == "dC" ? v[i].Li3 : v[i].Li2);
	if (id == "aC")
		r.rhs = L9 * L6 - z2;
	else if (id == "bC")
		r.rhs = 0.5 * L9 * L9;
	else if (id == "cC")
		r.rhs = -z2 + L9 * L6 - 0.5 * L9 * L9;
	else
	{
		r.lhs += 2 * z3;
		r.rhs = L9 * L9 * L6 - 2 * z2 * L9 - L9 * L9 * L9 / 3.0;
	}
	r.residual = std::abs(r.lhs - r.rhs);
	r.pass = r.residual <= tol;
	return r;
}

EquationResidual verify_equation(std::string const &id, double x, double y, double tol, TransportOptions const &opt)
{
	return verify_equation(id, evaluate_system(x, y, opt), tol);
}

std::vector<BranchCheck> branch_ledger(SystemEvaluation const &sys)
{
	double x = sys.x, y = sys.y;
	double lx = std::log(x), ly = std::log(y), l1x = std::log(1 - x), l1y = std::log(1 - y), l1xy = std::log(1 - x * y),
	       l1xoy = std::log(1 - x / y);
	Complex ipi{0, pi};
	std::array<Complex, 9> logz{lx + 2 * l1y - ly - 2 * l1x, lx + ly,  lx - ly,         lx + l1y - ly - l1x, lx + l1y - l1x + ipi,
	                            l1y - l1x,                  l1y - ly - l1x + ipi, lx, ly};
	std::array<Complex, 9> log1m{l1xoy + l1xy - 2 * l1x, l1xy, l1xoy, l1xoy - l1x, l1xy - l1x, ly + l1xoy - l1x, l1xy - ly - l1x, l1x, l1y};
	std::vector<BranchCheck> out;
	for (int i = 0; i < 9; ++i)
	{
		out.push_back({i + 1, "log", sys.values[i].log, logz[i], std::abs(sys.values[i].log - logz[i])});
		out.push_back({i + 1, "log(1-z)", sys.values[i].log1m, log1m[i], std::abs(sys.values[i].log1m - log1m[i])});
	}
	return out;
}

std::vector<CompositionCheck> composition_law(SystemEvaluation const &sys, TransportOptions const &opt)
{
	std::vector<CompositionCheck> out;
	for (int i = 1; i <= 9; ++i)
	{
		auto direct = transport(direct_path(i, sys.x, sys.y), opt);
		out.push_back({i, max_abs_diff(direct.value, sys.gamma[i - 1].value)});
	}
	return out;
}

std::vector<DrinfeldConstant> drinfeld_constants(TransportOptions const &opt)
{
	Complex li3_10 = boost::math::zeta(3.0) / (8 * pi * pi * pi * Complex(0, 1));
	std::map<int, std::array<Complex, 4>> const published{
	    {5, {0.5, 0, 0, 0}},
	    {6, {0, 0, -1.0 / 24, li3_10}},
	    {7, {0.5, 0, 1.0 / 24, 0}},
	};
	std::vector<DrinfeldConstant> out;
	for (auto const &[i, expected] : published)
	{
		auto e = extract(transport(standard_delta(i), opt));
		for (int j = 0; j < 4; ++j)
			out.push_back({i, j, -e.li[j], expected[j], std::abs(-e.li[j] - expected[j])});
	}
	return out;
}

EpsilonCheck epsilon_schedule(std::string const &name, PathSpec const &p, std::vector<double> const &epsilons, TransportOptions opt)
{
	EpsilonCheck out{name, epsilons, 0};
	std::optional<CSeries> first;
	for (double eps : epsilons)
	{
		opt.epsilon = eps;
		auto a = transport(p, opt);
		if (!first)
			first = a.value;
		else
			out.spread = std::max(out.spread, max_abs_diff(*first, a.value));
	}
	return out;
}

namespace {

std::string chart_name(Chart c)
{
	return c == Chart::z ? "z" : "w";
}

Chart parse_chart(std::string const &s)
{
	if (s == "z")
		return Chart::z;
	if (s == "w")
		return Chart::w;
	throw TransportError("unknown chart " + s);
}

nlohmann::json complex_json(Complex z)
{
	return nlohmann::json::array({z.real(), z.imag()});
}

Complex json_complex(nlohmann::json const &j)
{
	if (j.is_number())
		return j.get<double>();
	return {j.at(0).get<double>(), j.at(1).get<double>()};
}

} // namespace

void to_json(nlohmann::json &j, TangentialPoint const &p)
{
	static char const *const names[] = {"0", "1", "inf", "interior"};
	j = nlohmann::json{{"base", names[int(p.base)]}};
	j[p.tangential() ? "direction" : "point"] = complex_json(p.value);
}

void from_json(nlohmann::json const &j, TangentialPoint &p)
{
	auto base = j.at("base").get<std::string>();
	if (base == "0")
		p.base = TangentialPoint::Base::zero;
	else if (base == "1")
		p.base = TangentialPoint::Base::one;
	else if (base == "inf")
		p.base = TangentialPoint::Base::infinity;
	else if (base == "interior")
		p.base = TangentialPoint::Base::interior;
	else
		throw TransportError("unknown base point " + base);
	p.value = json_complex(j.at(p.tangential() ? "direction" : "point"));
}

void to_json(nlohmann::json &j, Segment const &s)
{
	switch (s.kind)
	{
	case Segment::Kind::line:
		j = {{"type", "line"}, {"from", complex_json(s.from)}, {"to", complex_json(s.to)}};
		break;
	case Segment::Kind::arc:
		j = {{"type", "arc"}, {"center", complex_json(s.center)}, {"radius", s.radius}, {"from_angle", s.angle0}, {"to_angle", s.angle1}};
		break;
	case Segment::Kind::ray:
		j = {{"type", "ray"}, {"base", s.base}, {"direction", complex_json(s.direction)}, {"length", s.length}};
		break;
	case Segment::Kind::image:
		j = {{"type", "image"}, {"function", s.function}, {"leg", s.leg}, {"x", s.x}, {"y", s.y}};
		break;
	}
	if (s.kind != Segment::Kind::image)
		j["chart"] = chart_name(s.chart);
	j["reversed"] = s.reversed;
}

void from_json(nlohmann::json const &j, Segment &s)
{
	auto type = j.at("type").get<std::string>();
	Chart chart = parse_chart(j.value("chart", std::string("z")));
	if (type == "line")
		s = Segment::make_line(json_complex(j.at("from")), json_complex(j.at("to")), chart);
	else if (type == "arc")
		s = Segment::make_arc(json_complex(j.at("center")), j.at("radius").get<double>(), j.at("from_angle").get<double>(),
		                      j.at("to_angle").get<double>(), chart);
	else if (type == "ray")
		s = Segment::make_ray(j.at("base").get<int>(), json_complex(j.at("direction")), j.at("length").get<double>(), chart);
	else if (type == "image")
		s = Segment::make_image(j.at("function").get<int>(), j.at("leg").get<int>(), j.at("x").get<double>(), j.at("y").get<double>());
	else
		throw TransportError("unknown segment type " + type);
	s.reversed = j.value("reversed", false);
}

void to_json(nlohmann::json &j, PathSpec const &p)
{
	j = {{"start", p.start}, {"end", p.end}, {"segments", p.segments}};
}

void from_json(nlohmann::json const &j, PathSpec &p)
{
	p.start = j.at("start").get<TangentialPoint>();
	p.end = j.at("end").get<TangentialPoint>();
	p.segments = j.at("segments").get<std::vector<Segment>>();
}

std::string PathSpec::str() const
{
	return nlohmann::json(*this).dump();
}

} // namespace polyfe
