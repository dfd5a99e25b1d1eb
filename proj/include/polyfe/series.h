#pragma once

#include "polyfe/rational.h"
#include "polyfe/words.h"
#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyfe {

inline bool ring_is_zero(Rational const &q)
{
	return q == 0;
}

inline std::string ring_str(Rational const &q)
{
	return to_string(q);
}

class SeriesError : public std::runtime_error
{
  public:
	using std::runtime_error::runtime_error;
};

// a word in the series alphabet: each char is a letter index
using LetterWord = std::string;

// truncated noncommutative polynomial over a commutative ring R that is
// constructible from Rational
template <class R> class Series
{
	std::vector<std::string> letters_;
	int N_;
	std::map<LetterWord, R> terms_;

	void check(Series const &o) const
	{
		if (letters_ != o.letters_)
			throw SeriesError("series alphabet mismatch");
	}

  public:
	Series(std::vector<std::string> letters, int N) : letters_(std::move(letters)), N_(N)
	{
		if (N < 0)
			throw SeriesError("negative truncation degree");
	}

	static Series scalar(std::vector<std::string> letters, int N, R const &c)
	{
		Series s(std::move(letters), N);
		s.add(LetterWord(), c);
		return s;
	}

	static Series one(std::vector<std::string> letters, int N)
	{
		return scalar(std::move(letters), N, R(Rational(1)));
	}

	static Series letter(std::vector<std::string> letters, int N, int index)
	{
		Series s(std::move(letters), N);
		s.add(LetterWord(1, char(index)), R(Rational(1)));
		return s;
	}

	std::vector<std::string> const &letters() const { return letters_; }
	int truncation() const { return N_; }
	std::map<LetterWord, R> const &terms() const { return terms_; }
	bool is_zero() const { return terms_.empty(); }

	void add(LetterWord const &w, R const &c)
	{
		if (int(w.size()) > N_ || ring_is_zero(c))
			return;
		auto [it, fresh] = terms_.emplace(w, c);
		if (!fresh)
		{
			it->second += c;
			if (ring_is_zero(it->second))
				terms_.erase(it);
		}
	}

	R coeff(LetterWord const &w) const
	{
		auto it = terms_.find(w);
		return it == terms_.end() ? R(Rational(0)) : it->second;
	}

	// coefficient addressed by letter names, e.g. {"Y","X"}
	R coeff(std::vector<std::string> const &names) const
	{
		LetterWord w;
		for (auto const &n : names)
		{
			auto it = std::find(letters_.begin(), letters_.end(), n);
			if (it == letters_.end())
				throw SeriesError("unknown series letter " + n);
			w += char(it - letters_.begin());
		}
		return coeff(w);
	}

	R constant() const { return coeff(LetterWord()); }

	Series truncate(int N) const
	{
		Series r(letters_, std::min(N, N_));
		for (auto const &[w, c] : terms_)
			r.add(w, c);
		return r;
	}

	Series component(int k) const
	{
		Series r(letters_, N_);
		for (auto const &[w, c] : terms_)
			if (int(w.size()) == k)
				r.add(w, c);
		return r;
	}

	Series &operator+=(Series const &o)
	{
		check(o);
		N_ = std::min(N_, o.N_);
		for (auto it = terms_.begin(); it != terms_.end();)
			it = int(it->first.size()) > N_ ? terms_.erase(it) : std::next(it);
		for (auto const &[w, c] : o.terms_)
			add(w, c);
		return *this;
	}

	Series operator-() const
	{
		Series r = *this;
		for (auto &[w, c] : r.terms_)
			c = R(Rational(0)) - c;
		return r;
	}

	Series &operator-=(Series const &o) { return *this += -o; }

	Series scaled(R const &k) const
	{
		Series r(letters_, N_);
		for (auto const &[w, c] : terms_)
			r.add(w, c * k);
		return r;
	}

	friend Series operator+(Series a, Series const &b) { return a += b; }
	friend Series operator-(Series a, Series const &b) { return a -= b; }
	friend Series operator*(R const &k, Series const &a) { return a.scaled(k); }

	friend Series operator*(Series const &a, Series const &b)
	{
		a.check(b);
		Series r(a.letters_, std::min(a.N_, b.N_));
		for (auto const &[wa, ca] : a.terms_)
			for (auto const &[wb, cb] : b.terms_)
				if (int(wa.size() + wb.size()) <= r.N_)
					r.add(wa + wb, ca * cb);
		return r;
	}

	friend bool operator==(Series const &a, Series const &b)
	{
		return a.letters_ == b.letters_ && a.terms_ == b.terms_;
	}

	// lexicographic by (length, word); "0" for the zero series
	std::string str() const
	{
		if (terms_.empty())
			return "0";
		std::vector<LetterWord> words;
		for (auto const &[w, c] : terms_)
			words.push_back(w);
		std::stable_sort(words.begin(), words.end(),
		                 [](auto const &a, auto const &b) { return a.size() < b.size(); });
		std::string r;
		for (auto const &w : words)
		{
			if (!r.empty())
				r += " + ";
			r += "(" + ring_str(terms_.at(w)) + ")";
			for (char ch : w)
				r += letters_[int(ch)];
		}
		return r;
	}
};

template <class R> Series<R> bracket(Series<R> const &a, Series<R> const &b)
{
	return a * b - b * a;
}

template <class R> Series<R> exp(Series<R> const &a)
{
	if (!ring_is_zero(a.constant()))
		throw SeriesError("exp needs a zero constant term");
	auto r = Series<R>::one(a.letters(), a.truncation());
	auto power = r;
	for (int n = 1; n <= a.truncation(); ++n)
	{
		power = (power * a).scaled(R(Rational(1, n)));
		r += power;
	}
	return r;
}

template <class R> Series<R> log(Series<R> const &g)
{
	auto h = g - Series<R>::one(g.letters(), g.truncation());
	if (!ring_is_zero(h.constant()))
		throw SeriesError("log needs constant term 1");
	Series<R> r(g.letters(), g.truncation());
	auto power = Series<R>::one(g.letters(), g.truncation());
	for (int n = 1; n <= g.truncation(); ++n)
	{
		power = power * h;
		r += power.scaled(R(Rational(n % 2 ? 1 : -1, n)));
	}
	return r;
}

// inverse of a series with constant term 1
template <class R> Series<R> inverse(Series<R> const &g)
{
	auto one = Series<R>::one(g.letters(), g.truncation());
	auto h = one - g;
	if (!ring_is_zero(h.constant()))
		throw SeriesError("inverse needs constant term 1");
	auto r = one;
	auto power = one;
	for (int n = 1; n <= g.truncation(); ++n)
	{
		power = power * h;
		r += power;
	}
	return r;
}

template <class R> Series<R> bch(Series<R> const &a, Series<R> const &b)
{
	return log(exp(a) * exp(b));
}

// continuous algebra map sending letter j to images[j] (zero constant terms)
template <class R>
Series<R> substitute(Series<R> const &s, std::vector<Series<R>> const &images)
{
	if (images.size() != s.letters().size())
		throw SeriesError("substitution needs one image per letter");
	auto const &target = images.at(0);
	int N = s.truncation();
	for (auto const &img : images)
		N = std::min(N, img.truncation());
	Series<R> r(target.letters(), N);
	std::map<LetterWord, Series<R>> cache;
	for (auto const &[w, c] : s.terms())
	{
		auto prod = Series<R>::one(target.letters(), N);
		for (char ch : w)
			prod = prod * images[int(ch)];
		r += prod.scaled(c);
	}
	return r;
}

// Lyndon words of length k over m letters, increasing lexicographic order
std::vector<LetterWord> lyndon_words(int m, int k);

// standard factorization w = uv with v the longest proper Lyndon suffix
std::pair<LetterWord, LetterWord> standard_factorization(LetterWord const &w);

// bracket tree of a Lyndon word: [u,v] when u is a single letter,
// otherwise [v,u]; gives [X,[X,Y]] and [Y,[X,Y]] in degree 3
std::string lyndon_bracket_text(LetterWord const &w, std::vector<std::string> const &letters);

template <class R>
Series<R> lyndon_bracket(LetterWord const &w, std::vector<std::string> const &letters, int N)
{
	if (w.size() == 1)
		return Series<R>::letter(letters, N, int(w[0]));
	auto [u, v] = standard_factorization(w);
	auto bu = lyndon_bracket<R>(u, letters, N);
	auto bv = lyndon_bracket<R>(v, letters, N);
	return u.size() == 1 ? bracket(bu, bv) : bracket(bv, bu);
}

// coefficients of the degree-k component over the Lyndon brackets, or
// nullopt when that component is not a Lie element
template <class R>
std::optional<std::vector<R>> try_lyndon_decompose(Series<R> const &v, int k)
{
	auto const &letters = v.letters();
	auto rest = v.component(k);
	std::vector<R> out;
	for (auto const &w : lyndon_words(int(letters.size()), k))
	{
		auto b = lyndon_bracket<R>(w, letters, k);
		R lead = b.coeff(w);
		R c = rest.coeff(w) * lead;
		if (!ring_is_zero(c))
			rest -= b.scaled(c);
		out.push_back(c);
	}
	if (!rest.is_zero())
		return std::nullopt;
	return out;
}

template <class R> std::vector<R> lyndon_decompose(Series<R> const &v, int k)
{
	auto r = try_lyndon_decompose(v, k);
	if (!r)
		throw SeriesError("degree-" + std::to_string(k) + " component is not a Lie element");
	return *r;
}

template <class R> bool is_lie(Series<R> const &v)
{
	if (!ring_is_zero(v.constant()))
		return false;
	for (int k = 1; k <= v.truncation(); ++k)
		if (!try_lyndon_decompose(v, k))
			return false;
	return true;
}

// coefficient of e_k = ad(X)^(k-1)(Y) in the Lyndon expansion; letters 0=X, 1=Y
template <class R> R phi(Series<R> const &v, int k)
{
	if (k < 1 || k > v.truncation())
		throw SeriesError("phi_k needs 1 <= k <= N");
	auto words = lyndon_words(int(v.letters().size()), k);
	auto target = LetterWord(k - 1, char(0)) + char(1);
	auto coeffs = lyndon_decompose(v, k);
	for (size_t i = 0; i < words.size(); ++i)
		if (words[i] == target)
			return coeffs[i];
	throw SeriesError("alphabet has no second letter");
}

// l_j -> exp(letter j) extended multiplicatively
template <class R> Series<R> magnus_embed(Word const &w, int N)
{
	auto const &names = w.alphabet()->letters;
	auto r = Series<R>::one(names, N);
	for (auto const &s : w.syllables())
	{
		auto e = Series<R>::letter(names, N, s.letter).scaled(R(Rational(s.exponent)));
		r = r * exp(e);
	}
	return r;
}

using QSeries = Series<Rational>;

} // namespace polyfe
