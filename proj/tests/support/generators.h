#pragma once

#include "polyfe/config.h"
#include "polyfe/series.h"
#include "polyfe/words.h"
#include <ostream>
#include <random>
#include <string>

namespace polyfe {

inline void PrintTo(Word const &w, std::ostream *os)
{
	*os << w.str();
}

} // namespace polyfe

namespace polyfe::testing {

inline std::string data(std::string const &file)
{
	return default_data_dir() + "/" + file;
}

inline Word random_word(std::mt19937 &rng, AlphabetPtr const &alphabet, int max_syllables = 12, int max_exponent = 3)
{
	std::uniform_int_distribution<int> count(0, max_syllables);
	std::uniform_int_distribution<int> letter(0, alphabet->size() - 1);
	std::uniform_int_distribution<int> exponent(-max_exponent, max_exponent);
	std::vector<Syllable> s;
	for (int n = count(rng); n > 0; --n)
	{
		int e = 0;
		while (e == 0)
			e = exponent(rng);
		s.push_back({letter(rng), e});
	}
	return Word(alphabet, s);
}

inline Rational random_rational(std::mt19937 &rng, int range = 5)
{
	std::uniform_int_distribution<int> num(-range, range);
	std::uniform_int_distribution<int> den(1, range);
	return make_rational(num(rng), den(rng));
}

// random rational series with zero constant term
inline QSeries random_series(std::mt19937 &rng, std::vector<std::string> const &letters, int N, int terms = 8)
{
	std::uniform_int_distribution<int> length(1, N);
	std::uniform_int_distribution<int> letter(0, int(letters.size()) - 1);
	QSeries s(letters, N);
	for (int n = 0; n < terms; ++n)
	{
		LetterWord w;
		for (int k = length(rng); k > 0; --k)
			w += char(letter(rng));
		s.add(w, random_rational(rng));
	}
	return s;
}

// random Lie element: a combination of nested brackets of letters
inline QSeries random_lie(std::mt19937 &rng, std::vector<std::string> const &letters, int N, int terms = 6)
{
	std::uniform_int_distribution<int> depth(1, N);
	std::uniform_int_distribution<int> letter(0, int(letters.size()) - 1);
	QSeries s(letters, N);
	for (int n = 0; n < terms; ++n)
	{
		auto b = QSeries::letter(letters, N, letter(rng));
		for (int k = depth(rng); k > 1; --k)
			b = bracket(QSeries::letter(letters, N, letter(rng)), b);
		s += b.scaled(random_rational(rng));
	}
	return s;
}

} // namespace polyfe::testing
