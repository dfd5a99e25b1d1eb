#include "polyfe/series.h"

namespace polyfe {

std::vector<LetterWord> lyndon_words(int m, int k)
{
	// Duval's generation gives Lyndon words of length <= k in lex order
	std::vector<LetterWord> out;
	if (m <= 0 || k <= 0)
		return out;
	std::vector<int> w{-1};
	while (!w.empty())
	{
		++w.back();
		if (int(w.size()) == k)
		{
			LetterWord s;
			for (int c : w)
				s += char(c);
			out.push_back(s);
		}
		size_t n = w.size();
		while (int(w.size()) < k)
			w.push_back(w[w.size() - n]);
		while (!w.empty() && w.back() == m - 1)
			w.pop_back();
	}
	return out;
}

namespace {

bool is_lyndon(LetterWord const &w)
{
	for (size_t i = 1; i < w.size(); ++i)
		if (!(w < w.substr(i)))
			return false;
	return !w.empty();
}

} // namespace

std::pair<LetterWord, LetterWord> standard_factorization(LetterWord const &w)
{
	for (size_t i = 1; i < w.size(); ++i)
		if (is_lyndon(w.substr(i)))
			return {w.substr(0, i), w.substr(i)};
	throw SeriesError("standard factorization of a single letter");
}

std::string lyndon_bracket_text(LetterWord const &w, std::vector<std::string> const &letters)
{
	if (w.size() == 1)
		return letters[int(w[0])];
	auto [u, v] = standard_factorization(w);
	auto bu = lyndon_bracket_text(u, letters);
	auto bv = lyndon_bracket_text(v, letters);
	return u.size() == 1 ? "[" + bu + "," + bv + "]" : "[" + bv + "," + bu + "]";
}

} // namespace polyfe
