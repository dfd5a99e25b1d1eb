#include "polyfe/words.h"
#include <fmt/format.h>
#include <fstream>
#include <set>
#include <sstream>

namespace polyfe {

Rational parse_rational(std::string const &text)
{
	auto slash = text.find('/');
	if (slash == std::string::npos)
		return Rational(Integer(text));
	return Rational(Integer(text.substr(0, slash)), Integer(text.substr(slash + 1)));
}

Alphabet::Alphabet(std::string name_, std::vector<std::string> letters_)
	: name(std::move(name_)), letters(std::move(letters_))
{
	if (letters.empty())
		throw WordError(fmt::format("alphabet {} is empty", name));
	std::set<std::string> seen;
	for (auto const &l : letters)
		if (!seen.insert(l).second)
			throw WordError(fmt::format("alphabet {} repeats letter {}", name, l));
}

std::optional<int> Alphabet::find(std::string_view letter) const
{
	for (int i = 0; i < size(); ++i)
		if (letters[i] == letter)
			return i;
	return std::nullopt;
}

std::vector<Syllable> reduce(std::vector<Syllable> const &syllables)
{
	std::vector<Syllable> out;
	for (auto const &s : syllables)
	{
		if (s.exponent == 0)
			continue;
		if (!out.empty() && out.back().letter == s.letter)
		{
			out.back().exponent += s.exponent;
			if (out.back().exponent == 0)
				out.pop_back();
		}
		else
			out.push_back(s);
	}
	return out;
}

Word::Word(AlphabetPtr alphabet, std::vector<Syllable> syllables)
	: alphabet_(std::move(alphabet)), syllables_(reduce(syllables))
{
	for (auto const &s : syllables_)
		if (s.letter < 0 || s.letter >= alphabet_->size())
			throw WordError(fmt::format("letter index {} outside alphabet {}",
			                            s.letter, alphabet_->name));
}

Word Word::letter(AlphabetPtr alphabet, int index, Integer exponent)
{
	return Word(std::move(alphabet), {{index, std::move(exponent)}});
}

Word Word::inverse() const
{
	std::vector<Syllable> r(syllables_.rbegin(), syllables_.rend());
	for (auto &s : r)
		s.exponent = -s.exponent;
	return Word(alphabet_, std::move(r));
}

Word Word::pow(Integer const &n) const
{
	if (n < 0)
		return inverse().pow(-n);
	if (syllables_.size() == 1)
		return Word(alphabet_, {{syllables_[0].letter, syllables_[0].exponent * n}});
	Word r(alphabet_);
	Word base = *this;
	Integer k = n;
	while (k > 0)
	{
		if (k % 2 == 1)
			r = r * base;
		base = base * base;
		k /= 2;
	}
	return r;
}

std::string Word::str() const
{
	if (syllables_.empty())
		return "1";
	std::string r;
	for (auto const &s : syllables_)
	{
		if (!r.empty())
			r += ' ';
		r += alphabet_->letters[s.letter];
		if (s.exponent != 1)
			r += "^" + s.exponent.str();
	}
	return r;
}

bool Word::operator==(Word const &other) const
{
	return (alphabet_ == other.alphabet_ || alphabet_->letters == other.alphabet_->letters) &&
	       syllables_ == other.syllables_;
}

Word reduce(Word const &w)
{
	return Word(w.alphabet(), w.syllables());
}

Word concat(Word const &a, Word const &b)
{
	if (a.alphabet() != b.alphabet() && a.alphabet()->letters != b.alphabet()->letters)
		throw WordError(fmt::format("alphabet mismatch: {} vs {}", a.alphabet()->name,
		                            b.alphabet()->name));
	auto s = a.syllables();
	s.insert(s.end(), b.syllables().begin(), b.syllables().end());
	return Word(a.alphabet(), std::move(s));
}

Word operator*(Word const &a, Word const &b)
{
	return concat(a, b);
}

Word parse_word(std::string_view text, AlphabetPtr const &alphabet,
				std::map<std::string, Word> const &aliases)
{
	std::istringstream in{std::string(text)};
	std::string tok;
	Word r(alphabet);
	while (in >> tok)
	{
		if (tok == "1")
			continue;
		std::string name = tok;
		Integer e = 1;
		if (auto caret = tok.find('^'); caret != std::string::npos)
		{
			name = tok.substr(0, caret);
			auto es = tok.substr(caret + 1);
			if (es.empty() || es.find_first_not_of("-0123456789") != std::string::npos ||
			    es == "-")
				throw WordError(fmt::format("bad exponent in token '{}'", tok));
			e = Integer(es);
		}
		if (auto it = aliases.find(name); it != aliases.end())
			r = r * it->second.pow(e);
		else if (auto idx = alphabet->find(name))
			r = r * Word::letter(alphabet, *idx, e);
		else
			throw WordError(
			    fmt::format("unknown letter '{}' for alphabet {}", name, alphabet->name));
	}
	return r;
}

Word GroupMorphism::apply(Word const &w) const
{
	if (w.alphabet() != source && w.alphabet()->letters != source->letters)
		throw WordError(fmt::format("word over {} given to morphism from {}",
		                            w.alphabet()->name, source->name));
	Word r(target);
	for (auto const &s : w.syllables())
		r = r * images[s.letter].pow(s.exponent);
	return r;
}

Word apply_morphism(GroupMorphism const &m, Word const &w)
{
	return m.apply(w);
}

GroupMorphism compose(GroupMorphism const &first, GroupMorphism const &second)
{
	GroupMorphism r{second.label + "*" + first.label, first.source, second.target, {}};
	for (auto const &img : first.images)
		r.images.push_back(second.apply(img));
	return r;
}

std::vector<std::string> Presentation::families() const
{
	std::vector<std::string> r;
	for (auto const &rel : relators)
	{
		auto f = rel.label.substr(0, rel.label.find_first_of(".abcdefghijklmnopqrstuvwxyz", 1));
		if (r.empty() || r.back() != f)
			r.push_back(f);
	}
	return r;
}

std::vector<RelationCheck> verify_relations(Presentation const &p, GroupMorphism const &m)
{
	std::vector<RelationCheck> r;
	for (auto const &rel : p.relators)
	{
		auto img = m.apply(rel.word);
		r.push_back({rel.label, m.label, img.is_identity(), img});
	}
	return r;
}

ParseError::ParseError(std::string const &file, int line_, std::string const &what)
	: std::runtime_error(fmt::format("{}:{}: {}", file, line_, what)), line(line_)
{
}

namespace {

std::string read_file(std::string const &path)
{
	std::ifstream in(path);
	if (!in)
		throw std::runtime_error(fmt::format("cannot open {}", path));
	std::stringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

std::string trim(std::string const &s)
{
	auto a = s.find_first_not_of(" \t\r");
	if (a == std::string::npos)
		return "";
	auto b = s.find_last_not_of(" \t\r");
	return s.substr(a, b - a + 1);
}

std::vector<std::string> split(std::string const &s, char sep)
{
	std::vector<std::string> r;
	std::string cur;
	for (char c : s)
	{
		if (c == sep)
		{
			r.push_back(trim(cur));
			cur.clear();
		}
		else
			cur += c;
	}
	r.push_back(trim(cur));
	return r;
}

// yields (line number, keyword, rest) for every non-blank, non-comment line
template <class F> void for_each_line(std::string const &text, F &&f)
{
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
		auto sp = line.find_first_of(" \t");
		auto key = line.substr(0, sp);
		auto rest = sp == std::string::npos ? std::string() : trim(line.substr(sp));
		f(no, key, rest);
	}
}

std::vector<std::string> tokens(std::string const &s)
{
	std::istringstream in(s);
	std::vector<std::string> r;
	std::string t;
	while (in >> t)
		r.push_back(t);
	return r;
}

} // namespace

Presentation parse_presentation(std::string const &text, std::string const &name)
{
	Presentation p;
	int auto_label = 0;
	for_each_line(text, [&](int no, std::string const &key, std::string const &rest) {
		try
		{
			if (key == "gen")
			{
				if (p.alphabet)
					throw ParseError(name, no, "duplicate gen line");
				p.alphabet = std::make_shared<Alphabet>("source", tokens(rest));
			}
			else if (key == "rel")
			{
				if (!p.alphabet)
					throw ParseError(name, no, "rel before gen");
				std::string label, body = rest;
				if (auto colon = rest.find(':'); colon != std::string::npos)
				{
					label = trim(rest.substr(0, colon));
					body = rest.substr(colon + 1);
				}
				else
					label = fmt::format("r{}", ++auto_label);
				auto sides = split(body, '=');
				if (sides.size() == 1)
					p.relators.push_back({label, parse_word(sides[0], p.alphabet)});
				for (size_t k = 0; k + 1 < sides.size(); ++k)
				{
					auto lhs = parse_word(sides[k], p.alphabet);
					auto rhs = parse_word(sides[k + 1], p.alphabet);
					auto l = sides.size() == 2 ? label : fmt::format("{}.{}", label, k + 1);
					p.relators.push_back({l, lhs * rhs.inverse()});
				}
			}
			else
				throw ParseError(name, no, fmt::format("unknown keyword '{}'", key));
		}
		catch (WordError const &e)
		{
			throw ParseError(name, no, e.what());
		}
	});
	if (!p.alphabet)
		throw ParseError(name, 0, "missing gen line");
	return p;
}

Presentation load_presentation(std::string const &path)
{
	return parse_presentation(read_file(path), path);
}

MorphismTable parse_morphisms(std::string const &text, std::string const &name)
{
	MorphismTable t;
	std::map<std::string, std::map<int, Word>> pending;
	std::vector<std::string> order;
	for_each_line(text, [&](int no, std::string const &key, std::string const &rest) {
		try
		{
			if (key == "source")
				t.source = std::make_shared<Alphabet>("source", tokens(rest));
			else if (key == "target")
				t.target = std::make_shared<Alphabet>("target", tokens(rest));
			else if (key == "alias")
			{
				if (!t.target)
					throw ParseError(name, no, "alias before target");
				auto eq = rest.find('=');
				if (eq == std::string::npos)
					throw ParseError(name, no, "alias needs '='");
				auto lhs = trim(rest.substr(0, eq));
				t.aliases.insert_or_assign(lhs, parse_word(rest.substr(eq + 1), t.target, t.aliases));
			}
			else if (key == "map")
			{
				if (!t.source || !t.target)
					throw ParseError(name, no, "map before source/target");
				auto arrow = rest.find("->");
				if (arrow == std::string::npos)
					throw ParseError(name, no, "map needs '->'");
				auto head = tokens(rest.substr(0, arrow));
				if (head.size() != 2)
					throw ParseError(name, no, "map needs '<label> <generator> ->'");
				auto gen = t.source->find(head[1]);
				if (!gen)
					throw ParseError(name, no, fmt::format("unknown generator '{}'", head[1]));
				auto img = parse_word(rest.substr(arrow + 2), t.target, t.aliases);
				if (!pending.count(head[0]))
					order.push_back(head[0]);
				if (!pending[head[0]].emplace(*gen, img).second)
					throw ParseError(name, no, fmt::format("{} given twice for {}", head[1], head[0]));
			}
			else
				throw ParseError(name, no, fmt::format("unknown keyword '{}'", key));
		}
		catch (WordError const &e)
		{
			throw ParseError(name, no, e.what());
		}
	});
	if (!t.source || !t.target)
		throw ParseError(name, 0, "missing source or target line");
	for (auto const &label : order)
	{
		auto const &imgs = pending[label];
		GroupMorphism m{label, t.source, t.target, {}};
		for (int j = 0; j < t.source->size(); ++j)
		{
			auto it = imgs.find(j);
			if (it == imgs.end())
				throw ParseError(name, 0,
				                 fmt::format("{} has no image for {}", label, t.source->letters[j]));
			m.images.push_back(it->second);
		}
		t.morphisms.push_back(std::move(m));
	}
	return t;
}

MorphismTable load_morphisms(std::string const &path)
{
	return parse_morphisms(read_file(path), path);
}

GroupMorphism six_generator_view(AlphabetPtr const &eight)
{
	auto six = std::make_shared<Alphabet>(
	    "six", std::vector<std::string>(eight->letters.begin(), eight->letters.begin() + 6));
	GroupMorphism m{"six", eight, six, {}};
	for (int j = 0; j < 6; ++j)
		m.images.push_back(Word::letter(six, j));
	// B1 B3 B7 B4 B6 = 1 and B2 B3 B8 B6 B5 = 1
	m.images.push_back(parse_word("B3^-1 B1^-1 B6^-1 B4^-1", six));
	m.images.push_back(parse_word("B3^-1 B2^-1 B5^-1 B6^-1", six));
	return m;
}

std::vector<Integer> abelianize(Word const &w)
{
	std::vector<Integer> r(w.alphabet()->size());
	for (auto const &s : w.syllables())
		r[s.letter] += s.exponent;
	return r;
}

} // namespace polyfe
