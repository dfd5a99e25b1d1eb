#pragma once

#include "polyfe/rational.h"
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace polyfe {

struct Alphabet
{
	std::string name;
	std::vector<std::string> letters;

	Alphabet(std::string name, std::vector<std::string> letters);
	std::optional<int> find(std::string_view letter) const;
	int size() const { return int(letters.size()); }
};

using AlphabetPtr = std::shared_ptr<Alphabet const>;

struct Syllable
{
	int letter;
	Integer exponent;

	bool operator==(Syllable const &) const = default;
};

class WordError : public std::runtime_error
{
  public:
	using std::runtime_error::runtime_error;
};

// element of the free group on an alphabet, always kept freely reduced
class Word
{
	AlphabetPtr alphabet_;
	std::vector<Syllable> syllables_;

  public:
	explicit Word(AlphabetPtr alphabet) : alphabet_(std::move(alphabet)) {}
	Word(AlphabetPtr alphabet, std::vector<Syllable> syllables);

	static Word letter(AlphabetPtr alphabet, int index, Integer exponent = 1);

	AlphabetPtr const &alphabet() const { return alphabet_; }
	std::vector<Syllable> const &syllables() const { return syllables_; }
	bool is_identity() const { return syllables_.empty(); }

	Word inverse() const;
	Word pow(Integer const &n) const;

	// "l0^-1 l1^-1", identity renders as "1"
	std::string str() const;

	bool operator==(Word const &other) const;
};

// free reduction of an arbitrary syllable sequence
std::vector<Syllable> reduce(std::vector<Syllable> const &syllables);
Word reduce(Word const &w);
Word concat(Word const &a, Word const &b);
Word operator*(Word const &a, Word const &b);

// whitespace separated tokens "name" or "name^k"; "1" is the identity
// aliases are expanded in place and may themselves use powers
Word parse_word(std::string_view text, AlphabetPtr const &alphabet,
				std::map<std::string, Word> const &aliases = {});

struct GroupMorphism
{
	std::string label;
	AlphabetPtr source;
	AlphabetPtr target;
	std::vector<Word> images;

	Word apply(Word const &w) const;
};

Word apply_morphism(GroupMorphism const &m, Word const &w);
GroupMorphism compose(GroupMorphism const &first, GroupMorphism const &second);

struct Relator
{
	std::string label;
	Word word;
};

struct Presentation
{
	AlphabetPtr alphabet;
	std::vector<Relator> relators;

	std::vector<std::string> families() const;
};

struct RelationCheck
{
	std::string relator;
	std::string morphism;
	bool pass;
	Word image;
};

std::vector<RelationCheck> verify_relations(Presentation const &p,
											GroupMorphism const &m);

class ParseError : public std::runtime_error
{
  public:
	ParseError(std::string const &file, int line, std::string const &what);
	int line;
};

Presentation load_presentation(std::string const &path);
Presentation parse_presentation(std::string const &text,
								std::string const &name = "<string>");

struct MorphismTable
{
	AlphabetPtr source;
	AlphabetPtr target;
	std::map<std::string, Word> aliases;
	std::vector<GroupMorphism> morphisms;
};

MorphismTable load_morphisms(std::string const &path);
MorphismTable parse_morphisms(std::string const &text,
	std::string const &name = "<string>");

// B7, B8 rewritten through the two boundary relators of the eight-generator
// presentation, giving a map onto words in B1..B6
GroupMorphism six_generator_view(AlphabetPtr const &eight);

// net exponent of each target letter
std::vector<Integer> abelianize(Word const &w);

} // namespace polyfe
