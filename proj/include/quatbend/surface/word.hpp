#pragma once

#include <string>
#include <vector>

namespace quatbend {

/// gen^exp with exp != 0.
struct Letter {
  std::string gen;
  int exp = 1;
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Words are kept freely reduced with adjacent powers merged.
using Word = std::vector<Letter>;

/// Space-separated letters "g", "g^-1", "g^{-1}", "g^3"; "1" or "" is the empty word.
Word parse_word(const std::string& text);
Word parse_word(const std::vector<std::string>& tokens);
std::string to_string(const Word& w);

Word reduce(const Word& w);
Word concat(const Word& x, const Word& y);
Word inverse(const Word& w);
int length(const Word& w);

/// Free reduction followed by removal of cancelling first/last letters.
Word cyclic_reduce(const Word& w);
/// True iff x and y are conjugate in the free group on their letters.
bool conjugate_in_free_group(const Word& x, const Word& y);

/// Generator names appearing in w, in first-occurrence order.
std::vector<std::string> letters_of(const Word& w);

/// All freely reduced words of length 1..max_length over gens and their inverses,
/// in shortlex order.
std::vector<Word> reduced_words(const std::vector<std::string>& gens, int max_length);

}  // namespace quatbend
