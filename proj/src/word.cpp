#include "quatbend/surface/word.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace quatbend {

namespace {

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

Letter parse_letter(const std::string& tok) {
  auto caret = tok.find('^');
  Letter l;
  l.gen = tok.substr(0, caret);
  if (!valid_name(l.gen)) throw std::invalid_argument("bad generator name in word: '" + tok + "'");
  if (caret != std::string::npos) {
    std::string e = tok.substr(caret + 1);
    if (e.size() >= 2 && e.front() == '{' && e.back() == '}') e = e.substr(1, e.size() - 2);
    std::size_t used = 0;
    try {
      l.exp = std::stoi(e, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != e.size()) throw std::invalid_argument("bad exponent in word: '" + tok + "'");
  }
  return l;
}

// Unit letters (gen, +-1).
std::vector<Letter> expand(const Word& w) {
  std::vector<Letter> out;
  for (const auto& l : w)
    for (int k = 0; k < std::abs(l.exp); ++k) out.push_back({l.gen, l.exp > 0 ? 1 : -1});
  return out;
}

}  // namespace

Word reduce(const Word& w) {
  Word out;
  for (const auto& l : w) {
    if (l.exp == 0) continue;
    if (!out.empty() && out.back().gen == l.gen) {
      out.back().exp += l.exp;
      if (out.back().exp == 0) out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word parse_word(const std::vector<std::string>& tokens) {
  Word w;
  for (const auto& t : tokens) {
    if (t == "1") continue;
    w.push_back(parse_letter(t));
  }
  return reduce(w);
}

Word parse_word(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> tokens;
  std::string t;
  while (in >> t) tokens.push_back(t);
  return parse_word(tokens);
}

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& l : w) {
    if (!out.empty()) out += ' ';
    out += l.gen;
    if (l.exp != 1) out += "^" + std::to_string(l.exp);
  }
  return out;
}

Word concat(const Word& x, const Word& y) {
  Word w = x;
  w.insert(w.end(), y.begin(), y.end());
  return reduce(w);
}

Word inverse(const Word& w) {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->gen, -it->exp});
  return reduce(out);
}

int length(const Word& w) {
  int n = 0;
  for (const auto& l : w) n += std::abs(l.exp);
  return n;
}

Word cyclic_reduce(const Word& w) {
  Word r = reduce(w);
  while (r.size() >= 2 && r.front().gen == r.back().gen) {
    // Conjugating moves the last syllable to the front where it merges.
    Letter last = r.back();
    r.pop_back();
    r.front().exp += last.exp;
    if (r.front().exp == 0) r.erase(r.begin());
  }
  return r;
}

bool conjugate_in_free_group(const Word& x, const Word& y) {
  auto a = expand(cyclic_reduce(x));
  auto b = expand(cyclic_reduce(y));
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  for (std::size_t shift = 0; shift < a.size(); ++shift) {
    bool same = true;
    for (std::size_t k = 0; k < a.size() && same; ++k) same = a[(k + shift) % a.size()] == b[k];
    if (same) return true;
  }
  return false;
}

std::vector<std::string> letters_of(const Word& w) {
  std::vector<std::string> out;
  for (const auto& l : w)
    if (std::find(out.begin(), out.end(), l.gen) == out.end()) out.push_back(l.gen);
  return out;
}

std::vector<Word> reduced_words(const std::vector<std::string>& gens, int max_length) {
  std::vector<Letter> alphabet;
  for (const auto& g : gens) {
    alphabet.push_back({g, 1});
    alphabet.push_back({g, -1});
  }
  std::vector<std::vector<Letter>> layer{{}};
  std::vector<Word> out;
  for (int len = 1; len <= max_length; ++len) {
    std::vector<std::vector<Letter>> next;
    for (const auto& w : layer)
      for (const auto& l : alphabet) {
        if (!w.empty() && w.back().gen == l.gen && w.back().exp == -l.exp) continue;
        auto v = w;
        v.push_back(l);
        next.push_back(v);
      }
    for (const auto& w : next) out.push_back(reduce(w));
    layer = std::move(next);
  }
  return out;
}

}  // namespace quatbend
