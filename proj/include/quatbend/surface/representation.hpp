#pragma once

#include "quatbend/exact/matrix.hpp"
#include "quatbend/surface/word.hpp"
#include "quatbend/symplectic/forms.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace quatbend {

/// Raised when a bend element fails its preconditions.
class BendError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Generators with an optional single relator; no relator means a free group.
struct Presentation {
  std::vector<std::string> generators;
  std::optional<Word> relator;

  bool has_generator(const std::string& g) const;
  /// Throws std::invalid_argument on duplicate names or unknown relator letters.
  void validate() const;
};

/// [a_1,b_1]...[a_g,b_g] on generators a1 b1 ... ag bg.
Presentation surface_presentation(int genus);

/// Homomorphism to Sp(G, Z): integral symplectic images satisfying the relator.
class Representation {
 public:
  /// Throws std::invalid_argument unless every generator has a square image of
  /// the form's size that preserves the form, and the relator maps to I.
  Representation(Presentation presentation, std::map<std::string, MatrixZ> images, SkewFormZ form);

  const Presentation& presentation() const { return presentation_; }
  const SkewFormZ& form() const { return form_; }
  const std::map<std::string, MatrixZ>& images() const { return images_; }
  const MatrixZ& image(const std::string& g) const;
  /// Exact inverse G^{-1} M^T G.
  const MatrixZ& image_inverse(const std::string& g) const;
  /// Images in presentation order.
  std::vector<MatrixZ> generator_images() const;

 private:
  Presentation presentation_;
  std::map<std::string, MatrixZ> images_;
  std::map<std::string, MatrixZ> inverses_;
  SkewFormZ form_;
};

MatrixZ symplectic_inverse(const MatrixZ& m, const SkewFormZ& form);

MatrixZ evaluate_word(const Representation& rep, const Word& w);
/// Throws std::invalid_argument when the presentation has no relator.
bool check_relator(const Representation& rep);

/// Substitution g -> word; generators without an entry are fixed.
struct WordMap {
  std::map<std::string, Word> images;

  Word operator()(const std::string& g) const;
  Word apply(const Word& w) const;
};

/// Maps to images over the presentation's generators that send the relator (if
/// any) and, when given, the curve word to free-group conjugates of themselves.
/// Throws std::invalid_argument otherwise.
void validate_word_map(const WordMap& m, const Presentation& p, const Word* fixed = nullptr);

/// Result of first applying `inner` to generators and then `outer` to letters:
/// precompose(precompose(rep, outer), inner) == precompose(rep, compose(outer, inner)).
WordMap compose(const WordMap& outer, const WordMap& inner);

/// g -> rep(m(g)).
Representation precompose(const Representation& rep, const WordMap& m);

/// Splitting data along a curve: amalgam (separating) or HNN extension.
struct CurveDatum {
  enum class Kind { separating, nonseparating };
  std::string name;
  Kind kind = Kind::nonseparating;
  Word word;
  std::vector<std::string> side_one;  // separating only
  std::vector<std::string> side_two;  // separating only
  std::string stable;                 // nonseparating only
};

/// Group-theoretic consistency of the curve with the presentation; throws
/// std::invalid_argument. Separating curves must be words in side one, and the
/// relator must rotate to (curve)(word in side two).
void validate_curve(const CurveDatum& c, const Presentation& p);

/// Separating: side two conjugated by B. Nonseparating: stable image times B.
/// Throws BendError unless B is symplectic and commutes with the curve image.
Representation bend(const Representation& rep, const CurveDatum& curve, const MatrixZ& b);

Representation iterate_bends(const Representation& rep, const std::vector<std::pair<CurveDatum, MatrixZ>>& steps);

struct TraceComparison {
  std::vector<Integer> left;   // sorted trace multiset
  std::vector<Integer> right;
  bool distinct = false;
};

/// Compares sorted traces of the given words; differing multisets rule out conjugacy.
TraceComparison check_distinct(const Representation& x, const Representation& y, const std::vector<Word>& words);

}  // namespace quatbend
