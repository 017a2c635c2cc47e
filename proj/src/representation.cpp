#include "quatbend/surface/representation.hpp"

#include <algorithm>
#include <set>

namespace quatbend {

bool Presentation::has_generator(const std::string& g) const {
  return std::find(generators.begin(), generators.end(), g) != generators.end();
}

void Presentation::validate() const {
  std::set<std::string> seen;
  for (const auto& g : generators)
    if (!seen.insert(g).second) throw std::invalid_argument("duplicate generator " + g);
  if (relator) {
    if (relator->empty()) throw std::invalid_argument("relator is the empty word");
    for (const auto& g : letters_of(*relator))
      if (!has_generator(g)) throw std::invalid_argument("relator uses unknown generator " + g);
  }
}

Presentation surface_presentation(int genus) {
  if (genus < 1) throw std::invalid_argument("genus must be positive");
  Presentation p;
  Word r;
  for (int k = 1; k <= genus; ++k) {
    std::string a = "a" + std::to_string(k), b = "b" + std::to_string(k);
    p.generators.push_back(a);
    p.generators.push_back(b);
    r.insert(r.end(), {{a, 1}, {b, 1}, {a, -1}, {b, -1}});
  }
  p.relator = reduce(r);
  return p;
}

MatrixZ symplectic_inverse(const MatrixZ& m, const SkewFormZ& form) {
  MatrixQ g = to_rational(form.gram());
  MatrixQ mt = to_rational(m).transpose();
  return to_integer(mul(mul(inverse(g), mt), g));
}

Representation::Representation(Presentation presentation, std::map<std::string, MatrixZ> images, SkewFormZ form)
    : presentation_(std::move(presentation)), images_(std::move(images)), form_(std::move(form)) {
  presentation_.validate();
  for (const auto& [g, m] : images_)
    if (!presentation_.has_generator(g)) throw std::invalid_argument("image given for unknown generator " + g);
  for (const auto& g : presentation_.generators) {
    auto it = images_.find(g);
    if (it == images_.end()) throw std::invalid_argument("generator " + g + " has no image");
    const MatrixZ& m = it->second;
    if (m.rows() != form_.dim() || m.cols() != form_.dim())
      throw std::invalid_argument("image of " + g + " has the wrong size");
    if (!is_symplectic(m, form_)) throw std::invalid_argument("image of " + g + " is not symplectic");
    inverses_.emplace(g, symplectic_inverse(m, form_));
  }
  if (presentation_.relator && !is_identity(evaluate_word(*this, *presentation_.relator)))
    throw std::invalid_argument("relator does not map to the identity");
}

const MatrixZ& Representation::image(const std::string& g) const {
  auto it = images_.find(g);
  if (it == images_.end()) throw std::invalid_argument("unknown generator " + g);
  return it->second;
}

const MatrixZ& Representation::image_inverse(const std::string& g) const {
  auto it = inverses_.find(g);
  if (it == inverses_.end()) throw std::invalid_argument("unknown generator " + g);
  return it->second;
}

std::vector<MatrixZ> Representation::generator_images() const {
  std::vector<MatrixZ> out;
  for (const auto& g : presentation_.generators) out.push_back(image(g));
  return out;
}

MatrixZ evaluate_word(const Representation& rep, const Word& w) {
  MatrixZ out = identity<Integer>(rep.form().dim());
  for (const auto& l : w) {
    const MatrixZ& m = l.exp > 0 ? rep.image(l.gen) : rep.image_inverse(l.gen);
    for (int k = 0; k < std::abs(l.exp); ++k) out = mul(out, m);
  }
  return out;
}

bool check_relator(const Representation& rep) {
  if (!rep.presentation().relator) throw std::invalid_argument("presentation has no relator");
  return is_identity(evaluate_word(rep, *rep.presentation().relator));
}

Word WordMap::operator()(const std::string& g) const {
  auto it = images.find(g);
  return it == images.end() ? Word{{g, 1}} : it->second;
}

Word WordMap::apply(const Word& w) const {
  Word out;
  for (const auto& l : w) {
    Word img = (*this)(l.gen);
    if (l.exp < 0) img = inverse(img);
    for (int k = 0; k < std::abs(l.exp); ++k) out = concat(out, img);
  }
  return out;
}

void validate_word_map(const WordMap& m, const Presentation& p, const Word* fixed) {
  for (const auto& [g, w] : m.images) {
    if (!p.has_generator(g)) throw std::invalid_argument("word map names unknown generator " + g);
    for (const auto& x : letters_of(w))
      if (!p.has_generator(x)) throw std::invalid_argument("word map image uses unknown generator " + x);
  }
  if (p.relator && !conjugate_in_free_group(m.apply(*p.relator), *p.relator))
    throw std::invalid_argument("word map does not send the relator to a conjugate of itself");
  if (fixed && !conjugate_in_free_group(m.apply(*fixed), *fixed))
    throw std::invalid_argument("word map does not fix the curve up to conjugacy");
}

WordMap compose(const WordMap& outer, const WordMap& inner) {
  WordMap out;
  std::set<std::string> names;
  for (const auto& [g, w] : outer.images) names.insert(g);
  for (const auto& [g, w] : inner.images) names.insert(g);
  for (const auto& g : names) out.images[g] = outer.apply(inner(g));
  return out;
}

Representation precompose(const Representation& rep, const WordMap& m) {
  validate_word_map(m, rep.presentation());
  std::map<std::string, MatrixZ> images;
  for (const auto& g : rep.presentation().generators) images.emplace(g, evaluate_word(rep, m(g)));
  return Representation(rep.presentation(), std::move(images), rep.form());
}

void validate_curve(const CurveDatum& c, const Presentation& p) {
  if (c.word.empty()) throw std::invalid_argument("curve word is empty");
  for (const auto& g : letters_of(c.word))
    if (!p.has_generator(g)) throw std::invalid_argument("curve uses unknown generator " + g);
  if (c.kind == CurveDatum::Kind::nonseparating) {
    if (!p.has_generator(c.stable)) throw std::invalid_argument("stable letter " + c.stable + " is not a generator");
    for (const auto& g : letters_of(c.word))
      if (g == c.stable) throw std::invalid_argument("curve word uses the stable letter");
    return;
  }
  std::set<std::string> one(c.side_one.begin(), c.side_one.end()), two(c.side_two.begin(), c.side_two.end());
  if (one.empty() || two.empty()) throw std::invalid_argument("separating curve needs two nonempty sides");
  for (const auto& g : one)
    if (two.count(g)) throw std::invalid_argument("sides share generator " + g);
  if (one.size() + two.size() != p.generators.size()) throw std::invalid_argument("sides do not cover the generators");
  for (const auto& g : p.generators)
    if (!one.count(g) && !two.count(g)) throw std::invalid_argument("generator " + g + " lies on no side");
  for (const auto& g : letters_of(c.word))
    if (!one.count(g)) throw std::invalid_argument("separating curve leaves side one");
  if (!p.relator) return;
  // Some rotation of the relator must read (curve)(word in side two).
  Word r = *p.relator;
  std::vector<Letter> unit;
  for (const auto& l : r)
    for (int k = 0; k < std::abs(l.exp); ++k) unit.push_back({l.gen, l.exp > 0 ? 1 : -1});
  for (std::size_t shift = 0; shift < unit.size(); ++shift) {
    for (std::size_t cut = 1; cut < unit.size(); ++cut) {
      Word u, v;
      for (std::size_t k = 0; k < unit.size(); ++k) (k < cut ? u : v).push_back(unit[(k + shift) % unit.size()]);
      bool u_one = std::all_of(u.begin(), u.end(), [&](const Letter& l) { return one.count(l.gen) > 0; });
      bool v_two = std::all_of(v.begin(), v.end(), [&](const Letter& l) { return two.count(l.gen) > 0; });
      if (u_one && v_two && reduce(u) == c.word) return;
    }
  }
  throw std::invalid_argument("relator does not split along the separating curve");
}

Representation bend(const Representation& rep, const CurveDatum& curve, const MatrixZ& b) {
  validate_curve(curve, rep.presentation());
  if (b.rows() != rep.form().dim() || b.cols() != rep.form().dim()) throw BendError("bend element has the wrong size");
  if (!is_symplectic(b, rep.form())) throw BendError("bend element is not symplectic for the form");
  MatrixZ c = evaluate_word(rep, curve.word);
  if (!equal(mul(b, c), mul(c, b))) throw BendError("bend element does not commute with the curve image");
  std::map<std::string, MatrixZ> images = rep.images();
  if (curve.kind == CurveDatum::Kind::nonseparating) {
    images[curve.stable] = mul(images[curve.stable], b);
  } else {
    MatrixZ b_inv = symplectic_inverse(b, rep.form());
    for (const auto& g : curve.side_two) images[g] = mul(mul(b, images[g]), b_inv);
  }
  return Representation(rep.presentation(), std::move(images), rep.form());
}

Representation iterate_bends(const Representation& rep, const std::vector<std::pair<CurveDatum, MatrixZ>>& steps) {
  Representation cur = rep;
  for (const auto& [curve, b] : steps) cur = bend(cur, curve, b);
  return cur;
}

TraceComparison check_distinct(const Representation& x, const Representation& y, const std::vector<Word>& words) {
  TraceComparison out;
  for (const auto& w : words) {
    out.left.push_back(evaluate_word(x, w).trace());
    out.right.push_back(evaluate_word(y, w).trace());
  }
  std::sort(out.left.begin(), out.left.end());
  std::sort(out.right.begin(), out.right.end());
  out.distinct = out.left != out.right;
  return out;
}

}  // namespace quatbend
