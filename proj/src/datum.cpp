#include "quatbend/surface/datum.hpp"

#include "quatbend/exact/text.hpp"

#include <algorithm>

namespace quatbend {

namespace {

// Splits tokens at a separator token.
std::vector<std::vector<std::string>> split(const std::vector<std::string>& tokens, const std::string& sep) {
  std::vector<std::vector<std::string>> parts(1);
  for (const auto& t : tokens) {
    if (t == sep) parts.emplace_back();
    else parts.back().push_back(t);
  }
  return parts;
}

std::vector<std::string> tail(const std::vector<std::string>& row, std::size_t from) {
  return {row.begin() + static_cast<std::ptrdiff_t>(std::min(from, row.size())), row.end()};
}

CurveDatum parse_curve(const std::vector<std::string>& row) {
  if (row.size() < 4) throw std::invalid_argument("curve line needs 'curve <name> <kind> ...'");
  CurveDatum c;
  c.name = row[1];
  const std::string& kind = row[2];
  auto rest = tail(row, 3);
  if (kind == "nonseparating") {
    auto parts = split(rest, "stable");
    if (parts.size() != 2 || parts[1].size() != 1) throw std::invalid_argument("nonseparating curve needs 'stable <letter>'");
    c.kind = CurveDatum::Kind::nonseparating;
    c.word = parse_word(parts[0]);
    c.stable = parts[1][0];
  } else if (kind == "separating") {
    auto parts = split(rest, ":");
    if (parts.size() != 2) throw std::invalid_argument("separating curve needs ': side1 | side2'");
    auto sides = split(parts[1], "|");
    if (sides.size() != 2) throw std::invalid_argument("separating curve needs two sides split by '|'");
    c.kind = CurveDatum::Kind::separating;
    c.word = parse_word(parts[0]);
    c.side_one = sides[0];
    c.side_two = sides[1];
  } else {
    throw std::invalid_argument("unknown curve kind: " + kind);
  }
  return c;
}

std::pair<std::string, WordMap> parse_automorphism(const std::vector<std::string>& row) {
  if (row.size() < 3 || row[2] != ":") throw std::invalid_argument("automorphism line needs 'automorphism <name> : ...'");
  WordMap m;
  for (const auto& clause : split(tail(row, 3), ";")) {
    if (clause.empty()) continue;
    if (clause.size() < 2 || clause[1] != "->") throw std::invalid_argument("automorphism clause needs 'g -> word'");
    if (m.images.count(clause[0])) throw std::invalid_argument("automorphism maps " + clause[0] + " twice");
    m.images[clause[0]] = parse_word(tail(clause, 2));
  }
  return {row[1], m};
}

}  // namespace

const CurveDatum& SurfaceDatum::curve(const std::string& name) const {
  if (curves.empty()) throw std::invalid_argument("datum has no curve");
  if (name.empty()) return curves.front();
  for (const auto& c : curves)
    if (c.name == name) return c;
  throw std::invalid_argument("datum has no curve named " + name);
}

const WordMap& SurfaceDatum::automorphism(const std::string& name) const {
  for (const auto& [n, m] : automorphisms)
    if (n == name) return m;
  throw std::invalid_argument("datum has no automorphism named " + name);
}

SurfaceDatum parse_datum(const std::string& text) {
  SurfaceDatum d;
  bool have_generators = false;
  for (const auto& row : tokenize(text)) {
    const std::string& key = row[0];
    if (key == "generators") {
      if (have_generators) throw std::invalid_argument("generators given twice");
      d.presentation.generators = tail(row, 1);
      have_generators = true;
    } else if (key == "relator") {
      d.presentation.relator = parse_word(tail(row, 1));
    } else if (key == "assign") {
      if (row.size() < 2) throw std::invalid_argument("assign line needs a generator");
      std::vector<std::array<Rational, 4>> per_copy;
      for (const auto& part : split(tail(row, 2), ";")) {
        if (part.size() != 4) throw std::invalid_argument("assign for " + row[1] + " needs four coordinates per copy");
        per_copy.push_back({parse_rational(part[0]), parse_rational(part[1]), parse_rational(part[2]), parse_rational(part[3])});
      }
      if (!d.assignment.emplace(row[1], per_copy).second) throw std::invalid_argument("generator " + row[1] + " assigned twice");
    } else if (key == "curve") {
      d.curves.push_back(parse_curve(row));
    } else if (key == "automorphism") {
      d.automorphisms.push_back(parse_automorphism(row));
    } else {
      throw std::invalid_argument("unknown datum key: " + key);
    }
  }
  if (!have_generators || d.presentation.generators.empty()) throw std::invalid_argument("datum lacks generators");
  d.presentation.validate();
  for (const auto& c : d.curves) validate_curve(c, d.presentation);
  for (const auto& [name, m] : d.automorphisms) validate_word_map(m, d.presentation);
  return d;
}

SurfaceDatum load_datum(const std::string& path) { return parse_datum(read_file(path)); }

std::vector<Quaternion> assigned_quaternions(const SurfaceDatum& d, const RightRegularModel& model, const std::string& g) {
  auto it = d.assignment.find(g);
  if (it == d.assignment.end()) throw std::invalid_argument("generator " + g + " has no assignment");
  const auto& coords = it->second;
  const auto k = static_cast<std::size_t>(model.copies());
  if (coords.size() != 1 && coords.size() != k)
    throw std::invalid_argument("assignment of " + g + " does not match the number of copies");
  std::vector<Quaternion> out;
  for (std::size_t c = 0; c < k; ++c) out.push_back(model.algebra().element(coords[coords.size() == 1 ? 0 : c]));
  return out;
}

std::vector<Quaternion> evaluate_quaternion_word(const SurfaceDatum& d, const RightRegularModel& model, const Word& w) {
  std::vector<Quaternion> out(static_cast<std::size_t>(model.copies()), model.algebra().one());
  for (const auto& l : w) {
    auto q = assigned_quaternions(d, model, l.gen);
    for (std::size_t c = 0; c < out.size(); ++c) {
      Quaternion f = l.exp > 0 ? q[c] : q[c].inverse();
      for (int k = 0; k < std::abs(l.exp); ++k) out[c] = out[c] * f;
    }
  }
  return out;
}

Representation assemble(const SurfaceDatum& d, const RightRegularModel& model) {
  std::map<std::string, MatrixZ> images;
  for (const auto& g : d.presentation.generators) images.emplace(g, rho(model, assigned_quaternions(d, model, g)));
  for (const auto& [g, c] : d.assignment)
    if (!d.presentation.has_generator(g)) throw std::invalid_argument("assignment names unknown generator " + g);
  Representation rep(d.presentation, std::move(images), model.form());
  for (const auto& c : d.curves) validate_curve(c, rep.presentation());
  return rep;
}

}  // namespace quatbend
