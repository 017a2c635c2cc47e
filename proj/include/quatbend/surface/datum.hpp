#pragma once

#include "quatbend/surface/representation.hpp"
#include "quatbend/symplectic/model.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace quatbend {

/// Generator data read from a datum file, before it is bound to a model.
struct SurfaceDatum {
  Presentation presentation;
  /// Standard coordinates (1, i, j, ij) per copy; one entry means every copy.
  std::map<std::string, std::vector<std::array<Rational, 4>>> assignment;
  std::vector<CurveDatum> curves;
  std::vector<std::pair<std::string, WordMap>> automorphisms;

  /// Throws std::invalid_argument when no curve has this name; "" picks the first.
  const CurveDatum& curve(const std::string& name) const;
  const WordMap& automorphism(const std::string& name) const;
};

/// Line format:
///   generators g h ...
///   relator <word>
///   assign g x0 x1 x2 x3 [; x0 x1 x2 x3 ...]
///   curve <name> nonseparating <word> stable h
///   curve <name> separating <word> : a1 b1 | a2 b2
///   automorphism <name> : g -> <word> ; h -> <word>
SurfaceDatum parse_datum(const std::string& text);
SurfaceDatum load_datum(const std::string& path);

/// Quaternions assigned to g, one per copy of the model.
std::vector<Quaternion> assigned_quaternions(const SurfaceDatum& d, const RightRegularModel& model, const std::string& g);

/// Product of assigned quaternions along w, per copy.
std::vector<Quaternion> evaluate_quaternion_word(const SurfaceDatum& d, const RightRegularModel& model, const Word& w);

/// rho applied to every assignment; validates curves and automorphisms too.
Representation assemble(const SurfaceDatum& d, const RightRegularModel& model);

}  // namespace quatbend
