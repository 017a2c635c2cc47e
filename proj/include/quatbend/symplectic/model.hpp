#pragma once

#include "quatbend/exact/matrix.hpp"
#include "quatbend/quaternion/quaternion.hpp"
#include "quatbend/symplectic/forms.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace quatbend {

/// An order acting on k copies of itself by z -> z conj(g), with the pairing
/// beta(z, w) = trd(mu z conj(w)) on each copy.
class RightRegularModel {
 public:
  /// Throws AlgebraError if mu is not pure and invertible, the basis is not
  /// closed under multiplication, or the pairing is not integral.
  RightRegularModel(OrderBasis order, Quaternion mu, int copies);

  const OrderBasis& order() const { return order_; }
  const QuaternionAlgebra& algebra() const { return order_.algebra(); }
  const Quaternion& mu() const { return mu_; }
  int copies() const { return copies_; }
  Eigen::Index dim() const { return 4 * copies_; }
  const SkewFormZ& form() const { return form_; }

 private:
  OrderBasis order_;
  Quaternion mu_;
  int copies_;
  SkewFormZ form_;
};

/// Gram matrix of beta on the full 4k-dimensional model.
SkewFormZ beta_gram(const RightRegularModel& model);

/// Gram matrix of trd(mu e_r conj(e_s)) on one copy; throws AlgebraError if
/// the result is not skew (mu not pure).
MatrixQ beta_gram_rational(const OrderBasis& order, const Quaternion& mu);

/// Right action of conj(g) on one copy: column r holds the coordinates of e_r conj(g).
MatrixQ right_action(const OrderBasis& order, const Quaternion& g);

/// Block sum over copies of the right action; one element per copy. Throws
/// AlgebraError unless each element lies in the order with reduced norm 1.
MatrixZ rho(const RightRegularModel& model, const std::vector<Quaternion>& per_copy);
/// Same element on every copy.
MatrixZ rho(const RightRegularModel& model, const Quaternion& g);

/// Model description: "algebra a b", "basis standard" or four "basis x0 x1 x2 x3"
/// lines, "mu x0 x1 x2 x3", "copies k".
RightRegularModel parse_model(const std::string& text);
RightRegularModel load_model(const std::string& path);

/// Basis over Q(sqrt a) in which rho(gamma) is diag(l, 1/l, l, 1/l, ...).
struct CentralizerFrame {
  PellElement gamma;
  BiquadQ lambda;
  MatrixK frame;            // columns are the frame vectors
  MatrixK frame_inverse;
  MatrixK diagonal;         // frame^{-1} rho(gamma) frame
  MatrixK transformed_form; // frame^T G frame
  int blocks = 0;           // two-dimensional blocks V_1..V_blocks
};

/// Blocks e'(A (x) K) and (1-e')(A (x) K) per copy, with e' = (1+y)/2 for a
/// pure y of square 1 anticommuting with mu, each split into the two
/// eigenlines of the Pell element. Needs mu in Q i.
CentralizerFrame eigenframe(const RightRegularModel& model, const PellElement& gamma);

/// True iff B maps no proper nonempty union of frame blocks onto a union of blocks.
bool genericity_check(const MatrixZ& b, const CentralizerFrame& frame);

struct BendElement {
  MatrixZ matrix;
  std::vector<std::int64_t> coords;  // in the commutant lattice basis
  std::int64_t height = 0;
  bool commutes = false;
  bool symplectic = false;
  bool generic = false;
};

struct BSearchOptions {
  std::int64_t height = 2;
  std::uint64_t candidate_budget = 20'000'000;
  unsigned threads = 1;
};

struct BSearchResult {
  std::vector<MatrixZ> lattice;  // Z-basis of the integral commutant
  std::vector<BendElement> hits; // generic symplectic elements
  std::uint64_t enumerated = 0;
  std::uint64_t symplectic_hits = 0;
  bool truncated = false;        // budget stopped the enumeration early
};

/// Enumerates lattice coordinates in [-H, H]^d, keeps symplectic generic
/// elements, sorted by height then entry vector.
BSearchResult b_search(const RightRegularModel& model, const PellElement& gamma, const BSearchOptions& options);

}  // namespace quatbend
