#pragma once

#include "quatbend/exact/matrix.hpp"
#include "quatbend/quaternion/quaternion.hpp"

#include <vector>

namespace quatbend {

/// Nondegenerate skew-symmetric integer Gram matrix.
class SkewFormZ {
 public:
  /// Throws std::invalid_argument unless G^T = -G and det G != 0.
  explicit SkewFormZ(MatrixZ gram);

  const MatrixZ& gram() const { return gram_; }
  Eigen::Index dim() const { return gram_.rows(); }
  const Integer& det() const { return det_; }

 private:
  MatrixZ gram_;
  Integer det_;
};

/// K_n = I_n (x) [[0,1],[-1,0]].
SkewFormZ form_K(Eigen::Index n);

/// I_n (x) A.
template <typename Scalar>
Matrix<Scalar> phi_n(const Matrix<Scalar>& a, Eigen::Index n) {
  return kronecker(identity<Scalar>(n), a);
}

/// M^T G M == G exactly.
template <typename Scalar>
bool is_symplectic(const Matrix<Scalar>& m, const Matrix<Scalar>& g) {
  if (m.rows() != m.cols() || m.rows() != g.rows()) return false;
  Matrix<Scalar> mt = m.transpose();
  return equal(mul(mul(mt, g), m), g);
}

bool is_symplectic(const MatrixZ& m, const SkewFormZ& g);
bool is_symplectic(const MatrixI64& m, const MatrixI64& g);

/// Conjugate-transpose(M) * M == I for a square matrix of quaternions.
bool quaternionic_unitary_check(const std::vector<std::vector<Quaternion>>& m);

/// Block matrix of matrix_model entries (2n x 2n over the biquadratic ring).
MatrixK quaternion_matrix_image(const std::vector<std::vector<Quaternion>>& m);

struct SymplecticDivisors {
  MatrixZ u;                     // unimodular, U^T G U = (+) d_i K
  std::vector<Integer> divisors; // d_1 | d_2 | ...
};

/// Skew Smith normal form by congruence pivoting.
SymplecticDivisors symplectic_divisors(const SkewFormZ& g);

/// (+) d_i K for the given divisors.
MatrixZ divisor_normal_form(const std::vector<Integer>& divisors);

/// Q-basis of {X : X M = M X for every M in mats}.
std::vector<MatrixQ> commutant_basis(const std::vector<MatrixQ>& mats);

/// Z-basis of the integer matrices commuting with every M in mats.
std::vector<MatrixZ> commutant_lattice(const std::vector<MatrixZ>& mats);

/// Q-basis of {X in commutant : X^T G + G X = 0}.
std::vector<MatrixQ> commutant_lie_basis(const std::vector<MatrixQ>& mats, const MatrixQ& g);

/// The interleaving permutation with P e_k = e_{2k-1} and P e_{n+k} = e_{2k}
/// (1-based), as a 2n x 2n matrix.
MatrixZ interleave_permutation(Eigen::Index n);

/// M has the centraliser pattern of phi_n(diag(l, 1/l)) (entries between odd
/// and even positions vanish); conjugating by P gives diag(M1, M2); if M is
/// symplectic for K_n then M2 = M1^{-T}; and P^T K_n P = [[0,I],[-I,0]].
template <typename Scalar>
bool centralizer_pattern_check(const Matrix<Scalar>& m, Eigen::Index n) {
  if (m.rows() != 2 * n || m.cols() != 2 * n) return false;
  for (Eigen::Index r = 0; r < 2 * n; ++r)
    for (Eigen::Index c = 0; c < 2 * n; ++c)
      if ((r % 2) != (c % 2) && !is_zero_scalar(m(r, c))) return false;

  MatrixZ pz = interleave_permutation(n);
  Matrix<Scalar> p(2 * n, 2 * n);
  for (Eigen::Index r = 0; r < 2 * n; ++r)
    for (Eigen::Index c = 0; c < 2 * n; ++c) p(r, c) = Scalar(pz(r, c) == 1 ? 1 : 0);
  Matrix<Scalar> pt = p.transpose();
  Matrix<Scalar> blocks = mul(mul(pt, m), p);
  for (Eigen::Index r = 0; r < 2 * n; ++r)
    for (Eigen::Index c = 0; c < 2 * n; ++c)
      if ((r < n) != (c < n) && !is_zero_scalar(blocks(r, c))) return false;

  MatrixZ kz = form_K(n).gram();
  Matrix<Scalar> k(2 * n, 2 * n);
  for (Eigen::Index r = 0; r < 2 * n; ++r)
    for (Eigen::Index c = 0; c < 2 * n; ++c) k(r, c) = Scalar(kz(r, c).template convert_to<int>());
  Matrix<Scalar> jform = zeros<Scalar>(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    jform(i, n + i) = Scalar(1);
    jform(n + i, i) = Scalar(-1);
  }
  if (!equal(mul(mul(pt, k), p), jform)) return false;

  if (is_symplectic(m, k)) {
    Matrix<Scalar> m1 = blocks.topLeftCorner(n, n);
    Matrix<Scalar> m2 = blocks.bottomRightCorner(n, n);
    Matrix<Scalar> m1it = inverse(m1).transpose();
    if (!equal(m2, m1it)) return false;
  }
  return true;
}

}  // namespace quatbend
