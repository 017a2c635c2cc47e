#pragma once

#include "quatbend/exact/biquad.hpp"
#include "quatbend/exact/fp.hpp"
#include "quatbend/exact/number.hpp"

#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace quatbend {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixQ = Matrix<Rational>;
using MatrixZ = Matrix<Integer>;
using MatrixK = Matrix<BiquadQ>;
using MatrixFp = Matrix<Fp>;
using MatrixI64 = Matrix<std::int64_t>;

/// Thrown when operand shapes do not fit.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline bool is_unit(const Rational& x) { return x != 0; }
inline bool is_unit(const Integer& x) { return x == 1 || x == -1; }
inline bool is_unit(const Fp& x) { return !x.is_zero(); }
inline bool is_unit(const BiquadQ& x) { return !x.is_zero() && x.is_invertible(); }

inline bool is_zero_scalar(const Rational& x) { return x == 0; }
inline bool is_zero_scalar(const Integer& x) { return x == 0; }
inline bool is_zero_scalar(const Fp& x) { return x.is_zero(); }
inline bool is_zero_scalar(const BiquadQ& x) { return x.is_zero(); }
inline bool is_zero_scalar(std::int64_t x) { return x == 0; }

template <typename Scalar>
Matrix<Scalar> identity(Eigen::Index n) {
  Matrix<Scalar> m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = Scalar(r == c ? 1 : 0);
  return m;
}

template <typename Scalar>
Matrix<Scalar> zeros(Eigen::Index rows, Eigen::Index cols) {
  Matrix<Scalar> m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = Scalar(0);
  return m;
}

/// Exact product; Eigen's lazy product would need Scalar(0) to know the
/// biquadratic parameters, so entries are accumulated explicitly.
template <typename Scalar>
Matrix<Scalar> mul(const Matrix<Scalar>& x, const Matrix<Scalar>& y) {
  if (x.cols() != y.rows()) throw DimensionError("matrix product shape mismatch");
  Matrix<Scalar> r(x.rows(), y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < y.cols(); ++j) {
      Scalar acc = x(i, 0) * y(0, j);
      for (Eigen::Index k = 1; k < x.cols(); ++k) acc += x(i, k) * y(k, j);
      r(i, j) = acc;
    }
  }
  return r;
}

template <typename Scalar>
bool equal(const Matrix<Scalar>& x, const Matrix<Scalar>& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) return false;
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      if (!(x(i, j) == y(i, j))) return false;
  return true;
}

template <typename Scalar>
bool is_identity(const Matrix<Scalar>& m) {
  return m.rows() == m.cols() && equal(m, identity<Scalar>(m.rows()));
}

template <typename Scalar>
Matrix<Scalar> kronecker(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  Matrix<Scalar> r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return r;
}

template <typename Scalar>
struct EchelonForm {
  Matrix<Scalar> reduced;
  std::vector<Eigen::Index> pivots;
};

/// Reduced row echelon form over a field. Pivots must be units; a nonzero
/// non-unit pivot candidate (a zero divisor of a split biquadratic ring) is
/// skipped, and if a column has only such entries ArithmeticError is thrown.
template <typename Scalar>
EchelonForm<Scalar> rref(Matrix<Scalar> m) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index pivot = -1;
    bool saw_nonzero = false;
    for (Eigen::Index r = row; r < m.rows(); ++r) {
      if (is_zero_scalar(m(r, col))) continue;
      saw_nonzero = true;
      if (is_unit(m(r, col))) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) {
      if (saw_nonzero) throw ArithmeticError("elimination met a zero divisor");
      continue;
    }
    m.row(row).swap(m.row(pivot));
    Scalar inv = Scalar(1) / m(row, col);
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(row, c) = m(row, c) * inv;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero_scalar(m(r, col))) continue;
      Scalar f = m(r, col);
      for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = m(r, c) - f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

template <typename Scalar>
Eigen::Index rank(const Matrix<Scalar>& m) {
  return static_cast<Eigen::Index>(rref(m).pivots.size());
}

/// Basis of the right kernel, one vector per column, from the free variables
/// of the reduced echelon form.
template <typename Scalar>
Matrix<Scalar> kernel(const Matrix<Scalar>& m) {
  auto ef = rref(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (auto c : ef.pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<Eigen::Index> free;
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    if (!is_pivot[static_cast<std::size_t>(c)]) free.push_back(c);
  Matrix<Scalar> basis = zeros<Scalar>(m.cols(), static_cast<Eigen::Index>(free.size()));
  for (std::size_t k = 0; k < free.size(); ++k) {
    basis(free[k], static_cast<Eigen::Index>(k)) = Scalar(1);
    for (std::size_t r = 0; r < ef.pivots.size(); ++r) {
      basis(ef.pivots[r], static_cast<Eigen::Index>(k)) = -ef.reduced(static_cast<Eigen::Index>(r), free[k]);
    }
  }
  return basis;
}

/// Gauss-Jordan inverse; throws ArithmeticError when singular.
template <typename Scalar>
Matrix<Scalar> inverse(const Matrix<Scalar>& m) {
  if (m.rows() != m.cols()) throw DimensionError("inverse of a non-square matrix");
  const Eigen::Index n = m.rows();
  Matrix<Scalar> aug(n, 2 * n);
  Matrix<Scalar> id = identity<Scalar>(n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) {
      aug(r, c) = m(r, c);
      aug(r, n + c) = id(r, c) + m(r, c) * Scalar(0);
    }
  auto ef = rref(aug);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (k >= static_cast<Eigen::Index>(ef.pivots.size()) || ef.pivots[static_cast<std::size_t>(k)] != k) {
      throw ArithmeticError("matrix is singular");
    }
  }
  return ef.reduced.rightCols(n);
}

/// Determinant by elimination over a field.
template <typename Scalar>
Scalar determinant(Matrix<Scalar> m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant of a non-square matrix");
  const Eigen::Index n = m.rows();
  Scalar det(1);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = col; r < n; ++r)
      if (is_unit(m(r, col))) {
        pivot = r;
        break;
      }
    if (pivot < 0) {
      for (Eigen::Index r = col; r < n; ++r)
        if (!is_zero_scalar(m(r, col))) throw ArithmeticError("determinant met a zero divisor");
      return det * Scalar(0);
    }
    if (pivot != col) {
      m.row(col).swap(m.row(pivot));
      det = -det;
    }
    det = det * m(col, col);
    Scalar inv = Scalar(1) / m(col, col);
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (is_zero_scalar(m(r, col))) continue;
      Scalar f = m(r, col) * inv;
      for (Eigen::Index c = col; c < n; ++c) m(r, c) = m(r, c) - f * m(col, c);
    }
  }
  return det;
}

/// Integer determinant by the Bareiss fraction-free scheme.
Integer determinant_z(MatrixZ m);

MatrixQ to_rational(const MatrixZ& m);
MatrixZ to_integer(const MatrixQ& m);  // throws ArithmeticError if not integral
MatrixZ to_integer(const MatrixI64& m);
MatrixI64 to_int64(const MatrixZ& m);  // throws ArithmeticError on overflow
MatrixFp to_fp(const MatrixZ& m, std::int64_t p);
MatrixFp to_fp(const MatrixQ& m, std::int64_t p);

/// Z-basis of {x in Z^n : m x = 0}, returned as columns in row-style Hermite
/// normal form (basis vectors echelonised with positive pivots and reduced
/// entries above them).
MatrixZ integer_kernel(const MatrixZ& m);

/// Hermite normal form of the row lattice of m (zero rows dropped).
MatrixZ hermite_rows(MatrixZ m);

template <typename Scalar>
std::string to_string(const Matrix<Scalar>& m) {
  std::string out = "[";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    if (r) out += ", ";
    out += "[";
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out += ", ";
      if constexpr (std::is_same_v<Scalar, std::int64_t>) {
        out += std::to_string(m(r, c));
      } else if constexpr (std::is_same_v<Scalar, Fp>) {
        out += std::to_string(m(r, c).value());
      } else {
        out += to_string(m(r, c));
      }
    }
    out += "]";
  }
  return out + "]";
}

}  // namespace quatbend
