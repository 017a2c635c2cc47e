#include "quatbend/exact/matrix.hpp"

#include <limits>

namespace quatbend {

namespace {

// Unimodular row reduction of m to echelon form over Z, restricted to the
// first `cols` columns. Returns the number of nonzero rows of the echelon part.
Eigen::Index integer_echelon(MatrixZ& m, Eigen::Index cols) {
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < cols && row < m.rows(); ++col) {
    while (true) {
      Eigen::Index best = -1;
      for (Eigen::Index r = row; r < m.rows(); ++r) {
        if (m(r, col) == 0) continue;
        if (best < 0 || abs(m(r, col)) < abs(m(best, col))) best = r;
      }
      if (best < 0) break;
      m.row(row).swap(m.row(best));
      bool done = true;
      for (Eigen::Index r = row + 1; r < m.rows(); ++r) {
        if (m(r, col) == 0) continue;
        Integer q = m(r, col) / m(row, col);
        for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) -= q * m(row, c);
        if (m(r, col) != 0) done = false;
      }
      if (done) {
        ++row;
        break;
      }
    }
  }
  return row;
}

}  // namespace

Integer determinant_z(MatrixZ m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant of a non-square matrix");
  const Eigen::Index n = m.rows();
  if (n == 0) return Integer(1);
  Integer sign = 1, prev = 1;
  for (Eigen::Index k = 0; k < n - 1; ++k) {
    if (m(k, k) == 0) {
      Eigen::Index swap = -1;
      for (Eigen::Index r = k + 1; r < n; ++r)
        if (m(r, k) != 0) {
          swap = r;
          break;
        }
      if (swap < 0) return Integer(0);
      m.row(k).swap(m.row(swap));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      }
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

MatrixQ to_rational(const MatrixZ& m) {
  MatrixQ r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

MatrixZ to_integer(const MatrixQ& m) {
  MatrixZ r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (!is_integral(m(i, j))) throw ArithmeticError("matrix entry is not integral: " + to_string(m(i, j)));
      r(i, j) = num(m(i, j));
    }
  return r;
}

MatrixZ to_integer(const MatrixI64& m) {
  MatrixZ r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = Integer(m(i, j));
  return r;
}

MatrixI64 to_int64(const MatrixZ& m) {
  static const Integer lo(std::numeric_limits<std::int64_t>::min());
  static const Integer hi(std::numeric_limits<std::int64_t>::max());
  MatrixI64 r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) < lo || m(i, j) > hi) throw ArithmeticError("matrix entry exceeds 64 bits");
      r(i, j) = m(i, j).convert_to<std::int64_t>();
    }
  return r;
}

MatrixFp to_fp(const MatrixZ& m, std::int64_t p) {
  MatrixFp r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      Integer v = m(i, j) % p;
      r(i, j) = Fp(v.convert_to<std::int64_t>(), p);
    }
  return r;
}

MatrixFp to_fp(const MatrixQ& m, std::int64_t p) {
  MatrixFp r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = Fp(mod_reduce(m(i, j), p), p);
  return r;
}

MatrixZ hermite_rows(MatrixZ m) {
  Eigen::Index rank = integer_echelon(m, m.cols());
  MatrixZ h = m.topRows(rank);
  Eigen::Index col = 0;
  for (Eigen::Index r = 0; r < rank; ++r) {
    while (h(r, col) == 0) ++col;
    if (h(r, col) < 0) h.row(r) = (-h.row(r)).eval();
    for (Eigen::Index above = 0; above < r; ++above) {
      Integer q = h(above, col) / h(r, col);
      if (h(above, col) - q * h(r, col) < 0) q -= 1;
      if (q != 0)
        for (Eigen::Index c = 0; c < h.cols(); ++c) h(above, c) -= q * h(r, c);
    }
    ++col;
  }
  return h;
}

MatrixZ integer_kernel(const MatrixZ& m) {
  const Eigen::Index n = m.cols();
  MatrixZ aug = zeros<Integer>(n, m.rows() + n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < m.rows(); ++j) aug(i, j) = m(j, i);
    aug(i, m.rows() + i) = 1;
  }
  Eigen::Index rank = integer_echelon(aug, m.rows());
  MatrixZ basis = aug.bottomRows(n - rank).rightCols(n);
  if (basis.rows() == 0) return MatrixZ(n, 0);
  return hermite_rows(basis).transpose();
}

}  // namespace quatbend
