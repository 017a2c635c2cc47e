#include "quatbend/symplectic/forms.hpp"

#include <stdexcept>

namespace quatbend {

SkewFormZ::SkewFormZ(MatrixZ gram) : gram_(std::move(gram)) {
  if (gram_.rows() != gram_.cols() || gram_.rows() % 2 != 0) {
    throw std::invalid_argument("skew form needs an even square Gram matrix");
  }
  for (Eigen::Index r = 0; r < gram_.rows(); ++r)
    for (Eigen::Index c = 0; c < gram_.cols(); ++c)
      if (gram_(r, c) != -gram_(c, r)) throw std::invalid_argument("Gram matrix is not skew-symmetric");
  det_ = determinant_z(gram_);
  if (det_ == 0) throw std::invalid_argument("skew form is degenerate");
}

SkewFormZ form_K(Eigen::Index n) {
  MatrixZ k = zeros<Integer>(2, 2);
  k(0, 1) = 1;
  k(1, 0) = -1;
  return SkewFormZ(kronecker(identity<Integer>(n), k));
}

bool is_symplectic(const MatrixZ& m, const SkewFormZ& g) { return is_symplectic(m, g.gram()); }

bool is_symplectic(const MatrixI64& m, const MatrixI64& g) {
  const Eigen::Index n = g.rows();
  if (m.rows() != n || m.cols() != n) return false;
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      __int128 acc = 0;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (m(i, r) == 0) continue;
        __int128 row = 0;
        for (Eigen::Index j = 0; j < n; ++j) row += static_cast<__int128>(g(i, j)) * m(j, c);
        acc += static_cast<__int128>(m(i, r)) * row;
      }
      if (acc != g(r, c)) return false;
    }
  }
  return true;
}

bool quaternionic_unitary_check(const std::vector<std::vector<Quaternion>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return true;
  for (const auto& row : m)
    if (row.size() != n) throw DimensionError("quaternion matrix must be square");
  const Quaternion& ref = m[0][0];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Quaternion acc = Quaternion::scalar(ref.a(), ref.b(), 0);
      for (std::size_t k = 0; k < n; ++k) acc = acc + m[k][i].conj() * m[k][j];
      Quaternion want = Quaternion::scalar(ref.a(), ref.b(), i == j ? 1 : 0);
      if (acc != want) return false;
    }
  }
  return true;
}

MatrixK quaternion_matrix_image(const std::vector<std::vector<Quaternion>>& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  MatrixK out(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      MatrixK block = matrix_model(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
      out.block(2 * i, 2 * j, 2, 2) = block;
    }
  return out;
}

namespace {

// Congruence by the elementary column operation col_l += c * col_m.
void add_multiple(MatrixZ& g, MatrixZ& u, Eigen::Index l, Eigen::Index m, const Integer& c) {
  if (c == 0) return;
  g.col(l) += c * g.col(m);
  g.row(l) += c * g.row(m);
  u.col(l) += c * u.col(m);
}

void swap_index(MatrixZ& g, MatrixZ& u, Eigen::Index x, Eigen::Index y) {
  if (x == y) return;
  g.col(x).swap(g.col(y));
  g.row(x).swap(g.row(y));
  u.col(x).swap(u.col(y));
}

}  // namespace

SymplecticDivisors symplectic_divisors(const SkewFormZ& form) {
  MatrixZ g = form.gram();
  const Eigen::Index n = g.rows();
  MatrixZ u = identity<Integer>(n);
  std::vector<Integer> divisors;
  for (Eigen::Index k = 0; k < n; k += 2) {
    while (true) {
      Eigen::Index bi = -1, bj = -1;
      for (Eigen::Index i = k; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
          if (g(i, j) != 0 && (bi < 0 || abs(g(i, j)) < abs(g(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi < 0) throw std::invalid_argument("skew form is degenerate");
      swap_index(g, u, k, bi);
      swap_index(g, u, k + 1, bj == k ? bi : bj);
      if (g(k, k + 1) < 0) swap_index(g, u, k, k + 1);
      const Integer d = g(k, k + 1);

      bool clean = true;
      for (Eigen::Index l = k + 2; l < n; ++l) {
        add_multiple(g, u, l, k + 1, -(g(k, l) / d));
        add_multiple(g, u, l, k, g(k + 1, l) / d);
        if (g(k, l) != 0 || g(k + 1, l) != 0) clean = false;
      }
      if (!clean) continue;

      Eigen::Index bad = -1;
      for (Eigen::Index i = k + 2; i < n && bad < 0; ++i)
        for (Eigen::Index j = k + 2; j < n; ++j)
          if (g(i, j) % d != 0) {
            bad = i;
            break;
          }
      if (bad < 0) {
        divisors.push_back(d);
        break;
      }
      add_multiple(g, u, k, bad, Integer(1));
    }
  }
  return {u, divisors};
}

MatrixZ divisor_normal_form(const std::vector<Integer>& divisors) {
  const auto m = static_cast<Eigen::Index>(divisors.size());
  MatrixZ out = zeros<Integer>(2 * m, 2 * m);
  for (Eigen::Index i = 0; i < m; ++i) {
    out(2 * i, 2 * i + 1) = divisors[static_cast<std::size_t>(i)];
    out(2 * i + 1, 2 * i) = -divisors[static_cast<std::size_t>(i)];
  }
  return out;
}

namespace {

// Rows: entries of X M - M X for each M, in terms of the n^2 entries of X.
template <typename Scalar>
Matrix<Scalar> commutation_system(const std::vector<Matrix<Scalar>>& mats, Eigen::Index n) {
  const Eigen::Index vars = n * n;
  Matrix<Scalar> sys = zeros<Scalar>(vars * static_cast<Eigen::Index>(mats.size()), vars);
  for (std::size_t t = 0; t < mats.size(); ++t) {
    const auto& m = mats[t];
    if (m.rows() != n || m.cols() != n) throw DimensionError("commutant needs same-size square matrices");
    const Eigen::Index base = static_cast<Eigen::Index>(t) * vars;
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < n; ++c) {
        // (XM - MX)_{rc} = sum_k X_{rk} M_{kc} - M_{rk} X_{kc}
        for (Eigen::Index k = 0; k < n; ++k) {
          sys(base + r * n + c, r * n + k) += m(k, c);
          sys(base + r * n + c, k * n + c) -= m(r, k);
        }
      }
  }
  return sys;
}

template <typename Scalar>
Matrix<Scalar> unflatten(const Matrix<Scalar>& basis, Eigen::Index col, Eigen::Index n) {
  Matrix<Scalar> x(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) x(r, c) = basis(r * n + c, col);
  return x;
}

}  // namespace

std::vector<MatrixQ> commutant_basis(const std::vector<MatrixQ>& mats) {
  if (mats.empty()) throw std::invalid_argument("commutant of an empty family");
  const Eigen::Index n = mats[0].rows();
  MatrixQ ker = kernel(commutation_system(mats, n));
  std::vector<MatrixQ> out;
  for (Eigen::Index v = 0; v < ker.cols(); ++v) out.push_back(unflatten(ker, v, n));
  return out;
}

std::vector<MatrixZ> commutant_lattice(const std::vector<MatrixZ>& mats) {
  if (mats.empty()) throw std::invalid_argument("commutant of an empty family");
  const Eigen::Index n = mats[0].rows();
  MatrixZ ker = integer_kernel(commutation_system(mats, n));
  std::vector<MatrixZ> out;
  for (Eigen::Index v = 0; v < ker.cols(); ++v) out.push_back(unflatten(ker, v, n));
  return out;
}

std::vector<MatrixQ> commutant_lie_basis(const std::vector<MatrixQ>& mats, const MatrixQ& g) {
  const Eigen::Index n = g.rows();
  MatrixQ comm = commutation_system(mats, n);
  const Eigen::Index vars = n * n;
  MatrixQ lie = zeros<Rational>(vars, vars);
  // (X^T G + G X)_{rc} = sum_k X_{kr} G_{kc} + G_{rk} X_{kc}
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c)
      for (Eigen::Index k = 0; k < n; ++k) {
        lie(r * n + c, k * n + r) += g(k, c);
        lie(r * n + c, k * n + c) += g(r, k);
      }
  MatrixQ sys(comm.rows() + lie.rows(), vars);
  sys << comm, lie;
  MatrixQ ker = kernel(sys);
  std::vector<MatrixQ> out;
  for (Eigen::Index v = 0; v < ker.cols(); ++v) out.push_back(unflatten(ker, v, n));
  return out;
}

MatrixZ interleave_permutation(Eigen::Index n) {
  MatrixZ p = zeros<Integer>(2 * n, 2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    p(2 * k, k) = 1;
    p(2 * k + 1, n + k) = 1;
  }
  return p;
}

}  // namespace quatbend
