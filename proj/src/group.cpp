#include "quatbend/modp/group.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace quatbend {

Integer sp_order(int n, std::int64_t q) {
  if (n < 1 || q < 2) throw std::invalid_argument("sp_order needs n >= 1 and q >= 2");
  Integer qq(q);
  Integer out = pow(qq, static_cast<unsigned>(n * n));
  for (int i = 1; i <= n; ++i) out *= pow(qq, static_cast<unsigned>(2 * i)) - 1;
  return out;
}

namespace {

constexpr int kMaxDim = 14;
constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

struct GMat {
  std::array<std::uint32_t, kMaxDim * kMaxDim> a{};
  bool operator==(const GMat& o) const { return a == o.a; }
};

struct GMatHash {
  std::size_t operator()(const GMat& m) const {
    std::uint64_t h = 1469598103934665603ull;
    for (auto v : m.a) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

class Field {
 public:
  Field(int n, std::uint32_t p) : n_(n), p_(p), small_(p < (1u << 28)), magic_(~std::uint64_t{0} / p + 1) {
    pow_.resize(static_cast<std::size_t>(n) + 1);
    pow_[0] = 1;
    for (int i = 1; i <= n; ++i) pow_[static_cast<std::size_t>(i)] = pow_[static_cast<std::size_t>(i) - 1] * p;
  }
  int n() const { return n_; }
  std::uint32_t p() const { return p_; }
  std::uint64_t domain() const { return pow_[static_cast<std::size_t>(n_)]; }
  std::uint64_t basis_point(int t) const { return pow_[static_cast<std::size_t>(t)]; }

  GMat identity() const {
    GMat m;
    for (int i = 0; i < n_; ++i) m.a[static_cast<std::size_t>(i * kMaxDim + i)] = 1;
    return m;
  }
  bool is_identity(const GMat& m) const { return m == identity(); }

  GMat mul(const GMat& x, const GMat& y) const {
    GMat r;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        std::uint64_t acc = 0;
        // For p < 2^28 up to 14 products fit in 64 bits before reduction.
        if (small_) {
          for (int k = 0; k < n_; ++k)
            acc += static_cast<std::uint64_t>(x.a[static_cast<std::size_t>(i * kMaxDim + k)]) *
                   y.a[static_cast<std::size_t>(k * kMaxDim + j)];
        } else {
          for (int k = 0; k < n_; ++k) {
            acc += static_cast<std::uint64_t>(x.a[static_cast<std::size_t>(i * kMaxDim + k)]) *
                   y.a[static_cast<std::size_t>(k * kMaxDim + j)];
            acc %= p_;
          }
        }
        r.a[static_cast<std::size_t>(i * kMaxDim + j)] = static_cast<std::uint32_t>(acc % p_);
      }
    return r;
  }

  std::uint32_t apply(const GMat& m, std::uint32_t point) const {
    std::array<std::uint32_t, kMaxDim> v{};
    std::uint32_t x = point;
    for (int i = 0; i < n_; ++i) {
      const std::uint32_t q = div(x);
      v[static_cast<std::size_t>(i)] = x - q * p_;
      x = q;
    }
    std::uint64_t out = 0;
    for (int r = n_ - 1; r >= 0; --r) {
      std::uint64_t acc = 0;
      for (int c = 0; c < n_; ++c)
        acc += static_cast<std::uint64_t>(m.a[static_cast<std::size_t>(r * kMaxDim + c)]) * v[static_cast<std::size_t>(c)];
      out = out * p_ + (acc >> 32 ? acc % p_ : mod(static_cast<std::uint32_t>(acc)));
    }
    return static_cast<std::uint32_t>(out);
  }

  GMat inverse(const GMat& m) const {
    // Gauss-Jordan over F_p.
    GMat a = m, inv = identity();
    for (int col = 0; col < n_; ++col) {
      int piv = -1;
      for (int r = col; r < n_; ++r)
        if (a.a[static_cast<std::size_t>(r * kMaxDim + col)] != 0) {
          piv = r;
          break;
        }
      if (piv < 0) throw ArithmeticError("singular matrix in group computation");
      for (int c = 0; c < n_; ++c) {
        std::swap(a.a[static_cast<std::size_t>(col * kMaxDim + c)], a.a[static_cast<std::size_t>(piv * kMaxDim + c)]);
        std::swap(inv.a[static_cast<std::size_t>(col * kMaxDim + c)], inv.a[static_cast<std::size_t>(piv * kMaxDim + c)]);
      }
      std::uint64_t s = modinv(a.a[static_cast<std::size_t>(col * kMaxDim + col)]);
      for (int c = 0; c < n_; ++c) {
        a.a[static_cast<std::size_t>(col * kMaxDim + c)] =
            static_cast<std::uint32_t>(a.a[static_cast<std::size_t>(col * kMaxDim + c)] * s % p_);
        inv.a[static_cast<std::size_t>(col * kMaxDim + c)] =
            static_cast<std::uint32_t>(inv.a[static_cast<std::size_t>(col * kMaxDim + c)] * s % p_);
      }
      for (int r = 0; r < n_; ++r) {
        if (r == col) continue;
        std::uint64_t f = a.a[static_cast<std::size_t>(r * kMaxDim + col)];
        if (f == 0) continue;
        for (int c = 0; c < n_; ++c) {
          auto sub = [&](GMat& t) {
            std::uint64_t v = t.a[static_cast<std::size_t>(r * kMaxDim + c)] +
                              static_cast<std::uint64_t>(p_) * p_ - f * t.a[static_cast<std::size_t>(col * kMaxDim + c)];
            t.a[static_cast<std::size_t>(r * kMaxDim + c)] = static_cast<std::uint32_t>(v % p_);
          };
          sub(a);
          sub(inv);
        }
      }
    }
    return inv;
  }

  GMat from(const MatrixFp& m) const {
    GMat g;
    for (int r = 0; r < n_; ++r)
      for (int c = 0; c < n_; ++c) {
        std::int64_t v = m(r, c).value() % static_cast<std::int64_t>(p_);
        if (v < 0) v += p_;
        g.a[static_cast<std::size_t>(r * kMaxDim + c)] = static_cast<std::uint32_t>(v);
      }
    return g;
  }

 private:
  // Division by p via a precomputed reciprocal, exact for 32-bit numerators.
  std::uint32_t div(std::uint32_t x) const {
    return static_cast<std::uint32_t>((static_cast<unsigned __int128>(magic_) * x) >> 64);
  }
  std::uint32_t mod(std::uint32_t x) const {
    const std::uint64_t low = magic_ * x;
    return static_cast<std::uint32_t>((static_cast<unsigned __int128>(low) * p_) >> 64);
  }

  std::uint64_t modinv(std::uint64_t x) const {
    std::uint64_t r = 1, b = x % p_, e = p_ - 2;
    while (e) {
      if (e & 1) r = r * b % p_;
      b = b * b % p_;
      e >>= 1;
    }
    return r;
  }

  int n_;
  std::uint32_t p_;
  bool small_;
  std::uint64_t magic_;
  std::vector<std::uint64_t> pow_;
};

struct Level {
  std::uint32_t base = 0;
  std::vector<std::uint32_t> gens;    // element ids
  std::vector<std::uint32_t> parent;  // dense; kNone outside the orbit
  std::vector<std::uint64_t> member;  // bitmap of the orbit, cache-friendly membership test
  std::vector<std::uint16_t> label;   // slot in gens taking parent to point
  std::vector<std::uint32_t> orbit;
  std::vector<std::uint32_t> done;    // per orbit position: generators already paired
};

class Chain {
 public:
  Chain(const Field& f, const GroupBudget& budget) : f_(f), budget_(budget) {}

  std::uint32_t store(const GMat& g) {
    elems_.push_back(g);
    inverses_.push_back(f_.inverse(g));
    return static_cast<std::uint32_t>(elems_.size() - 1);
  }

  bool new_level(std::uint32_t base) {
    const std::uint64_t bytes_per = sizeof(std::uint32_t) + sizeof(std::uint16_t);
    memory_ += f_.domain() * bytes_per;
    if (memory_ > budget_.max_memory_bytes) return false;
    Level lvl;
    lvl.base = base;
    lvl.parent.assign(f_.domain(), kNone);
    lvl.label.assign(f_.domain(), 0);
    lvl.member.assign(f_.domain() / 64 + 1, 0);
    lvl.parent[base] = base;
    lvl.member[base / 64] |= std::uint64_t{1} << (base % 64);
    lvl.orbit.push_back(base);
    lvl.done.push_back(0);
    levels_.push_back(std::move(lvl));
    return true;
  }

  // Adds element ids to the generators of level l and extends its orbit.
  void add_generators(std::size_t l, const std::vector<std::uint32_t>& ids) {
    Level& lvl = levels_[l];
    if (lvl.gens.size() + ids.size() >= std::numeric_limits<std::uint16_t>::max()) {
      throw std::length_error("too many strong generators");
    }
    const std::size_t old = lvl.orbit.size();
    const std::size_t first_new = lvl.gens.size();
    lvl.gens.insert(lvl.gens.end(), ids.begin(), ids.end());
    for (std::size_t pos = 0; pos < lvl.orbit.size(); ++pos) {
      std::size_t from = pos < old ? first_new : 0;
      for (std::size_t s = from; s < lvl.gens.size(); ++s) {
        std::uint32_t y = f_.apply(elems_[lvl.gens[s]], lvl.orbit[pos]);
        std::uint64_t& word = lvl.member[y / 64];
        const std::uint64_t bit = std::uint64_t{1} << (y % 64);
        if (!(word & bit)) {
          word |= bit;
          lvl.parent[y] = lvl.orbit[pos];
          lvl.label[y] = static_cast<std::uint16_t>(s);
          lvl.orbit.push_back(y);
          lvl.done.push_back(0);
        }
      }
    }
  }

  // Drops the last level and returns its memory to the budget.
  void pop_level() {
    levels_.pop_back();
    memory_ -= f_.domain() * (sizeof(std::uint32_t) + sizeof(std::uint16_t));
  }

  // Strips g by the transversal of level l: returns false if g(base) leaves the orbit.
  bool strip(std::size_t l, GMat& g) const {
    const Level& lvl = levels_[l];
    std::uint32_t d = f_.apply(g, lvl.base);
    if (lvl.parent[d] == kNone) return false;
    while (d != lvl.base) {
      std::uint32_t s = lvl.gens[lvl.label[d]];
      g = f_.mul(inverses_[s], g);
      d = lvl.parent[d];
    }
    return true;
  }

  // Transversal element taking the base of level l to point x.
  GMat transversal(std::size_t l, std::uint32_t x) const {
    const Level& lvl = levels_[l];
    GMat u = f_.identity();
    // u_x = s_k ... s_1 along the tree path; accumulate from the point side.
    while (x != lvl.base) {
      std::uint32_t s = lvl.gens[lvl.label[x]];
      u = f_.mul(u, elems_[s]);
      x = lvl.parent[x];
    }
    return u;
  }

  // Sifts g from level l; returns the level where it stopped (size() if through).
  std::size_t sift(GMat& g, std::size_t l) const {
    for (; l < levels_.size(); ++l)
      if (!strip(l, g)) return l;
    return levels_.size();
  }

  Integer orbit_product() const {
    Integer r = 1;
    for (const auto& lvl : levels_) r *= static_cast<unsigned long long>(lvl.orbit.size());
    return r;
  }

  std::vector<Level>& levels() { return levels_; }
  const GMat& elem(std::uint32_t id) const { return elems_[id]; }

 private:
  const Field& f_;
  const GroupBudget& budget_;
  std::vector<Level> levels_;
  std::vector<GMat> elems_;
  std::vector<GMat> inverses_;
  std::uint64_t memory_ = 0;
};

int first_moved_basis_vector(const Field& f, const GMat& g) {
  for (int t = 0; t < f.n(); ++t) {
    auto e = static_cast<std::uint32_t>(f.basis_point(t));
    if (f.apply(g, e) != e) return t;
  }
  return -1;
}

void check_square(const std::vector<MatrixFp>& gens, std::int64_t p, int& n) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("group order needs an odd prime");
  n = gens.empty() ? 0 : static_cast<int>(gens[0].rows());
  for (const auto& g : gens)
    if (g.rows() != n || g.cols() != n) throw DimensionError("generators must be square and equal-sized");
  if (n > kMaxDim) throw DimensionError("matrix size exceeds the supported maximum");
}

}  // namespace

GroupOrderResult group_order(const std::vector<MatrixFp>& gens, std::int64_t p, const std::optional<Integer>& target,
                             const GroupBudget& budget) {
  int n = 0;
  check_square(gens, p, n);
  GroupOrderResult res;
  if (n == 0) {
    res.decided = true;
    res.order = 1;
    return res;
  }
  Field f(n, static_cast<std::uint32_t>(p));
  if (f.domain() > budget.max_points || f.domain() > kNone) {
    res.reason = "point domain " + std::to_string(p) + "^" + std::to_string(n) + " exceeds budget";
    return res;
  }
  std::vector<GMat> g;
  for (const auto& m : gens) {
    GMat x = f.from(m);
    if (!f.is_identity(x)) g.push_back(x);
  }
  if (g.empty()) {
    res.decided = true;
    res.order = 1;
    res.reached_target = target && *target == 1;
    return res;
  }

  Chain chain(f, budget);
  auto out_of_memory = [&] {
    res.reason = "stabiliser chain memory exceeds budget";
    return res;
  };
  std::vector<std::uint32_t> ids;
  for (const auto& x : g) ids.push_back(chain.store(x));

  // First base point: the basis vector with the largest orbit (a full orbit wins at once).
  int best = -1;
  std::size_t best_size = 0;
  for (int t = 0; t < n; ++t) {
    if (!chain.new_level(static_cast<std::uint32_t>(f.basis_point(t)))) return out_of_memory();
    chain.add_generators(0, ids);
    std::size_t size = chain.levels()[0].orbit.size();
    if (size == f.domain() - 1) break;
    chain.pop_level();
    if (size > best_size) {
      best_size = size;
      best = t;
    }
  }
  if (chain.levels().empty()) {
    if (!chain.new_level(static_cast<std::uint32_t>(f.basis_point(best)))) return out_of_memory();
    chain.add_generators(0, ids);
  }

  auto reached = [&] { return target && chain.orbit_product() == *target; };
  auto finish = [&](bool hit) {
    res.decided = true;
    res.reached_target = hit;
    res.order = chain.orbit_product();
    for (const auto& lvl : chain.levels()) res.basic_orbits.push_back(lvl.orbit.size());
    return res;
  };
  if (reached()) return finish(true);

  std::size_t i = chain.levels().size() - 1;
  while (true) {
    bool restarted = false;
    Level* lvl = &chain.levels()[i];
    for (std::size_t pos = 0; pos < lvl->orbit.size() && !restarted; ++pos) {
      while (lvl->done[pos] < lvl->gens.size()) {
        const std::size_t slot = lvl->done[pos];
        const std::uint32_t x = lvl->orbit[pos];
        const std::uint32_t s = lvl->gens[slot];
        if (++res.sifts > budget.max_sifts) {
          res.reason = "Schreier generator budget exhausted";
          return res;
        }
        GMat h = f.mul(chain.elem(s), chain.transversal(i, x));
        if (!chain.strip(i, h)) throw std::logic_error("Schreier generator left the orbit");
        std::size_t stop = chain.sift(h, i + 1);
        if (stop == chain.levels().size() && f.is_identity(h)) {
          ++lvl->done[pos];
          continue;
        }
        // New strong generator for levels i+1 .. stop.
        if (stop == chain.levels().size()) {
          int t = first_moved_basis_vector(f, h);
          if (!chain.new_level(static_cast<std::uint32_t>(f.basis_point(t)))) return out_of_memory();
        }
        std::uint32_t id = chain.store(h);
        for (std::size_t l = i + 1; l <= stop; ++l) chain.add_generators(l, {id});
        if (reached()) return finish(true);
        i = stop;
        restarted = true;
        break;
      }
    }
    if (restarted) continue;
    if (i == 0) break;
    --i;
  }
  return finish(reached());
}

std::optional<std::uint64_t> closure_order(const std::vector<MatrixFp>& gens, std::int64_t p, std::uint64_t limit) {
  int n = 0;
  check_square(gens, p, n);
  if (n == 0) return 1;
  Field f(n, static_cast<std::uint32_t>(p));
  std::vector<GMat> g;
  for (const auto& m : gens) g.push_back(f.from(m));
  std::unordered_set<GMat, GMatHash> seen;
  std::vector<GMat> queue{f.identity()};
  seen.insert(queue[0]);
  for (std::size_t k = 0; k < queue.size(); ++k) {
    for (const auto& s : g) {
      GMat y = f.mul(s, queue[k]);
      if (seen.insert(y).second) {
        if (seen.size() > limit) return std::nullopt;
        queue.push_back(y);
      }
    }
  }
  return seen.size();
}

std::vector<MatrixFp> standard_sp_generators(int n, std::int64_t p) {
  const Eigen::Index dim = 2 * n;
  std::vector<MatrixFp> out;
  auto id = [&] {
    MatrixFp m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r)
      for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = Fp(r == c ? 1 : 0, p);
    return m;
  };
  for (int i = 0; i < n; ++i) {
    MatrixFp up = id(), low = id();
    up(2 * i, 2 * i + 1) = Fp(1, p);
    low(2 * i + 1, 2 * i) = Fp(1, p);
    out.push_back(up);
    out.push_back(low);
  }
  // Transvection x -> x + <x, v> v with <x, y> = x^T K_n y and v = e_{2i+1} + e_{2i+2}.
  for (int i = 0; i + 1 < n; ++i) {
    MatrixFp t = id();
    const Eigen::Index a = 2 * i + 1, b = 2 * i + 2;
    // <x, e_a> = x_{a-1} and <x, e_b> = -x_{b+1}.
    std::vector<std::pair<Eigen::Index, int>> functional{{a - 1, 1}, {b + 1, -1}};
    for (Eigen::Index target : {a, b})
      for (auto [src, coeff] : functional) t(target, src) = t(target, src) + Fp(coeff, p);
    out.push_back(t);
  }
  return out;
}

std::optional<std::uint64_t> matrix_order(const MatrixFp& m, std::uint64_t limit) {
  if (m.rows() != m.cols()) throw DimensionError("order of a non-square matrix");
  MatrixFp x = m;
  for (std::uint64_t k = 1; k <= limit; ++k) {
    if (is_identity(x)) return k;
    x = mul(x, m);
  }
  return std::nullopt;
}

}  // namespace quatbend
