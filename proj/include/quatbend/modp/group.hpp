#pragma once

#include "quatbend/exact/matrix.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace quatbend {

/// q^(n^2) prod_{i=1..n} (q^(2i) - 1), the order of Sp(2n, q).
Integer sp_order(int n, std::int64_t q);

struct GroupBudget {
  std::uint64_t max_points = 10'000'000;          // p^N must not exceed this
  std::uint64_t max_memory_bytes = 2'000'000'000; // dense orbit tables
  std::uint64_t max_sifts = 20'000'000;           // Schreier generators examined
};

struct GroupOrderResult {
  bool decided = false;
  Integer order = 0;          // valid when decided
  bool reached_target = false;
  std::string reason;         // why undecided
  std::uint64_t sifts = 0;
  std::vector<std::uint64_t> basic_orbits;
};

/// Order of the group generated by square matrices over F_p, via a
/// deterministic stabiliser chain on the nonzero vectors of F_p^N. If target
/// is given and the product of basic orbit lengths reaches it, the search
/// stops early: that product is a lower bound for the order.
GroupOrderResult group_order(const std::vector<MatrixFp>& gens, std::int64_t p,
                             const std::optional<Integer>& target = std::nullopt,
                             const GroupBudget& budget = {});

/// Number of elements by breadth-first closure; nullopt once limit is passed.
std::optional<std::uint64_t> closure_order(const std::vector<MatrixFp>& gens, std::int64_t p,
                                           std::uint64_t limit = 1'000'000);

/// Transvection generators of Sp(2n, p) for the form K_n: in each block
/// [[1,1],[0,1]] and [[1,0],[1,1]], plus x -> x + <x,v> v for v = e_{2i+1} + e_{2i+2}.
std::vector<MatrixFp> standard_sp_generators(int n, std::int64_t p);

/// Multiplicative order of m in GL(N, p), or nullopt beyond limit.
std::optional<std::uint64_t> matrix_order(const MatrixFp& m, std::uint64_t limit);

}  // namespace quatbend
