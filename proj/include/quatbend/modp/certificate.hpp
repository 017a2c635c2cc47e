#pragma once

#include "quatbend/modp/group.hpp"
#include "quatbend/surface/representation.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace quatbend {

/// Generator images and form over F_p, each image symplectic mod p.
struct ReducedRep {
  std::int64_t p = 0;
  std::vector<MatrixFp> gens;
  MatrixFp form;
  Eigen::Index half_dim() const { return form.rows() / 2; }
};

/// True for p = 2 and for primes dividing det of the form.
bool is_bad_prime(const SkewFormZ& form, std::int64_t p);

/// Throws std::invalid_argument("bad reduction prime ...") for bad or non-prime p,
/// and std::logic_error if an image fails to be symplectic mod p.
ReducedRep reduce(const std::vector<MatrixZ>& gens, const SkewFormZ& form, std::int64_t p);
ReducedRep reduce(const Representation& rep, std::int64_t p);

struct PrimeVerdict {
  enum class Kind { surjective, proper, skipped, undecided };
  std::int64_t p = 0;
  Kind kind = Kind::undecided;
  Integer order = 0;   // proper: exact order; surjective: |Sp(2m, p)|
  std::string reason;  // skipped / undecided
};

std::string to_string(const PrimeVerdict& v);

/// Compares the generated group with Sp(2m, p); stops early once the chain reaches its order.
PrimeVerdict classify(const ReducedRep& r, const GroupBudget& budget = {});

/// Throws std::runtime_error when the budget leaves the order undecided.
bool is_surjective(const ReducedRep& r, const GroupBudget& budget = {});

struct SweepOptions {
  GroupBudget budget;
  unsigned threads = 1;
};

struct DensityCertificate {
  std::string fingerprint;
  std::vector<Integer> divisors;
  std::int64_t bound = 0;
  std::vector<PrimeVerdict> primes;  // every odd prime <= bound, increasing
  std::vector<std::int64_t> omega;   // good primes with a proper image
  std::string verdict;               // dense-certified | not-certified | undecided
};

/// 64-bit FNV-1a over the form and generator images, as 16 hex digits.
std::string fingerprint(const std::vector<MatrixZ>& gens, const SkewFormZ& form);
std::string fingerprint(const Representation& rep);

/// Sweeps odd primes up to bound. Undecided primes stay out of omega.
DensityCertificate bad_prime_set(const std::vector<MatrixZ>& gens, const SkewFormZ& form, std::int64_t bound,
                                 const SweepOptions& options = {});
DensityCertificate bad_prime_set(const Representation& rep, std::int64_t bound, const SweepOptions& options = {});

std::string to_text(const DensityCertificate& c);
std::string to_json(const DensityCertificate& c);

struct SeparationLine {
  std::int64_t p = 0;
  PrimeVerdict left;
  PrimeVerdict right;
};

struct OrbitSeparation {
  std::string left_fingerprint;   // rep_B
  std::string right_fingerprint;  // rep_{B^k}
  std::int64_t witness = 0;
  std::uint64_t k = 0;             // order of B mod witness; 0 when not a bending comparison
  bool reductions_agree = false;  // rep_{B^k} == rep mod witness
  std::vector<SeparationLine> lines;  // witness first, then auxiliary primes
  std::string conclusion;             // distinct orbits | not separated
};

struct SeparationOptions {
  std::vector<std::int64_t> aux_primes;
  std::uint64_t order_limit = 1'000'000;
  GroupBudget budget;
};

/// Compares two representations on the same form at p0 and the auxiliary primes.
OrbitSeparation compare_representations(const Representation& left, const Representation& right, std::int64_t p0,
                                        const SeparationOptions& options = {});

/// k = order of B mod p0; compares rep_B with rep_{B^k}, after checking that
/// rep_{B^k} and rep agree mod p0. Throws std::runtime_error when k exceeds
/// the limit, std::invalid_argument when p0 is bad.
OrbitSeparation orbit_separation(const Representation& rep, const CurveDatum& curve, const MatrixZ& b, std::int64_t p0,
                                 const SeparationOptions& options = {});

std::string to_text(const OrbitSeparation& s);
std::string to_json(const OrbitSeparation& s);

}  // namespace quatbend
