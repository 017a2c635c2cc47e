#include "quatbend/modp/certificate.hpp"

#include <json.hpp>

#include <cstdio>
#include <future>
#include <sstream>

namespace quatbend {

bool is_bad_prime(const SkewFormZ& form, std::int64_t p) { return p == 2 || form.det() % p == 0; }

ReducedRep reduce(const std::vector<MatrixZ>& gens, const SkewFormZ& form, std::int64_t p) {
  if (p < 2 || !is_prime(p)) throw std::invalid_argument("bad reduction prime " + std::to_string(p) + ": not a prime");
  if (is_bad_prime(form, p))
    throw std::invalid_argument("bad reduction prime " + std::to_string(p) + ": even or divides the form");
  ReducedRep r;
  r.p = p;
  r.form = to_fp(form.gram(), p);
  for (const auto& g : gens) {
    MatrixFp m = to_fp(g, p);
    if (!is_symplectic(m, r.form)) throw std::logic_error("reduction is not symplectic mod " + std::to_string(p));
    r.gens.push_back(std::move(m));
  }
  return r;
}

ReducedRep reduce(const Representation& rep, std::int64_t p) { return reduce(rep.generator_images(), rep.form(), p); }

std::string to_string(const PrimeVerdict& v) {
  std::string head = std::to_string(v.p) + ": ";
  switch (v.kind) {
    case PrimeVerdict::Kind::surjective: return head + "surjective";
    case PrimeVerdict::Kind::proper: return head + "proper(" + to_string(v.order) + ")";
    case PrimeVerdict::Kind::skipped: return head + "skipped(" + v.reason + ")";
    case PrimeVerdict::Kind::undecided: return head + "undecided(" + v.reason + ")";
  }
  return head;
}

PrimeVerdict classify(const ReducedRep& r, const GroupBudget& budget) {
  PrimeVerdict v;
  v.p = r.p;
  const Integer full = sp_order(static_cast<int>(r.half_dim()), r.p);
  GroupOrderResult g = group_order(r.gens, r.p, full, budget);
  if (!g.decided) {
    v.kind = PrimeVerdict::Kind::undecided;
    v.reason = g.reason;
    return v;
  }
  if (full % g.order != 0) throw std::logic_error("group order does not divide the symplectic group order");
  v.order = g.order;
  v.kind = g.order == full ? PrimeVerdict::Kind::surjective : PrimeVerdict::Kind::proper;
  return v;
}

bool is_surjective(const ReducedRep& r, const GroupBudget& budget) {
  PrimeVerdict v = classify(r, budget);
  if (v.kind == PrimeVerdict::Kind::undecided) throw std::runtime_error("undecided: " + v.reason);
  return v.kind == PrimeVerdict::Kind::surjective;
}

std::string fingerprint(const std::vector<MatrixZ>& gens, const SkewFormZ& form) {
  std::uint64_t h = 1469598103934665603ull;
  auto feed = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0xff;
    h *= 1099511628211ull;
  };
  auto feed_matrix = [&](const MatrixZ& m) {
    feed(std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) feed(to_string(m(r, c)));
  };
  feed_matrix(form.gram());
  for (const auto& g : gens) feed_matrix(g);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string fingerprint(const Representation& rep) { return fingerprint(rep.generator_images(), rep.form()); }

DensityCertificate bad_prime_set(const std::vector<MatrixZ>& gens, const SkewFormZ& form, std::int64_t bound,
                                 const SweepOptions& options) {
  DensityCertificate c;
  c.fingerprint = fingerprint(gens, form);
  c.divisors = symplectic_divisors(form).divisors;
  c.bound = bound;
  std::vector<std::int64_t> good;
  for (std::int64_t p = 3; p <= bound; p += 2) {
    if (!is_prime(p)) continue;
    if (is_bad_prime(form, p)) {
      PrimeVerdict v;
      v.p = p;
      v.kind = PrimeVerdict::Kind::skipped;
      v.reason = "divides the form";
      c.primes.push_back(v);
    } else {
      good.push_back(p);
      c.primes.push_back({});
    }
  }
  // Independent primes in batches; results land in their fixed slots.
  std::vector<PrimeVerdict> results(good.size());
  const std::size_t width = std::max(1u, options.threads);
  for (std::size_t start = 0; start < good.size(); start += width) {
    std::vector<std::future<PrimeVerdict>> batch;
    for (std::size_t k = start; k < std::min(good.size(), start + width); ++k) {
      const std::int64_t p = good[k];
      batch.push_back(std::async(width > 1 ? std::launch::async : std::launch::deferred,
                                 [&, p] { return classify(reduce(gens, form, p), options.budget); }));
    }
    for (std::size_t k = 0; k < batch.size(); ++k) results[start + k] = batch[k].get();
  }
  std::size_t next = 0;
  for (auto& v : c.primes)
    if (v.kind != PrimeVerdict::Kind::skipped) v = results[next++];

  bool certified = false;
  for (const auto& v : c.primes) {
    if (v.kind == PrimeVerdict::Kind::proper) c.omega.push_back(v.p);
    if (v.kind == PrimeVerdict::Kind::surjective && v.p >= 5) certified = true;
  }
  if (certified) c.verdict = "dense-certified";
  else if (good.empty()) c.verdict = "undecided";
  else c.verdict = "not-certified";
  return c;
}

DensityCertificate bad_prime_set(const Representation& rep, std::int64_t bound, const SweepOptions& options) {
  return bad_prime_set(rep.generator_images(), rep.form(), bound, options);
}

namespace {

const char* kCriterion =
    "surjective reduction at one prime p >= 5 implies Zariski density in Sp "
    "(standard criterion, assumed here and not proved)";
const char* kConverse = "Zariski density implies surjective reduction at almost every prime (strong approximation)";

std::string join(const std::vector<std::int64_t>& xs) {
  std::string s;
  for (auto x : xs) s += (s.empty() ? "" : ", ") + std::to_string(x);
  return "{" + s + "}";
}

std::string kind_name(PrimeVerdict::Kind k) {
  switch (k) {
    case PrimeVerdict::Kind::surjective: return "surjective";
    case PrimeVerdict::Kind::proper: return "proper";
    case PrimeVerdict::Kind::skipped: return "skipped";
    case PrimeVerdict::Kind::undecided: return "undecided";
  }
  return "";
}

nlohmann::ordered_json verdict_json(const PrimeVerdict& v) {
  nlohmann::ordered_json j;
  j["p"] = v.p;
  j["status"] = kind_name(v.kind);
  if (v.kind == PrimeVerdict::Kind::proper || v.kind == PrimeVerdict::Kind::surjective) j["order"] = to_string(v.order);
  if (!v.reason.empty()) j["reason"] = v.reason;
  return j;
}

}  // namespace

std::string to_text(const DensityCertificate& c) {
  std::ostringstream out;
  out << "density certificate\n";
  out << "fingerprint: " << c.fingerprint << "\n";
  out << "form divisors:";
  for (const auto& d : c.divisors) out << " " << d;
  out << "\n";
  out << "sweep bound: " << c.bound << "\n";
  for (const auto& v : c.primes) out << to_string(v) << "\n";
  out << "omega: " << join(c.omega) << "\n";
  out << "criterion: " << kCriterion << "\n";
  out << "converse: " << kConverse << "\n";
  out << "verdict: " << c.verdict << "\n";
  return out.str();
}

std::string to_json(const DensityCertificate& c) {
  nlohmann::ordered_json j;
  j["kind"] = "density certificate";
  j["fingerprint"] = c.fingerprint;
  std::vector<std::string> divisors;
  for (const auto& d : c.divisors) divisors.push_back(to_string(d));
  j["form_divisors"] = divisors;
  j["sweep_bound"] = c.bound;
  j["primes"] = nlohmann::ordered_json::array();
  for (const auto& v : c.primes) j["primes"].push_back(verdict_json(v));
  j["omega"] = c.omega;
  j["criterion"] = kCriterion;
  j["converse"] = kConverse;
  j["verdict"] = c.verdict;
  return j.dump(2) + "\n";
}

OrbitSeparation compare_representations(const Representation& left, const Representation& right, std::int64_t p0,
                                        const SeparationOptions& options) {
  if (!equal(left.form().gram(), right.form().gram())) throw std::invalid_argument("representations use different forms");
  OrbitSeparation s;
  s.left_fingerprint = fingerprint(left);
  s.right_fingerprint = fingerprint(right);
  s.witness = p0;
  std::vector<std::int64_t> primes{p0};
  for (auto p : options.aux_primes)
    if (p != p0 && !is_bad_prime(left.form(), p)) primes.push_back(p);
  bool separated = false;
  for (auto p : primes) {
    SeparationLine line;
    line.p = p;
    line.left = classify(reduce(left, p), options.budget);
    line.right = classify(reduce(right, p), options.budget);
    using K = PrimeVerdict::Kind;
    if ((line.left.kind == K::surjective && line.right.kind == K::proper) ||
        (line.left.kind == K::proper && line.right.kind == K::surjective))
      separated = true;
    s.lines.push_back(line);
  }
  s.conclusion = separated ? "distinct orbits" : "not separated";
  return s;
}

OrbitSeparation orbit_separation(const Representation& rep, const CurveDatum& curve, const MatrixZ& b, std::int64_t p0,
                                 const SeparationOptions& options) {
  if (p0 < 3 || !is_prime(p0) || is_bad_prime(rep.form(), p0))
    throw std::invalid_argument("bad reduction prime " + std::to_string(p0) + " for orbit separation");
  auto k = matrix_order(to_fp(b, p0), options.order_limit);
  if (!k) throw std::runtime_error("order of the bend element mod " + std::to_string(p0) + " exceeds the limit");
  MatrixZ bk = identity<Integer>(b.rows());
  for (std::uint64_t e = 0; e < *k; ++e) bk = mul(bk, b);
  Representation bent = bend(rep, curve, b);
  Representation power = bend(rep, curve, bk);
  ReducedRep x = reduce(power, p0), y = reduce(rep, p0);
  bool agree = true;
  for (std::size_t g = 0; g < x.gens.size(); ++g) agree = agree && equal(x.gens[g], y.gens[g]);
  if (!agree) throw std::logic_error("rep bent by B^k differs from rep mod the witness prime");
  OrbitSeparation s = compare_representations(bent, power, p0, options);
  s.k = *k;
  s.reductions_agree = agree;
  return s;
}

std::string to_text(const OrbitSeparation& s) {
  std::ostringstream out;
  out << "orbit separation\n";
  out << "left fingerprint: " << s.left_fingerprint << "\n";
  out << "right fingerprint: " << s.right_fingerprint << "\n";
  out << "witness prime: " << s.witness << "\n";
  out << "k: " << s.k << "\n";
  out << "reductions agree at witness: " << (s.reductions_agree ? "yes" : "no") << "\n";
  for (const auto& l : s.lines) {
    out << "left " << to_string(l.left) << "\n";
    out << "right " << to_string(l.right) << "\n";
  }
  out << "conclusion: " << s.conclusion << "\n";
  return out.str();
}

std::string to_json(const OrbitSeparation& s) {
  nlohmann::ordered_json j;
  j["kind"] = "orbit separation";
  j["left_fingerprint"] = s.left_fingerprint;
  j["right_fingerprint"] = s.right_fingerprint;
  j["witness"] = s.witness;
  j["k"] = s.k;
  j["reductions_agree"] = s.reductions_agree;
  j["lines"] = nlohmann::ordered_json::array();
  for (const auto& l : s.lines) j["lines"].push_back({{"p", l.p}, {"left", verdict_json(l.left)}, {"right", verdict_json(l.right)}});
  j["conclusion"] = s.conclusion;
  return j.dump(2) + "\n";
}

}  // namespace quatbend
