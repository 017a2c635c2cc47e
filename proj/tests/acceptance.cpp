// Acceptance run: one PASS/FAIL line per criterion, limits pinned below.
#include "quatbend/cocycle/cocycle.hpp"
#include "quatbend/exact/text.hpp"
#include "quatbend/pipeline/pipeline.hpp"

#include <chrono>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>

using namespace quatbend;

namespace {

constexpr double kQuaternionSeconds = 1.0;  // per ramification computation
constexpr double kCocycleSeconds = 5.0;     // all four pairs
constexpr double kSp4Seconds = 1.0;
constexpr double kSp8Seconds = 300.0;
constexpr int kRhoSamples = 1000;
constexpr int kConjugations = 10;
constexpr std::int64_t kSweepBound = 50;
constexpr std::int64_t kCompanionInvarianceBound = 29;
constexpr std::uint32_t kSeed = 20240611;

const std::string kData = QUATBEND_DATA_DIR;

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int failures = 0;

void report(int n, bool ok, const std::string& detail) {
  if (!ok) ++failures;
  std::cout << "criterion " << n << ": " << (ok ? "PASS" : "FAIL") << " | " << detail << std::endl;
}

std::string fmt(double s) {
  std::ostringstream o;
  o.precision(3);
  o << s << "s";
  return o.str();
}

std::string places(const std::vector<Place>& v) {
  std::string s;
  for (auto p : v) s += (s.empty() ? "" : ",") + place_to_string(p);
  return "{" + s + "}";
}

RightRegularModel model() { return load_model(kData + "/model_3_-1.txt"); }

void criterion1() {
  bool ok = true;
  std::string detail;
  auto check = [&](int a, int b, const std::vector<Place>& expected) {
    Stopwatch w;
    auto r = ramification_set(a, b);
    // Each finite place also through the Hensel search directly.
    bool search_agrees = true;
    for (std::int64_t p : {2, 3, 5, 7}) {
      bool ramified = std::find(r.begin(), r.end(), p) != r.end();
      search_agrees = search_agrees && ((hilbert_symbol_search(a, b, p) == -1) == ramified);
    }
    double t = w.seconds();
    ok = ok && r == expected && search_agrees && t < kQuaternionSeconds;
    detail += "(" + std::to_string(a) + "," + std::to_string(b) + ")=" + places(r) + " in " + fmt(t) + "; ";
  };
  check(3, -1, {2, 3});
  check(2, 3, {2, 3});
  Stopwatch w;
  bool rejected = false;
  try {
    QuaternionAlgebra(-1, -1).require_indefinite_division();
  } catch (const AlgebraError& e) {
    rejected = std::string(e.what()).find("not indefinite") != std::string::npos;
  }
  double t = w.seconds();
  ok = ok && rejected && t < kQuaternionSeconds;
  detail += std::string("(-1,-1) ") + (rejected ? "rejected as definite" : "NOT rejected") + " in " + fmt(t);
  report(1, ok, detail);
}

void criterion2() {
  Stopwatch w;
  bool ok = true;
  std::string detail;
  for (auto [a, b] : std::vector<std::pair<int, int>>{{3, -1}, {2, 3}, {2, 5}, {1, 1}}) {
    CocycleSuite s = cocycle_suite(a, b);
    ok = ok && s.pairs_passing == 16 && s.fixed_dim == 4 && s.display_span && s.product_identity &&
         s.determinant_coboundary;
    detail += "(" + std::to_string(a) + "," + std::to_string(b) + "): " + std::to_string(s.pairs_passing) +
              "/16, dim " + std::to_string(s.fixed_dim) + (s.display_span ? "" : " (basis mismatch)") +
              (s.product_identity ? ", product identity" : ", product identity FAILED") +
              (s.determinant_coboundary ? ", det coboundary; " : ", det coboundary FAILED; ");
  }
  double t = w.seconds();
  ok = ok && t < kCocycleSeconds;
  report(2, ok, detail + "total " + fmt(t));
}

void criterion3() {
  RightRegularModel m = model();
  MatrixZ expected(4, 4);
  expected << 0, -6, 0, 0, 6, 0, 0, 0, 0, 0, 0, -6, 0, 0, 6, 0;
  bool gram_ok = m.form().gram() == expected;

  SymplecticDivisors d = symplectic_divisors(m.form());
  MatrixZ ut = d.u.transpose();
  bool div_ok = d.divisors == std::vector<Integer>{6, 6} && abs(determinant_z(d.u)) == 1 &&
                mul(mul(ut, m.form().gram()), d.u) == divisor_normal_form(d.divisors);

  const auto& A = m.algebra();
  std::vector<Quaternion> gens{A.element({2, 1, 0, 0}), A.j(), A.element({2, 0, 0, 1}), A.element({7, 4, 0, 0})};
  for (std::size_t k = 0, n = gens.size(); k < n; ++k) gens.push_back(gens[k].inverse());
  std::mt19937 rng(kSeed);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1), len(1, 8);
  int preserved = 0;
  for (int s = 0; s < kRhoSamples; ++s) {
    Quaternion q = A.one();
    for (std::size_t k = len(rng); k > 0; --k) q = q * gens[pick(rng)];
    if (q.nrd() == 1 && is_symplectic(rho(m, q), m.form())) ++preserved;
  }
  auto lattice = commutant_lattice({rho(m, gens[0])});
  bool ok = gram_ok && div_ok && preserved == kRhoSamples && lattice.size() == 8;
  report(3, ok,
         std::string("gram ") + (gram_ok ? "exact" : "MISMATCH") + ", divisors (" + to_string(d.divisors[0]) + "," +
             to_string(d.divisors[1]) + ") U " + (div_ok ? "verified" : "NOT verified") + ", rho preserved form on " +
             std::to_string(preserved) + "/" + std::to_string(kRhoSamples) + ", commutant dim " +
             std::to_string(lattice.size()));
}

void criterion4() {
  Stopwatch w4;
  auto g4 = standard_sp_generators(2, 3);
  GroupOrderResult r4 = group_order(g4, 3);
  auto closure = closure_order(g4, 3);
  double t4 = w4.seconds();
  bool ok4 = r4.decided && r4.order == 51840 && sp_order(2, 3) == 51840 && closure && *closure == 51840;

  Stopwatch w8;
  GroupOrderResult r8 = group_order(standard_sp_generators(4, 3), 3);
  double t8 = w8.seconds();
  bool ok8 = r8.decided && r8.order == sp_order(4, 3);
  report(4, ok4 && ok8 && t4 < kSp4Seconds && t8 < kSp8Seconds,
         "Sp(4,3): chain " + to_string(r4.order) + ", closure " + (closure ? std::to_string(*closure) : "n/a") +
             ", formula " + to_string(sp_order(2, 3)) + " in " + fmt(t4) + "; Sp(8,3): chain " + to_string(r8.order) +
             " vs formula " + to_string(sp_order(4, 3)) + " on 6560 points in " + fmt(t8));
}

std::string per_prime_lines(const std::string& certificate) {
  std::istringstream in(certificate);
  std::string line, out;
  while (std::getline(in, line))
    if (!line.empty() && std::isdigit(static_cast<unsigned char>(line[0]))) out += line + "\n";
  return out;
}

void criterion5() {
  RightRegularModel m = model();
  SurfaceDatum d = load_datum(kData + "/free_pell_j.datum");
  Representation rep = assemble(d, m);
  PipelineConfig c = load_config(kData + "/pipeline_j.conf");

  BSearchOptions bo;
  bo.height = c.b_height;
  auto search = b_search(m, make_pell_element(m.algebra().element({2, 1, 0, 0})), bo);
  bool found = !search.hits.empty();

  DensityCertificate unbent = bad_prime_set(rep, kSweepBound);
  bool all_proper = unbent.verdict == "not-certified";
  std::int64_t good = 0;
  for (const auto& v : unbent.primes) {
    if (v.kind == PrimeVerdict::Kind::skipped) continue;
    ++good;
    all_proper = all_proper && v.kind == PrimeVerdict::Kind::proper && v.order < sp_order(2, v.p) &&
                 sp_order(2, v.p) % v.order == 0;
  }

  std::string texts[2];
  PipelineResult runs[2];
  for (int k = 0; k < 2; ++k) {
    auto dir = std::filesystem::temp_directory_path() / ("quatbend_acceptance_" + std::to_string(k));
    std::filesystem::remove_all(dir);
    c.output_dir = dir.string();
    std::ostringstream log;
    runs[k] = run_pipeline(c, log);
    if (runs[k].failed_stage == 0) texts[k] = read_file((dir / "certificate.txt").string());
  }
  bool emitted = runs[0].failed_stage == 0 && runs[1].failed_stage == 0 && !texts[0].empty();
  bool reproducible = emitted && per_prime_lines(texts[0]) == per_prime_lines(texts[1]) && texts[0] == texts[1];

  bool bent_surjective = false;
  for (const auto& v : runs[0].certificate.primes)
    bent_surjective = bent_surjective || (v.kind == PrimeVerdict::Kind::surjective && v.p >= 5);
  bool conditional = !bent_surjective || runs[0].certificate.verdict == "dense-certified";

  // The same pipeline on the companion datum <2 + i, 2 + ij> exercises the conditional branch.
  PipelineConfig companion = load_config(kData + "/pipeline_ij.conf");
  companion.output_dir = (std::filesystem::temp_directory_path() / "quatbend_acceptance_ij").string();
  std::ostringstream log;
  PipelineResult rc = run_pipeline(companion, log);
  bool companion_surjective = false;
  for (const auto& v : rc.certificate.primes)
    companion_surjective = companion_surjective || (v.kind == PrimeVerdict::Kind::surjective && v.p >= 5);
  bool companion_ok = rc.failed_stage == 0 && (!companion_surjective || rc.certificate.verdict == "dense-certified");

  report(5, found && all_proper && emitted && reproducible && conditional && companion_ok,
         std::to_string(search.hits.size()) + " generic bend elements at height " + std::to_string(c.b_height) +
             "; unbent proper at " + (all_proper ? "all " : "NOT all ") + std::to_string(good) +
             " good primes <= 50; certificate " + (emitted ? "emitted" : "MISSING") + ", " +
             (reproducible ? "byte-identical" : "NOT reproducible") + " across runs; bent verdict " +
             runs[0].certificate.verdict + (bent_surjective ? "" : " (bent image surjective at no prime, conditional not triggered)") +
             "; companion <2+i, 2+ij>: " + rc.certificate.verdict);
}

void criterion6() {
  RightRegularModel m = model();
  bool ok = true;
  std::string detail;
  for (const char* file : {"free_pell_j.datum", "free_pell_ij.datum"}) {
    SurfaceDatum d = load_datum(kData + "/" + file);
    Representation rep = assemble(d, m);
    std::int64_t p0 = 5;
    if (is_bad_prime(m.form(), p0))
      for (p0 = 3; is_bad_prime(m.form(), p0) || !is_prime(p0); p0 += 2) {
      }
    BSearchOptions bo;
    bo.height = 2;
    auto hits = b_search(m, make_pell_element(m.algebra().element({2, 1, 0, 0})), bo).hits;
    if (hits.empty()) {
      ok = false;
      detail += std::string(file) + ": no bend element; ";
      continue;
    }
    const MatrixZ& b = hits.front().matrix;
    const CurveDatum& curve = d.curve("");
    OrbitSeparation s = orbit_separation(rep, curve, b, p0);

    // Independent recomputation of B^k and the reductions.
    MatrixZ bk = identity<Integer>(4);
    for (std::uint64_t e = 0; e < s.k; ++e) bk = mul(bk, b);
    ReducedRep x = reduce(bend(rep, curve, bk), p0), y = reduce(rep, p0);
    bool agree = is_identity(to_fp(bk, p0));
    for (std::size_t g = 0; g < x.gens.size(); ++g) agree = agree && x.gens[g] == y.gens[g];

    bool left_surjective = s.lines[0].left.kind == PrimeVerdict::Kind::surjective;
    bool conclusion_ok = !left_surjective || s.conclusion == "distinct orbits";
    ok = ok && agree && s.reductions_agree && conclusion_ok;
    detail += std::string(file) + ": p0=" + std::to_string(p0) + ", k=" + std::to_string(s.k) + ", reductions " +
              (agree ? "equal" : "DIFFER") + ", rep_B " + (left_surjective ? "surjective" : "proper") + ", " +
              s.conclusion + "; ";
  }
  report(6, ok, detail);
}

// Sp(G, Z) elements U S U^{-1}, S a word in the integral transvections of
// the divisor normal form; each is re-verified against G.
std::vector<MatrixZ> sample_conjugators(const RightRegularModel& m, std::mt19937& rng, int count) {
  SymplecticDivisors d = symplectic_divisors(m.form());
  const Eigen::Index n = m.dim() / 2;
  std::vector<MatrixZ> steps;
  for (const auto& t : standard_sp_generators(static_cast<int>(n), 5)) {
    MatrixZ s(2 * n, 2 * n);
    for (Eigen::Index r = 0; r < 2 * n; ++r)
      for (Eigen::Index c = 0; c < 2 * n; ++c) {
        std::int64_t v = t(r, c).value();
        s(r, c) = v > 2 ? v - 5 : v;  // entries are 0, 1 and -1
      }
    steps.push_back(s);
  }
  MatrixZ dn = divisor_normal_form(d.divisors);
  SkewFormZ normal(dn);
  for (std::size_t k = 0, e = steps.size(); k < e; ++k) steps.push_back(symplectic_inverse(steps[k], normal));
  MatrixZ u_inv = to_integer(inverse(to_rational(d.u)));
  std::uniform_int_distribution<std::size_t> pick(0, steps.size() - 1);
  std::vector<MatrixZ> out;
  while (static_cast<int>(out.size()) < count) {
    MatrixZ s = identity<Integer>(2 * n);
    for (int k = 0; k < 8; ++k) s = mul(s, steps[pick(rng)]);
    if (!is_symplectic(s, normal)) continue;
    MatrixZ c = mul(mul(d.u, s), u_inv);
    if (is_symplectic(c, m.form()) && !is_identity(c)) out.push_back(c);
  }
  return out;
}

void criterion7() {
  RightRegularModel m = model();
  std::mt19937 rng(kSeed);
  auto conjugators = sample_conjugators(m, rng, kConjugations);
  bool ok = true;
  std::string detail;
  struct Case {
    const char* file;
    std::int64_t bound;
  };
  for (const Case& cs : {Case{"free_pell_j.datum", kSweepBound}, Case{"free_pell_ij.datum", kCompanionInvarianceBound}}) {
    SurfaceDatum d = load_datum(kData + "/" + cs.file);
    Representation rep = assemble(d, m);
    BSearchOptions bo;
    bo.height = 2;
    auto hits = b_search(m, make_pell_element(m.algebra().element({2, 1, 0, 0})), bo).hits;
    Representation bent = bend(rep, d.curve(""), hits.front().matrix);
    std::vector<MatrixZ> gens = bent.generator_images();
    DensityCertificate base = bad_prime_set(gens, m.form(), cs.bound);
    int unchanged = 0;
    for (const auto& c : conjugators) {
      MatrixZ c_inv = symplectic_inverse(c, m.form());
      std::vector<MatrixZ> conj;
      for (const auto& g : gens) conj.push_back(mul(mul(c_inv, g), c));
      DensityCertificate other = bad_prime_set(conj, m.form(), cs.bound);
      if (other.omega == base.omega) ++unchanged;
    }
    ok = ok && unchanged == kConjugations;
    std::string omega;
    for (auto p : base.omega) omega += (omega.empty() ? "" : ",") + std::to_string(p);
    detail += std::string(cs.file) + " bound " + std::to_string(cs.bound) + ": omega {" + omega + "} unchanged under " +
              std::to_string(unchanged) + "/" + std::to_string(kConjugations) + " conjugations; ";
  }
  report(7, ok, detail);
}

}  // namespace

int main() {
  const std::vector<void (*)()> criteria{criterion1, criterion2, criterion3, criterion4,
                                         criterion5, criterion6, criterion7};
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    try {
      criteria[k]();
    } catch (const std::exception& e) {
      report(static_cast<int>(k + 1), false, std::string("exception: ") + e.what());
    }
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
