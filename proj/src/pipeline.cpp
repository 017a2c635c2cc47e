#include "quatbend/pipeline/pipeline.hpp"

#include "quatbend/exact/text.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace quatbend {

namespace {

std::vector<std::string> words_of(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

std::int64_t to_int(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  std::int64_t x = 0;
  try {
    x = std::stoll(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw std::invalid_argument("config key " + key + " needs an integer, got '" + v + "'");
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw std::invalid_argument("config key " + key + " needs true or false");
}

std::string resolve(const std::string& base, const std::string& path) {
  if (base.empty() || path.empty() || std::filesystem::path(path).is_absolute()) return path;
  return (std::filesystem::path(base) / path).lexically_normal().string();
}

struct StageError : std::runtime_error {
  StageError(int s, const std::string& what) : std::runtime_error(what), stage(s) {}
  int stage;
};

std::int64_t first_good_prime(const SkewFormZ& form) {
  for (std::int64_t p = 3;; p += 2)
    if (is_prime(p) && !is_bad_prime(form, p)) return p;
}

void write_file(const std::filesystem::path& path, const std::string& content, std::vector<std::string>& files) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  files.push_back(path.string());
}

}  // namespace

void set_config_value(PipelineConfig& c, const std::string& key, const std::string& value, const std::string& base_dir) {
  auto w = words_of(value);
  if (key == "algebra") {
    if (w.size() != 2) throw std::invalid_argument("algebra needs 'a b'");
    c.a = parse_rational(w[0]);
    c.b = parse_rational(w[1]);
  } else if (key == "order") {
    c.order = value == "standard" ? value : resolve(base_dir, value);
  } else if (key == "mu") {
    if (w.size() != 4) throw std::invalid_argument("mu needs four coordinates");
    for (std::size_t k = 0; k < 4; ++k) c.mu[k] = parse_rational(w[k]);
  } else if (key == "copies") {
    c.copies = static_cast<int>(to_int(key, value));
  } else if (key == "datum") {
    c.datum = resolve(base_dir, value);
  } else if (key == "curve") {
    c.curve = value;
  } else if (key == "pell_height") {
    c.pell_height = to_int(key, value);
  } else if (key == "b_height") {
    c.b_height = to_int(key, value);
  } else if (key == "sweep_bound") {
    c.sweep_bound = to_int(key, value);
  } else if (key == "separation_prime") {
    c.separation_prime = to_int(key, value);
  } else if (key == "aux_primes") {
    c.aux_primes.clear();
    if (value != "none")
      for (const auto& t : w) c.aux_primes.push_back(to_int(key, t));
  } else if (key == "output_dir") {
    c.output_dir = resolve(base_dir, value);
  } else if (key == "threads") {
    c.threads = static_cast<unsigned>(std::max<std::int64_t>(1, to_int(key, value)));
  } else if (key == "bend_select") {
    if (value != "first" && value != "first-surjective") throw std::invalid_argument("bend_select is first or first-surjective");
    c.bend_select = value;
  } else if (key == "bend_select_cap") {
    c.bend_select_cap = static_cast<std::size_t>(to_int(key, value));
  } else if (key == "candidate_budget") {
    c.candidate_budget = static_cast<std::uint64_t>(to_int(key, value));
  } else if (key == "max_points") {
    c.group_budget.max_points = static_cast<std::uint64_t>(to_int(key, value));
  } else if (key == "max_memory_bytes") {
    c.group_budget.max_memory_bytes = static_cast<std::uint64_t>(to_int(key, value));
  } else if (key == "max_sifts") {
    c.group_budget.max_sifts = static_cast<std::uint64_t>(to_int(key, value));
  } else if (key == "emit_json") {
    c.emit_json = to_bool(key, value);
  } else {
    throw std::invalid_argument("unknown config key: " + key);
  }
}

PipelineConfig parse_config(const std::string& text, const std::string& base_dir) {
  PipelineConfig c;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("config line lacks '=': " + line);
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t\r"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
      return s;
    };
    set_config_value(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), base_dir);
  }
  return c;
}

PipelineConfig load_config(const std::string& path) {
  return parse_config(read_file(path), std::filesystem::path(path).parent_path().string());
}

const std::vector<std::string>& pipeline_stages() {
  static const std::vector<std::string> names{"algebra", "model",   "datum",   "curve",
                                              "b-search", "bend", "density", "separation"};
  return names;
}

PipelineResult run_pipeline(const PipelineConfig& config, std::ostream& log) {
  PipelineResult result;
  std::ostringstream report;
  auto note = [&](const std::string& s) {
    report << s << "\n";
    log << s << "\n";
  };
  int stage = 0;
  auto begin = [&](int s) {
    stage = s;
    note("[" + std::to_string(s) + "] " + pipeline_stages()[static_cast<std::size_t>(s - 1)]);
  };
  try {
    begin(1);
    QuaternionAlgebra algebra(config.a, config.b);
    std::string ram;
    for (auto p : algebra.ramification()) ram += (ram.empty() ? "" : ", ") + place_to_string(p);
    note("algebra (" + to_string(config.a) + ", " + to_string(config.b) + "), ramification {" + ram + "}");
    try {
      algebra.require_indefinite_division();
    } catch (const AlgebraError& e) {
      throw StageError(1, e.what());
    }

    begin(2);
    OrderBasis order = config.order == "standard" ? OrderBasis::standard(algebra) : load_order_basis(config.order);
    if (order.algebra().a() != algebra.a() || order.algebra().b() != algebra.b())
      throw StageError(2, "order file belongs to a different algebra");
    if (!order_closure_check(order)) throw StageError(2, "order basis is not closed under multiplication");
    RightRegularModel model(order, algebra.element(config.mu), config.copies);
    SymplecticDivisors divisors = symplectic_divisors(model.form());
    MatrixZ ut = divisors.u.transpose();
    if (!equal(mul(mul(ut, model.form().gram()), divisors.u), divisor_normal_form(divisors.divisors)))
      throw StageError(2, "symplectic basis check failed");
    note("gram " + to_string(model.form().gram()));
    std::string ds;
    for (const auto& d : divisors.divisors) ds += " " + to_string(d);
    note("divisors" + ds);

    begin(3);
    if (config.datum.empty()) throw StageError(3, "no datum file configured");
    SurfaceDatum datum = load_datum(config.datum);
    Representation rep = assemble(datum, model);
    note("datum " + std::filesystem::path(config.datum).filename().string() + ", generators " +
         std::to_string(datum.presentation.generators.size()) +
         (datum.presentation.relator ? ", relator " + to_string(*datum.presentation.relator) : ", free"));
    for (const auto& g : datum.presentation.generators) note("  " + g + " -> " + to_string(rep.image(g)));

    begin(4);
    const CurveDatum& curve = datum.curve(config.curve);
    auto q = evaluate_quaternion_word(datum, model, curve.word);
    for (const auto& x : q)
      if (x != q[0]) throw StageError(4, "curve image differs between copies");
    PellElement gamma;
    try {
      gamma = make_pell_element(q[0]);
    } catch (const AlgebraError& e) {
      throw StageError(4, std::string("curve image is not a Pell element: ") + e.what());
    }
    bool listed = false;
    for (const auto& p : pell_search(algebra, config.pell_height)) listed = listed || p.gamma == gamma.gamma;
    if (!listed) throw StageError(4, "Pell element " + to_string(gamma.gamma) + " exceeds pell_height");
    if (!equal(evaluate_word(rep, curve.word), rho(model, gamma.gamma)))
      throw StageError(4, "curve image disagrees with rho of its Pell element");
    note("curve " + curve.name + " = " + to_string(curve.word) + " -> " + to_string(gamma.gamma) +
         (curve.kind == CurveDatum::Kind::nonseparating ? ", stable letter " + curve.stable : ", separating"));

    begin(5);
    BSearchOptions bo;
    bo.height = config.b_height;
    bo.candidate_budget = config.candidate_budget;
    bo.threads = config.threads;
    BSearchResult search = b_search(model, gamma, bo);
    note("commutant rank " + std::to_string(search.lattice.size()) + ", enumerated " + std::to_string(search.enumerated) +
         ", symplectic " + std::to_string(search.symplectic_hits) + ", generic " + std::to_string(search.hits.size()) +
         (search.truncated ? " (truncated by candidate budget)" : ""));
    if (search.hits.empty()) throw StageError(5, "no bend element at height " + std::to_string(config.b_height));

    begin(6);
    std::int64_t p0 = config.separation_prime;
    if (p0 < 3 || !is_prime(p0) || is_bad_prime(model.form(), p0)) {
      std::int64_t good = first_good_prime(model.form());
      note("separation prime " + std::to_string(p0) + " is bad, using " + std::to_string(good));
      p0 = good;
    }
    std::size_t chosen = 0;
    if (config.bend_select == "first-surjective") {
      bool found = false;
      for (std::size_t h = 0; h < std::min(search.hits.size(), config.bend_select_cap) && !found; ++h) {
        PrimeVerdict v = classify(reduce(bend(rep, curve, search.hits[h].matrix), p0), config.group_budget);
        if (v.kind == PrimeVerdict::Kind::surjective) {
          chosen = h;
          found = true;
        }
      }
      note(found ? "selected hit " + std::to_string(chosen) + ", surjective mod " + std::to_string(p0)
                 : "no surjective hit among the first " + std::to_string(config.bend_select_cap) + ", using hit 0");
    }
    const BendElement& be = search.hits[chosen];
    result.bend_element = be.matrix;
    Representation bent = bend(rep, curve, be.matrix);
    note("B " + to_string(be.matrix) + ", height " + std::to_string(be.height));
    for (const auto& g : datum.presentation.generators) note("  bent " + g + " -> " + to_string(bent.image(g)));

    begin(7);
    SweepOptions so;
    so.budget = config.group_budget;
    so.threads = config.threads;
    result.certificate = bad_prime_set(bent, config.sweep_bound, so);
    result.unbent_certificate = bad_prime_set(rep, config.sweep_bound, so);
    note("bent verdict " + result.certificate.verdict + ", unbent verdict " + result.unbent_certificate.verdict);

    begin(8);
    SeparationOptions sep;
    sep.aux_primes = config.aux_primes;
    sep.budget = config.group_budget;
    result.separation = orbit_separation(rep, curve, be.matrix, p0, sep);
    note("k " + std::to_string(result.separation.k) + ", " + result.separation.conclusion);

    std::filesystem::path dir(config.output_dir);
    std::filesystem::create_directories(dir);
    write_file(dir / "report.txt", report.str(), result.files);
    write_file(dir / "certificate.txt", to_text(result.certificate), result.files);
    write_file(dir / "unbent_certificate.txt", to_text(result.unbent_certificate), result.files);
    write_file(dir / "separation.txt", to_text(result.separation), result.files);
    if (config.emit_json) {
      write_file(dir / "certificate.json", to_json(result.certificate), result.files);
      write_file(dir / "unbent_certificate.json", to_json(result.unbent_certificate), result.files);
      write_file(dir / "separation.json", to_json(result.separation), result.files);
    }
    result.exit_code = result.certificate.verdict == "dense-certified" ? 0 : 9;
    result.message = result.certificate.verdict;
  } catch (const StageError& e) {
    result.failed_stage = e.stage;
    result.exit_code = e.stage;
    result.message = e.what();
  } catch (const std::exception& e) {
    result.failed_stage = stage;
    result.exit_code = stage;
    result.message = e.what();
  }
  if (result.failed_stage)
    log << "stage " << result.failed_stage << " (" << pipeline_stages()[static_cast<std::size_t>(result.failed_stage - 1)]
        << ") failed: " << result.message << "\n";
  return result;
}

}  // namespace quatbend
