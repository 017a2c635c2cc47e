#include "quatbend/cocycle/cocycle.hpp"
#include "quatbend/pipeline/pipeline.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace quatbend;

namespace {

std::string yes_no(bool x) { return x ? "yes" : "no"; }

std::array<Rational, 4> parse_four(const std::string& s) {
  std::istringstream in(s);
  std::array<Rational, 4> out{};
  std::string t;
  for (auto& x : out) {
    if (!(in >> t)) throw std::invalid_argument("expected four coordinates: '" + s + "'");
    x = parse_rational(t);
  }
  if (in >> t) throw std::invalid_argument("expected four coordinates: '" + s + "'");
  return out;
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

// Model, datum and B-search options shared by bend, certify and separate.
struct RepOptions {
  std::string model;
  std::string datum;
  std::string curve;
  std::int64_t height = 2;
  int hit = 0;
  unsigned threads = 1;

  void add(CLI::App* app, bool with_bend) {
    app->add_option("--model", model, "model file")->required()->check(CLI::ExistingFile);
    app->add_option("--datum", datum, "datum file")->required()->check(CLI::ExistingFile);
    app->add_option("--curve", curve, "curve name (default: first)");
    app->add_option("--threads", threads, "worker threads");
    if (with_bend) {
      app->add_option("--height", height, "B-search height");
      app->add_option("--hit", hit, "index of the generic bend element; -1 leaves the datum unbent");
    }
  }
};

struct Loaded {
  RightRegularModel model;
  SurfaceDatum datum;
  Representation rep;
  CurveDatum curve;
};

Loaded load(const RepOptions& o) {
  RightRegularModel model = load_model(o.model);
  SurfaceDatum datum = load_datum(o.datum);
  Representation rep = assemble(datum, model);
  return {model, datum, rep, datum.curves.empty() ? CurveDatum{} : datum.curve(o.curve)};
}

MatrixZ pick_bend(const Loaded& l, const RepOptions& o) {
  auto q = evaluate_quaternion_word(l.datum, l.model, l.curve.word);
  PellElement gamma = make_pell_element(q[0]);
  BSearchOptions bo;
  bo.height = o.height;
  bo.threads = o.threads;
  BSearchResult r = b_search(l.model, gamma, bo);
  std::cerr << "B-search: " << r.hits.size() << " generic elements at height " << o.height << "\n";
  if (r.hits.empty()) throw std::runtime_error("no bend element at height " + std::to_string(o.height));
  if (o.hit < 0 || static_cast<std::size_t>(o.hit) >= r.hits.size()) throw std::runtime_error("hit index out of range");
  return r.hits[static_cast<std::size_t>(o.hit)].matrix;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quaternion models, bending and mod-p density certificates"};
  app.require_subcommand(1);
  app.fallthrough();
  bool emit_json = false;
  app.add_flag("--emit-json", emit_json, "also write JSON certificates");

  // algebra-info
  auto* info = app.add_subcommand("algebra-info", "ramification of (a, b)");
  std::string ia, ib;
  info->add_option("a", ia)->required();
  info->add_option("b", ib)->required();

  // cocycle-verify
  auto* coc = app.add_subcommand("cocycle-verify", "cocycle invariants for (a, b) pairs");
  std::vector<std::string> pairs;
  coc->add_option("values", pairs, "a b [a b ...]; default: 3 -1 2 3 2 5 1 1");

  // embed
  auto* emb = app.add_subcommand("embed", "Gram matrix, divisors and rho images");
  std::string emb_model;
  std::vector<std::string> elements;
  emb->add_option("--model", emb_model, "model file")->required()->check(CLI::ExistingFile);
  emb->add_option("--element", elements, "quaternion coordinates \"x0 x1 x2 x3\"");

  // bend
  auto* bnd = app.add_subcommand("bend", "bend the datum by a generic commuting element");
  RepOptions bend_opts;
  bend_opts.add(bnd, true);

  // certify
  auto* cert = app.add_subcommand("certify", "bad-prime sweep and density verdict");
  RepOptions cert_opts;
  cert_opts.hit = -1;
  cert_opts.add(cert, true);
  std::int64_t bound = 50;
  std::string cert_out;
  cert->add_option("--bound", bound, "sweep bound");
  cert->add_option("--output", cert_out, "certificate path (default: stdout)");

  // separate
  auto* sep = app.add_subcommand("separate", "orbit separation of rep_B and rep_{B^k}");
  RepOptions sep_opts;
  sep_opts.add(sep, true);
  std::int64_t prime = 5;
  std::vector<std::int64_t> aux;
  std::string sep_out;
  sep->add_option("--prime", prime, "witness prime");
  sep->add_option("--aux", aux, "auxiliary primes");
  sep->add_option("--output", sep_out, "report path (default: stdout)");

  // run
  auto* run = app.add_subcommand("run", "full pipeline from a config file");
  std::string config_path;
  run->add_option("config", config_path, "config file")->required()->check(CLI::ExistingFile);
  const std::vector<std::string> keys{"algebra",     "order",         "mu",           "copies",           "datum",
                                      "curve",       "pell_height",   "b_height",     "sweep_bound",      "separation_prime",
                                      "aux_primes",  "output_dir",    "threads",      "bend_select",      "bend_select_cap",
                                      "candidate_budget", "max_points", "max_memory_bytes", "max_sifts"};
  std::map<std::string, std::string> overrides;
  for (const auto& k : keys) {
    std::string flag = k;
    std::replace(flag.begin(), flag.end(), '_', '-');
    run->add_option("--" + flag, overrides[k], "overrides config key " + k);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (*info) {
      QuaternionAlgebra a(parse_rational(ia), parse_rational(ib));
      std::string ram;
      for (auto p : a.ramification()) ram += (ram.empty() ? "" : ", ") + place_to_string(p);
      std::cout << "algebra (" << to_string(a.a()) << ", " << to_string(a.b()) << ")\n";
      std::cout << "ramification: {" << ram << "}\n";
      std::cout << "division: " << yes_no(a.is_division()) << "\n";
      std::cout << "indefinite: " << yes_no(a.is_indefinite()) << "\n";
      return 0;
    }
    if (*coc) {
      if (pairs.empty()) pairs = {"3", "-1", "2", "3", "2", "5", "1", "1"};
      if (pairs.size() % 2 != 0) throw std::invalid_argument("cocycle-verify takes pairs a b");
      bool ok = true;
      for (std::size_t k = 0; k < pairs.size(); k += 2) {
        CocycleSuite s = cocycle_suite(parse_rational(pairs[k]), parse_rational(pairs[k + 1]));
        std::cout << to_string(s);
        ok = ok && s.passed();
      }
      return ok ? 0 : 1;
    }
    if (*emb) {
      RightRegularModel m = load_model(emb_model);
      std::cout << "gram: " << to_string(m.form().gram()) << "\n";
      SymplecticDivisors d = symplectic_divisors(m.form());
      std::cout << "divisors:";
      for (const auto& x : d.divisors) std::cout << " " << x;
      std::cout << "\nU: " << to_string(d.u) << "\n";
      for (const auto& e : elements) {
        Quaternion q = m.algebra().element(parse_four(e));
        std::cout << "rho(" << to_string(q) << "): " << to_string(rho(m, q)) << "\n";
      }
      return 0;
    }
    if (*bnd) {
      Loaded l = load(bend_opts);
      MatrixZ b = pick_bend(l, bend_opts);
      Representation bent = bend(l.rep, l.curve, b);
      std::cout << "B: " << to_string(b) << "\n";
      for (const auto& g : bent.presentation().generators) std::cout << g << ": " << to_string(bent.image(g)) << "\n";
      return 0;
    }
    if (*cert) {
      Loaded l = load(cert_opts);
      Representation rep = l.rep;
      if (cert_opts.hit >= 0) rep = bend(l.rep, l.curve, pick_bend(l, cert_opts));
      SweepOptions so;
      so.threads = cert_opts.threads;
      DensityCertificate c = bad_prime_set(rep, bound, so);
      write_or_print(cert_out, to_text(c));
      if (emit_json) write_or_print(cert_out.empty() ? "" : cert_out + ".json", to_json(c));
      return c.verdict == "dense-certified" ? 0 : 9;
    }
    if (*sep) {
      Loaded l = load(sep_opts);
      SeparationOptions so;
      so.aux_primes = aux;
      OrbitSeparation s = orbit_separation(l.rep, l.curve, pick_bend(l, sep_opts), prime, so);
      write_or_print(sep_out, to_text(s));
      if (emit_json) write_or_print(sep_out.empty() ? "" : sep_out + ".json", to_json(s));
      return 0;
    }
    if (*run) {
      PipelineConfig c = load_config(config_path);
      for (const auto& [k, v] : overrides)
        if (!v.empty()) set_config_value(c, k, v);
      if (emit_json) c.emit_json = true;
      PipelineResult r = run_pipeline(c, std::cout);
      for (const auto& f : r.files) std::cout << "wrote " << f << "\n";
      std::cout << "exit " << r.exit_code << ": " << r.message << "\n";
      return r.exit_code;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
