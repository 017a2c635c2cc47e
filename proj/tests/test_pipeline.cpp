#include <doctest.h>

#include "quatbend/exact/text.hpp"
#include "quatbend/pipeline/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace quatbend;

namespace {

std::string data(const std::string& f) { return std::string(QUATBEND_DATA_DIR) + "/" + f; }

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("quatbend_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("config parsing") {
  PipelineConfig c = parse_config(
      "algebra = 2 3\n# comment\nmu = 0 1 0 0\ncopies = 2\ndatum = x.datum\naux_primes = none\nemit_json = true\n", "/base");
  CHECK(c.a == 2);
  CHECK(c.b == 3);
  CHECK(c.copies == 2);
  CHECK(c.datum == "/base/x.datum");
  CHECK(c.aux_primes.empty());
  CHECK(c.emit_json);
  CHECK_THROWS_AS(parse_config("nonsense = 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("copies = two\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("algebra 3 -1\n"), std::invalid_argument);
  CHECK(load_config(data("pipeline_j.conf")).datum == data("free_pell_j.datum"));
}

TEST_CASE("definite algebra fails at stage 1") {
  PipelineConfig c = load_config(data("definite.conf"));
  c.output_dir = scratch("definite").string();
  std::ostringstream log;
  PipelineResult r = run_pipeline(c, log);
  CHECK(r.exit_code == 1);
  CHECK(r.failed_stage == 1);
  CHECK(r.message.find("not indefinite") != std::string::npos);
}

TEST_CASE("height zero fails at the B-search stage") {
  PipelineConfig c = load_config(data("pipeline_j.conf"));
  c.output_dir = scratch("height0").string();
  c.b_height = 0;
  std::ostringstream log;
  PipelineResult r = run_pipeline(c, log);
  CHECK(r.exit_code == 5);
  CHECK(r.message == "no bend element at height 0");
}

TEST_CASE("curve that is not a Pell element fails at stage 4") {
  auto dir = scratch("badcurve");
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "d.datum");
    out << "generators g h\nassign g 2 1 0 0\nassign h 0 0 1 0\ncurve c nonseparating h stable g\n";
  }
  PipelineConfig c;
  c.datum = (dir / "d.datum").string();
  c.output_dir = (dir / "out").string();
  std::ostringstream log;
  PipelineResult r = run_pipeline(c, log);
  CHECK(r.exit_code == 4);
}

TEST_CASE("pipeline runs end to end and reproduces its certificates") {
  PipelineConfig c = load_config(data("pipeline_j.conf"));
  c.sweep_bound = 23;
  c.emit_json = true;
  std::string first, second;
  for (int run = 0; run < 2; ++run) {
    c.output_dir = scratch("run" + std::to_string(run)).string();
    std::ostringstream log;
    PipelineResult r = run_pipeline(c, log);
    CHECK(r.failed_stage == 0);
    CHECK(r.exit_code == 9);
    CHECK(r.files.size() == 7);
    std::string text = read_file(c.output_dir + "/certificate.txt") + read_file(c.output_dir + "/separation.txt") +
                       read_file(c.output_dir + "/report.txt") + read_file(c.output_dir + "/certificate.json");
    (run == 0 ? first : second) = text;
  }
  CHECK(first == second);
  CHECK(first.find("verdict: not-certified") != std::string::npos);
}
