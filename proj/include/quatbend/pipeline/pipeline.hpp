#pragma once

#include "quatbend/modp/certificate.hpp"
#include "quatbend/surface/datum.hpp"

#include <array>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace quatbend {

struct PipelineConfig {
  Rational a = 3;
  Rational b = -1;
  std::string order = "standard";  // or a path to an order file
  std::array<Rational, 4> mu{0, 1, 0, 0};
  int copies = 1;
  std::string datum;
  std::string curve;  // curve name in the datum; empty picks the first
  std::int64_t pell_height = 50;
  std::int64_t b_height = 2;
  std::int64_t sweep_bound = 50;
  std::int64_t separation_prime = 5;
  std::vector<std::int64_t> aux_primes{7, 11};
  std::string output_dir = "out";
  unsigned threads = 1;
  std::string bend_select = "first-surjective";  // or "first"
  std::size_t bend_select_cap = 16;
  std::uint64_t candidate_budget = 20'000'000;
  GroupBudget group_budget;
  bool emit_json = false;
};

/// Applies one key; throws std::invalid_argument for unknown keys or bad values.
/// Relative paths are resolved against base_dir.
void set_config_value(PipelineConfig& c, const std::string& key, const std::string& value, const std::string& base_dir = "");

/// Flat "key = value" lines; '#' starts a comment.
PipelineConfig parse_config(const std::string& text, const std::string& base_dir = "");
PipelineConfig load_config(const std::string& path);

/// Stage names, index 1..8.
const std::vector<std::string>& pipeline_stages();

struct PipelineResult {
  int exit_code = 0;       // 0 dense-certified, 9 otherwise, stage index on failure
  int failed_stage = 0;
  std::string message;
  std::vector<std::string> files;  // written artifacts, in order
  DensityCertificate certificate;
  DensityCertificate unbent_certificate;
  OrbitSeparation separation;
  MatrixZ bend_element;
};

/// Runs the stages in order and writes artifacts into config.output_dir.
PipelineResult run_pipeline(const PipelineConfig& config, std::ostream& log);

}  // namespace quatbend
