#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "graphseg/allocation.hpp"
#include "graphseg/glasso.hpp"
#include "graphseg/ingest.hpp"
#include "graphseg/trajectory.hpp"
#include "graphseg/windowing.hpp"

namespace graphseg {

// Full pipeline configuration. Precedence: built-in defaults, then a flat
// JSON config file, then command-line flags.
struct PipelineConfig {
  std::string input;
  FileFormat format = FileFormat::GenericCsv;
  std::vector<Index> columns;
  std::optional<Index> label_column;

  Index window = 1000;
  Index stride = 100;
  SolverInput covariance = SolverInput::Correlation;
  double variance_floor = 1e-8;

  SolverSettings solver;

  GraphMetric metric = GraphMetric::SignedSum;
  double threshold = 0.5;
  int guard_multiplier = 5;
  GuardUnits guard_units = GuardUnits::Samples;

  std::uint64_t seed = 1;
  std::string out_dir = "out";

  AllocationConfig allocation() const {
    return {threshold, guard_multiplier, guard_units, window, stride};
  }
};

// Applies a flat key/value JSON document. Unknown keys and wrong value
// types are errors; the schema is documented in the README.
void apply_config_json(PipelineConfig& config, const nlohmann::json& doc);

PipelineConfig load_config_file(const std::filesystem::path& path);

// Echo of the effective configuration, written into summaries.
nlohmann::json config_to_json(const PipelineConfig& config);

} // namespace graphseg
