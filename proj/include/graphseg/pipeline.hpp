#pragma once

#include <optional>
#include <vector>

#include "graphseg/allocation.hpp"
#include "graphseg/config.hpp"
#include "graphseg/evaluation.hpp"
#include "graphseg/glasso.hpp"
#include "graphseg/ingest.hpp"
#include "graphseg/synthetic.hpp"
#include "graphseg/trajectory.hpp"
#include "graphseg/windowing.hpp"

namespace graphseg {

struct StageSeconds {
  double ingest = 0.0;
  double windowing = 0.0;
  double graph_recovery = 0.0;
  double trajectory = 0.0;
  double allocation = 0.0;
  double evaluation = 0.0;

  double total() const {
    return ingest + windowing + graph_recovery + trajectory + allocation +
           evaluation;
  }
};

struct PipelineResult {
  WindowBatch windows;
  PrecisionBatch precisions;
  CIGraphSequence graphs;
  TrajectorySignal trajectory;
  SegmentLabels labels;
  std::vector<int> truth_batch_labels;  // empty when no truth given
  std::optional<EvalReport> report;
  StageSeconds seconds;
};

// The windowing -> recovery -> trajectory -> allocation chain (plus
// evaluation when truth labels are supplied) on an in-memory series.
// Errors are rethrown with the failing stage's name prefixed.
PipelineResult run_pipeline_on_series(const MultivariateSeries& series,
                                      const std::optional<LabelSeries>& truth,
                                      const PipelineConfig& config);

// File-to-files variant: loads config.input, forward-fills, runs the
// chain and writes graphs.json, trajectory.csv, labels_batches.csv,
// labels_samples.csv and summary.json into config.out_dir.
PipelineResult run_pipeline(const PipelineConfig& config);

nlohmann::json summary_json(const PipelineConfig& config,
                            const PipelineResult& result);

struct BenchSpec {
  std::vector<Index> lengths;
  int variables = 5;
  int segment_count = 5;
  double edge_density = 0.4;
  double weight_min = 0.2;
  double weight_max = 0.5;
  int repeats = 1;  // fastest repeat is reported
};

struct BenchRow {
  Index samples = 0;
  double seconds = 0.0;
  double accuracy = 0.0;
};

// Times the pipeline (generation excluded) on synthetic series of the
// requested lengths, holding variables, window and stride fixed.
std::vector<BenchRow> bench_scaling(const PipelineConfig& config,
                                    const BenchSpec& spec);

void write_bench_csv(const std::filesystem::path& path,
                     const std::vector<BenchRow>& rows);

} // namespace graphseg
