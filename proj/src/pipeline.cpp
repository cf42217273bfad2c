#include "graphseg/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "graphseg/io.hpp"

namespace graphseg {

namespace {

using Clock = std::chrono::steady_clock;

template <typename Fn>
auto timed_stage(const char* name, double& seconds, Fn&& fn) {
  const auto begin = Clock::now();
  try {
    auto result = fn();
    seconds += std::chrono::duration<double>(Clock::now() - begin).count();
    return result;
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string(name) + ": " + e.what());
  }
}

} // namespace

PipelineResult run_pipeline_on_series(const MultivariateSeries& series,
                                      const std::optional<LabelSeries>& truth,
                                      const PipelineConfig& config) {
  PipelineResult result;

  result.windows = timed_stage("windowing", result.seconds.windowing, [&] {
    WindowBatch windows = make_windows(series, config.window, config.stride);
    return windows;
  });
  const CorrelationBatch correlations =
      timed_stage("windowing", result.seconds.windowing, [&] {
        return window_correlation(result.windows, config.variance_floor,
                                  config.covariance, config.solver.threads);
      });

  result.precisions =
      timed_stage("graph-recovery", result.seconds.graph_recovery, [&] {
        return glasso_batch(correlations, config.window, config.solver);
      });
  result.graphs = timed_stage("graph-recovery", result.seconds.graph_recovery,
                              [&] { return partial_correlation_graphs(result.precisions); });

  result.trajectory = timed_stage("trajectory", result.seconds.trajectory, [&] {
    return graph_trajectory(result.graphs, config.metric);
  });

  result.labels = timed_stage("allocation", result.seconds.allocation, [&] {
    return label_segments(result.trajectory.d2g_norm, config.allocation(),
                          result.windows.starts, series.samples());
  });

  if (truth) {
    result.report = timed_stage("evaluation", result.seconds.evaluation, [&] {
      if (static_cast<Index>(truth->labels.size()) != series.samples()) {
        throw std::invalid_argument("truth labels do not match the series length");
      }
      result.truth_batch_labels = make_ground_truth_batch_labels(
          *truth, result.windows.starts, config.window);
      return evaluate_batch_labels(result.labels.batch_labels,
                                   result.truth_batch_labels);
    });
  }
  return result;
}

PipelineResult run_pipeline(const PipelineConfig& config) {
  if (config.input.empty()) {
    throw std::runtime_error("ingest: no input file given");
  }
  double ingest_seconds = 0.0;
  auto [series, truth] = timed_stage("ingest", ingest_seconds, [&] {
    auto loaded = load_delimited(config.input, config.format, config.columns,
                                 config.label_column);
    loaded.first = forward_fill(std::move(loaded.first));
    return loaded;
  });

  PipelineResult result = run_pipeline_on_series(series, truth, config);
  result.seconds.ingest = ingest_seconds;

  const std::filesystem::path out_dir(config.out_dir);
  write_graphs_json(out_dir / "graphs.json", result.graphs, result.precisions,
                    result.windows);
  write_trajectory_csv(out_dir / "trajectory.csv", result.trajectory,
                       result.windows);
  write_batch_labels_csv(out_dir / "labels_batches.csv",
                         result.labels.batch_labels, result.windows);
  write_sample_labels_csv(out_dir / "labels_samples.csv",
                          result.labels.sample_labels);
  write_summary_json(out_dir / "summary.json", summary_json(config, result));
  return result;
}

nlohmann::json summary_json(const PipelineConfig& config,
                            const PipelineResult& result) {
  nlohmann::json doc;
  doc["schema_version"] = 1;
  doc["config"] = config_to_json(config);
  doc["batches"] = result.windows.batches();
  doc["samples"] = result.windows.values.rows();
  nlohmann::json stages;
  stages["ingest_seconds"] = result.seconds.ingest;
  stages["windowing_seconds"] = result.seconds.windowing;
  stages["graph_recovery_seconds"] = result.seconds.graph_recovery;
  stages["trajectory_seconds"] = result.seconds.trajectory;
  stages["allocation_seconds"] = result.seconds.allocation;
  stages["evaluation_seconds"] = result.seconds.evaluation;
  doc["stages"] = std::move(stages);
  if (result.report) {
    doc["accuracy"] = result.report->accuracy;
    doc["batches_matching"] = result.report->batches_matching;
  }
  return doc;
}

std::vector<BenchRow> bench_scaling(const PipelineConfig& config,
                                    const BenchSpec& spec) {
  if (spec.lengths.empty()) {
    throw std::invalid_argument("bench_scaling: no lengths given");
  }
  if (spec.segment_count < 1 || spec.repeats < 1) {
    throw std::invalid_argument("bench_scaling: segment count and repeats must be positive");
  }
  std::vector<BenchRow> rows;
  rows.reserve(spec.lengths.size());
  for (const Index n : spec.lengths) {
    SyntheticSpec synth;
    synth.seed = config.seed;
    synth.variables = spec.variables;
    synth.weight_min = spec.weight_min;
    synth.weight_max = spec.weight_max;
    synth.truth_guard_radius =
        static_cast<Index>(config.guard_multiplier) * config.window;
    const Index base = n / spec.segment_count;
    if (base < config.window) {
      throw std::invalid_argument("bench_scaling: segments shorter than the window");
    }
    for (int k = 0; k < spec.segment_count; ++k) {
      // last segment absorbs the remainder so the lengths sum to n
      const Index len = k + 1 == spec.segment_count
                            ? n - base * (spec.segment_count - 1)
                            : base;
      synth.segments.push_back({len, spec.edge_density});
    }
    const SyntheticData data = generate_piecewise_gaussian(synth);

    BenchRow row;
    row.samples = n;
    row.seconds = std::numeric_limits<double>::infinity();
    for (int r = 0; r < spec.repeats; ++r) {
      const PipelineResult result =
          run_pipeline_on_series(data.series, data.truth, config);
      row.seconds = std::min(row.seconds, result.seconds.total());
      row.accuracy = result.report->accuracy;
    }
    rows.push_back(row);
  }
  return rows;
}

void write_bench_csv(const std::filesystem::path& path,
                     const std::vector<BenchRow>& rows) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write '" + path.string() + "'");
  }
  out << "samples,seconds,accuracy\n";
  for (const BenchRow& row : rows) {
    out << row.samples << ',' << format_double(row.seconds) << ','
        << format_double(row.accuracy) << '\n';
  }
}

} // namespace graphseg
