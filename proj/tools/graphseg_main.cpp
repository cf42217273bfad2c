#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "graphseg/io.hpp"
#include "graphseg/pipeline.hpp"

namespace {

using namespace graphseg;

struct CliOverrides {
  std::string input;
  std::string format;
  std::vector<Index> columns;
  Index label_column = -1;
  Index window = 0;
  Index stride = 0;
  std::string covariance;
  int chunk_size = 0;
  std::string lambda;
  std::vector<double> lambda_grid;
  int max_iterations = 0;
  std::string metric;
  double threshold = 0.0;
  int guard_z = 0;
  std::string guard_units;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string out_dir;
};

// Shared pipeline options; every flag supplied on the command line beats
// the config file, which beats the built-in defaults.
void add_pipeline_options(CLI::App* cmd, CliOverrides& o) {
  cmd->add_option("--input", o.input, "input series file");
  cmd->add_option("--format", o.format, "input format: generic-csv or pamap2");
  cmd->add_option("--columns", o.columns, "0-based data column indices")
      ->delimiter(',');
  cmd->add_option("--labels-column", o.label_column,
                  "0-based truth label column");
  cmd->add_option("--window", o.window, "window length M in samples");
  cmd->add_option("--stride", o.stride, "stride s in samples");
  cmd->add_option("--batch-size", o.chunk_size,
                  "windows sharing one regularization value");
  cmd->add_option("--lambda", o.lambda, "fixed penalty value, or 'auto'");
  cmd->add_option("--lambda-grid", o.lambda_grid, "grid for --lambda auto")
      ->delimiter(',');
  cmd->add_option("--covariance", o.covariance,
                  "solver input: correlation or raw");
  cmd->add_option("--metric", o.metric,
                  "graph distance: signed-sum, l1, l2 or frobenius");
  cmd->add_option("--threshold", o.threshold,
                  "denoising threshold on normalized d2G");
  cmd->add_option("--guard-z", o.guard_z, "guard multiplier Z");
  cmd->add_option("--guard-units", o.guard_units,
                  "guard band units: samples or batches");
  cmd->add_option("--max-iters", o.max_iterations, "solver iteration cap");
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--threads", o.threads, "parallel window solves");
  cmd->add_option("--out", o.out_dir, "output directory");
}

PipelineConfig build_config(const CLI::App* cmd, const CliOverrides& o,
                            const std::string& config_path) {
  PipelineConfig config;
  std::string path = config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("GRAPHSEG_CONFIG")) path = env;
  }
  if (!path.empty()) config = load_config_file(path);

  const auto given = [&](const std::string& flag) {
    return cmd->count(flag) > 0;
  };
  if (given("--input")) config.input = o.input;
  if (given("--format")) config.format = parse_file_format(o.format);
  if (given("--columns")) config.columns = o.columns;
  if (given("--labels-column")) config.label_column = o.label_column;
  if (given("--window")) config.window = o.window;
  if (given("--stride")) config.stride = o.stride;
  if (given("--batch-size")) config.solver.chunk_size = o.chunk_size;
  if (given("--lambda")) {
    if (o.lambda == "auto") {
      config.solver.lambda_mode = LambdaMode::Auto;
    } else {
      config.solver.lambda_mode = LambdaMode::Fixed;
      config.solver.lambda = std::stod(o.lambda);
    }
  }
  if (given("--lambda-grid")) config.solver.lambda_grid = o.lambda_grid;
  if (given("--covariance")) config.covariance = parse_solver_input(o.covariance);
  if (given("--metric")) config.metric = parse_metric(o.metric);
  if (given("--threshold")) config.threshold = o.threshold;
  if (given("--guard-z")) config.guard_multiplier = o.guard_z;
  if (given("--guard-units")) config.guard_units = parse_guard_units(o.guard_units);
  if (given("--max-iters")) config.solver.max_iterations = o.max_iterations;
  if (given("--seed")) config.seed = o.seed;
  if (given("--threads")) config.solver.threads = o.threads;
  if (given("--out")) config.out_dir = o.out_dir;
  return config;
}

int run_segment(const PipelineConfig& config) {
  const PipelineResult result = run_pipeline(config);
  std::cout << "batches: " << result.windows.batches() << '\n';
  if (result.report) {
    std::cout << "accuracy: " << format_double(result.report->accuracy) << '\n';
  }
  std::cout << "wrote " << config.out_dir << "/summary.json\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sliding-window partial-correlation segmentation of "
               "multivariate time series"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path,
                 "flat JSON config file (default: $GRAPHSEG_CONFIG)");

  CliOverrides o;

  CLI::App* segment = app.add_subcommand(
      "segment", "run the full segmentation pipeline on an input file");
  add_pipeline_options(segment, o);

  CLI::App* synth = app.add_subcommand(
      "synth", "generate a piecewise-stationary Gaussian series");
  std::uint64_t synth_seed = 1;
  int synth_vars = 5;
  int synth_segments = 5;
  Index synth_length = 10000;
  double synth_density = 0.4;
  double synth_wmin = 0.2, synth_wmax = 0.5;
  Index synth_guard = 2500;
  std::string synth_out = "synth";
  std::vector<std::string> synth_segment_specs;
  synth->add_option("--seed", synth_seed, "random seed");
  synth->add_option("--vars", synth_vars, "variable count D");
  synth->add_option("--segments", synth_segments, "number of segments");
  synth->add_option("--segment-length", synth_length, "samples per segment");
  synth->add_option("--density", synth_density, "edge density in (0,1)");
  synth->add_option("--weight-min", synth_wmin, "smallest edge magnitude");
  synth->add_option("--weight-max", synth_wmax, "largest edge magnitude");
  synth->add_option("--guard-band", synth_guard,
                    "truth zero radius around boundaries, in samples");
  synth->add_option("--segment-spec", synth_segment_specs,
                    "explicit length:density pairs (overrides --segments)");
  synth->add_option("--out", synth_out, "output directory");

  CLI::App* eval = app.add_subcommand(
      "eval", "score a predicted labels CSV against a truth CSV");
  std::string eval_pred, eval_truth;
  eval->add_option("--pred", eval_pred, "predicted labels CSV")->required();
  eval->add_option("--truth", eval_truth, "ground-truth labels CSV")->required();

  CLI::App* bench = app.add_subcommand(
      "bench", "time the pipeline on synthetic series of growing length");
  add_pipeline_options(bench, o);
  std::vector<Index> bench_lengths;
  int bench_vars = 5;
  int bench_segments = 5;
  double bench_density = 0.4;
  int bench_repeats = 1;
  std::string bench_out = "bench.csv";
  bench->add_option("--lengths", bench_lengths, "series lengths N to time")
      ->delimiter(',')
      ->required();
  bench->add_option("--vars", bench_vars, "variable count D");
  bench->add_option("--segments", bench_segments, "segments per series");
  bench->add_option("--density", bench_density, "edge density");
  bench->add_option("--repeats", bench_repeats, "repeats per length (fastest kept)");
  bench->add_option("--bench-out", bench_out, "output CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (segment->parsed()) {
      return run_segment(build_config(segment, o, config_path));
    }
    if (synth->parsed()) {
      SyntheticSpec spec;
      spec.seed = synth_seed;
      spec.variables = synth_vars;
      spec.weight_min = synth_wmin;
      spec.weight_max = synth_wmax;
      spec.truth_guard_radius = synth_guard;
      if (!synth_segment_specs.empty()) {
        for (const std::string& text : synth_segment_specs) {
          const auto colon = text.find(':');
          if (colon == std::string::npos) {
            throw std::invalid_argument("--segment-spec expects length:density, got '" +
                                        text + "'");
          }
          spec.segments.push_back({static_cast<Index>(std::stoll(text.substr(0, colon))),
                                   std::stod(text.substr(colon + 1))});
        }
      } else {
        for (int k = 0; k < synth_segments; ++k) {
          spec.segments.push_back({synth_length, synth_density});
        }
      }
      const SyntheticData data = generate_piecewise_gaussian(spec);
      const std::filesystem::path out_dir(synth_out);
      write_series_csv(out_dir / "series.csv", data.series);
      write_truth_csv(out_dir / "truth.csv", data.truth);
      write_precisions_json(out_dir / "precisions.json", data.precisions);
      std::cout << "wrote " << (out_dir / "series.csv").string() << " ("
                << data.series.samples() << " samples, "
                << data.series.variables() << " variables)\n";
      return 0;
    }
    if (eval->parsed()) {
      const std::vector<int> pred = read_labels_csv(eval_pred);
      const std::vector<int> truth = read_labels_csv(eval_truth);
      const EvalReport report = evaluate_batch_labels(pred, truth);
      std::cout << "labels: " << report.batches_total
                << "\nmatching: " << report.batches_matching
                << "\naccuracy: " << format_double(report.accuracy) << '\n';
      return 0;
    }
    if (bench->parsed()) {
      PipelineConfig config = build_config(bench, o, config_path);
      BenchSpec spec;
      spec.lengths = bench_lengths;
      spec.variables = bench_vars;
      spec.segment_count = bench_segments;
      spec.edge_density = bench_density;
      spec.repeats = bench_repeats;
      const std::vector<BenchRow> rows = bench_scaling(config, spec);
      write_bench_csv(bench_out, rows);
      for (const BenchRow& row : rows) {
        std::cout << row.samples << ',' << format_double(row.seconds) << ','
                  << format_double(row.accuracy) << '\n';
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
