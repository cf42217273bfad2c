// Acceptance suite: one pass/fail line per criterion. Exit code is zero
// only when every criterion passes, except the PAMAP2 reproduction, whose
// failure is reported as a documented deviation (the dataset cannot be
// redistributed with the repository).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "graphseg/io.hpp"
#include "graphseg/pipeline.hpp"
#include "graphseg/rng.hpp"
#include "../support/glasso_oracle.hpp"

using namespace graphseg;
using graphseg::testing::oracle_solve;
using graphseg::testing::random_correlation;

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int hardware_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp(hw, 1u, 8u));
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(4);
  out << v;
  return out.str();
}

// ---- synthetic end-to-end fixtures (criteria 4, 5, 6, 9) ----

constexpr Index kSegmentLength = 10000;
constexpr int kSegmentCount = 5;
constexpr std::uint64_t kSeeds[] = {1, 2, 3, 4, 5};

SyntheticSpec synth_spec(std::uint64_t seed) {
  SyntheticSpec spec;
  spec.seed = seed;
  spec.variables = 5;
  spec.segments.assign(kSegmentCount, {kSegmentLength, 0.4});
  spec.weight_min = 0.2;
  spec.weight_max = 0.5;
  spec.truth_guard_radius = 5 * 500;  // Z * M
  return spec;
}

PipelineConfig synth_config(GraphMetric metric, int chunk_size = 32) {
  PipelineConfig config;
  config.window = 500;
  config.stride = 100;
  config.solver.chunk_size = chunk_size;
  config.solver.lambda_mode = LambdaMode::Auto;
  config.solver.threads = hardware_threads();
  config.metric = metric;
  config.threshold = 0.5;
  config.guard_multiplier = 5;
  config.guard_units = GuardUnits::Samples;
  return config;
}

struct SynthRun {
  double accuracy_l1 = 0.0;
  double accuracy_signed = 0.0;
  TrajectorySignal trajectory_l1;
  std::vector<Index> starts;
};

std::vector<SynthRun> g_synth_runs;
double g_synth_seconds = 0.0;

const std::vector<SynthRun>& synth_runs() {
  if (!g_synth_runs.empty()) return g_synth_runs;
  const auto begin = Clock::now();
  for (const std::uint64_t seed : kSeeds) {
    const SyntheticData data = generate_piecewise_gaussian(synth_spec(seed));
    SynthRun run;
    const PipelineResult l1 = run_pipeline_on_series(
        data.series, data.truth, synth_config(GraphMetric::L1));
    run.accuracy_l1 = l1.report->accuracy;
    run.trajectory_l1 = l1.trajectory;
    run.starts = l1.windows.starts;
    const PipelineResult ss = run_pipeline_on_series(
        data.series, data.truth, synth_config(GraphMetric::SignedSum));
    run.accuracy_signed = ss.report->accuracy;
    g_synth_runs.push_back(std::move(run));
  }
  g_synth_seconds = std::chrono::duration<double>(Clock::now() - begin).count();
  return g_synth_runs;
}

// ---- criteria ----

Outcome solver_vs_oracle() {
  const auto begin = Clock::now();
  SolverSettings settings;
  settings.max_iterations = 5000;
  double worst_gap = 0.0, worst_kkt = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Index d = seed % 2 == 0 ? 2 : 3;
    const Matrix s = random_correlation(seed, d);
    for (const double lambda : {0.05, 0.1, 0.3}) {
      const GlassoSolution sol = glasso_solve(s, lambda, settings);
      const Matrix reference = oracle_solve(s, lambda);
      worst_gap = std::max(worst_gap, (sol.theta - reference).norm());
      worst_kkt = std::max(worst_kkt, kkt_residual(sol.theta, s, lambda));
    }
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - begin).count();
  return {worst_gap <= 1e-3 && worst_kkt <= 1e-3 && seconds < 5.0,
          "max |theta - oracle| = " + fmt(worst_gap) + ", max KKT = " +
              fmt(worst_kkt) + ", " + fmt(seconds) + " s"};
}

Outcome analytic_fixture() {
  Matrix s(2, 2);
  s << 1.0, 0.8, 0.8, 1.0;
  Matrix w(2, 2);
  w << 1.0, 0.7, 0.7, 1.0;  // S with the retained edge shrunk by lambda
  const Matrix expected = w.inverse();
  const GlassoSolution sol = glasso_solve(s, 0.1);
  const double gap = (sol.theta - expected).cwiseAbs().maxCoeff();
  return {gap <= 1e-3, "max entry error " + fmt(gap) + " vs closed form " +
                           fmt(expected(0, 0)) + "/" + fmt(expected(0, 1))};
}

Outcome partial_correlation_oracle() {
  Matrix theta(3, 3);
  theta << 1.0, 0.3, 0.0, 0.3, 1.0, 0.3, 0.0, 0.3, 1.0;
  const Matrix graph = partial_correlation_graph(theta);

  const Index n = 100000;
  const SyntheticData data = generate_from_precisions(97, {theta}, {n}, 0);
  const Matrix& x = data.series.values;
  double worst = 0.0;
  for (Index p = 0; p < 3; ++p) {
    for (Index q = p + 1; q < 3; ++q) {
      const Index r = 3 - p - q;
      const Vector xr = x.col(r);
      const double rr = xr.dot(xr);
      const Vector res_p = x.col(p) - (x.col(p).dot(xr) / rr) * xr;
      const Vector res_q = x.col(q) - (x.col(q).dot(xr) / rr) * xr;
      const double rho =
          res_p.dot(res_q) / std::sqrt(res_p.dot(res_p) * res_q.dot(res_q));
      worst = std::max(worst, std::abs(graph(p, q) - rho));
    }
  }
  return {worst <= 0.02, "max |rho - regress-out estimate| = " + fmt(worst)};
}

Outcome synthetic_end_to_end() {
  const auto& runs = synth_runs();
  int passing = 0;
  std::string detail;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const bool ok = runs[i].accuracy_l1 >= 0.85 && runs[i].accuracy_signed >= 0.80;
    passing += ok ? 1 : 0;
    detail += (i ? ", " : "") + std::string("seed ") +
              std::to_string(kSeeds[i]) + ": l1 " + fmt(runs[i].accuracy_l1) +
              " / signed " + fmt(runs[i].accuracy_signed);
  }
  const bool pass = passing >= 4 && g_synth_seconds <= 120.0;
  return {pass, detail + "; " + std::to_string(passing) + "/5 seeds, " +
                    fmt(g_synth_seconds) + " s"};
}

Outcome boundary_spikes() {
  const auto& runs = synth_runs();
  const Index stride = 100, window = 500;
  const Index near = (window + stride - 1) / stride;          // ceil(M/s)
  const Index guard = (5 * window + stride - 1) / stride;      // ceil(Z*M/s)
  double worst_ratio = std::numeric_limits<double>::infinity();
  for (const SynthRun& run : runs) {
    const Vector& d2g = run.trajectory_l1.d2g_norm;
    const Index batches = d2g.size();

    std::vector<Index> boundary_batches;
    for (int k = 1; k < kSegmentCount; ++k) {
      const double boundary = static_cast<double>(k) * kSegmentLength;
      Index best = 0;
      double best_distance = std::numeric_limits<double>::infinity();
      for (Index b = 0; b < batches; ++b) {
        const double center = static_cast<double>(run.starts[b]) +
                              static_cast<double>(window - 1) / 2.0;
        const double distance = std::abs(center - boundary);
        if (distance < best_distance) {
          best_distance = distance;
          best = b;
        }
      }
      boundary_batches.push_back(best);
    }

    std::vector<double> far;
    for (Index b = 0; b < batches; ++b) {
      bool outside_guard = true;
      for (const Index bb : boundary_batches) {
        if (std::abs(b - bb) <= guard) outside_guard = false;
      }
      if (outside_guard) far.push_back(d2g[b]);
    }
    std::sort(far.begin(), far.end());
    const double median = far[far.size() / 2];

    for (const Index bb : boundary_batches) {
      double peak = 0.0;
      for (Index b = std::max<Index>(0, bb - near);
           b <= std::min<Index>(batches - 1, bb + near); ++b) {
        peak = std::max(peak, d2g[b]);
      }
      const double ratio = median > 0.0
                               ? peak / median
                               : std::numeric_limits<double>::infinity();
      worst_ratio = std::min(worst_ratio, ratio);
      if (peak < 5.0 * median) {
        return {false, "boundary near batch " + std::to_string(bb) +
                           " peaks at " + fmt(peak) + " vs median " + fmt(median)};
      }
    }
  }
  return {true, "worst peak/median ratio " + fmt(worst_ratio) + " (>= 5 required)"};
}

Outcome chunk_robustness() {
  const SyntheticData data = generate_piecewise_gaussian(synth_spec(1));
  double lo = 1.0, hi = 0.0;
  std::string detail;
  for (const int chunk : {16, 32, 64}) {
    const PipelineResult result = run_pipeline_on_series(
        data.series, data.truth, synth_config(GraphMetric::L1, chunk));
    const double accuracy = result.report->accuracy;
    lo = std::min(lo, accuracy);
    hi = std::max(hi, accuracy);
    detail += "chunk " + std::to_string(chunk) + ": " + fmt(accuracy) + "  ";
  }
  return {hi - lo <= 0.05, detail + "spread " + fmt(hi - lo)};
}

Outcome linear_scaling() {
  PipelineConfig config;
  config.window = 500;
  config.stride = 100;
  config.solver.lambda_mode = LambdaMode::Fixed;
  config.solver.lambda = 0.1;
  config.solver.chunk_size = 32;
  config.solver.threads = hardware_threads();
  config.metric = GraphMetric::L1;
  config.seed = 7;

  BenchSpec spec;
  spec.lengths = {100000, 200000};
  spec.variables = 5;
  spec.segment_count = 5;
  spec.edge_density = 0.4;
  spec.repeats = 3;
  const std::vector<BenchRow> rows = bench_scaling(config, spec);
  const double ratio = rows[1].seconds / rows[0].seconds;
  return {ratio >= 1.5 && ratio <= 2.8,
          fmt(rows[0].seconds) + " s -> " + fmt(rows[1].seconds) +
              " s, ratio " + fmt(ratio)};
}

Outcome pamap2_reproduction() {
  fs::path path;
  if (const char* env = std::getenv("GRAPHSEG_PAMAP2")) {
    path = env;
  } else {
    path = fs::path(GRAPHSEG_SOURCE_DIR) / "data" / "PAMAP2" / "subject101.dat";
  }
  if (!fs::exists(path)) {
    return {false, "dataset not present at " + path.string() +
                       " (reference accuracy 0.841); documented deviation"};
  }
  PipelineConfig config;
  config.input = path.string();
  config.format = FileFormat::Pamap2;
  config.columns = {4, 6, 44};  // hand acc x/z, ankle gyro x
  config.label_column = 1;
  config.window = 1000;
  config.stride = 100;
  config.solver.chunk_size = 64;
  config.solver.lambda_mode = LambdaMode::Auto;
  config.solver.threads = hardware_threads();
  config.metric = GraphMetric::SignedSum;

  auto loaded = load_delimited(config.input, config.format, config.columns,
                               config.label_column);
  loaded.first = forward_fill(std::move(loaded.first));
  const PipelineResult result =
      run_pipeline_on_series(loaded.first, loaded.second, config);
  const double accuracy = result.report->accuracy;
  return {accuracy >= 0.75,
          "accuracy " + fmt(accuracy) + " (reference 0.841, threshold 0.75)"};
}

Outcome determinism() {
  const SyntheticData data = generate_piecewise_gaussian(synth_spec(1));
  const fs::path root = fs::temp_directory_path() / "graphseg_acceptance_det";
  fs::remove_all(root);
  fs::create_directories(root);
  write_series_csv(root / "series.csv", data.series);

  PipelineConfig config = synth_config(GraphMetric::L1);
  config.columns = {0, 1, 2, 3, 4};
  config.input = (root / "series.csv").string();

  const auto run_to = [&](const std::string& name, int threads) {
    config.solver.threads = threads;
    config.out_dir = (root / name).string();
    run_pipeline(config);
  };
  run_to("a", 1);
  run_to("b", 1);
  run_to("c", 8);

  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  };
  bool identical = true;
  for (const char* name : {"graphs.json", "trajectory.csv", "labels_batches.csv",
                           "labels_samples.csv"}) {
    const std::string a = slurp(root / "a" / name);
    identical = identical && a == slurp(root / "b" / name) &&
                a == slurp(root / "c" / name);
  }
  fs::remove_all(root);
  return {identical, identical ? "artifacts byte-identical across reruns and "
                                 "thread counts 1/8"
                               : "artifact bytes differ"};
}

Outcome invariant_suites() {
  std::string failure;

  // permutation invariance of the trajectory
  {
    Rng rng(5);
    CIGraphSequence graphs;
    for (int g = 0; g < 6; ++g) {
      Matrix m = Matrix::Zero(4, 4);
      for (Index i = 0; i < 4; ++i) {
        for (Index j = i + 1; j < 4; ++j) {
          m(i, j) = m(j, i) = rng.uniform(-1.0, 1.0);
        }
      }
      graphs.graphs.push_back(std::move(m));
    }
    Eigen::PermutationMatrix<Eigen::Dynamic> perm(4);
    perm.setIdentity();
    perm.indices() << 2, 3, 1, 0;
    CIGraphSequence relabeled;
    for (const Matrix& g : graphs.graphs) {
      relabeled.graphs.push_back(perm * g * perm.transpose());
    }
    for (const GraphMetric metric : {GraphMetric::SignedSum, GraphMetric::L1}) {
      const TrajectorySignal a = graph_trajectory(graphs, metric);
      const TrajectorySignal b = graph_trajectory(relabeled, metric);
      if ((a.dg - b.dg).cwiseAbs().maxCoeff() > 1e-12 ||
          (a.d2g - b.d2g).cwiseAbs().maxCoeff() > 1e-12) {
        failure = "trajectory not permutation invariant";
      }
    }
  }

  // every recovered precision matrix is positive definite
  {
    CorrelationBatch batch;
    for (std::uint64_t seed = 300; seed < 312; ++seed) {
      batch.matrices.push_back(random_correlation(seed, 4, 80));
    }
    const PrecisionBatch out = glasso_batch(batch, 80, SolverSettings{});
    for (const Matrix& theta : out.matrices) {
      Eigen::SelfAdjointEigenSolver<Matrix> eigen(theta);
      if (eigen.eigenvalues().minCoeff() <= 1e-10) {
        failure = "recovered precision matrix not positive definite";
      }
    }
  }

  // forward_fill idempotence
  {
    Rng rng(6);
    MultivariateSeries series;
    series.values.resize(200, 3);
    for (Index r = 0; r < 200; ++r) {
      for (Index c = 0; c < 3; ++c) {
        series.values(r, c) = rng.bernoulli(0.25) ? std::nan("") : rng.normal();
      }
    }
    series.names = {"a", "b", "c"};
    const MultivariateSeries once = forward_fill(series);
    if (forward_fill(once).values != once.values) {
      failure = "forward_fill not idempotent";
    }
  }

  // normalize_signal idempotence
  {
    const Vector raw = (Vector(5) << 0.0, 1.0, 4.0, 2.0, 0.5).finished();
    const Vector once = normalize_signal(raw);
    if (normalize_signal(once) != once || once.maxCoeff() != 1.0) {
      failure = "normalize_signal not idempotent";
    }
  }

  // allocate_segments monotonicity
  {
    AllocationConfig config;
    config.guard_multiplier = 2;
    config.guard_units = GuardUnits::Batches;
    config.window = 1;
    config.stride = 1;
    Vector signal = Vector::Zero(30);
    std::vector<int> previous = allocate_segments(signal, config);
    Rng rng(8);
    for (int round = 0; round < 8; ++round) {
      signal[static_cast<Index>(rng.uniform01() * 30.0)] = 1.0;
      const std::vector<int> next = allocate_segments(signal, config);
      for (std::size_t i = 0; i < next.size(); ++i) {
        if (next[i] > previous[i]) failure = "allocate_segments not monotone";
      }
      previous = next;
    }
  }

  return {failure.empty(), failure.empty() ? "trajectory permutation, SPD, "
                                             "idempotence and monotonicity hold"
                                           : failure};
}

} // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    bool exempt;  // failure reported but does not flip the exit code
  };
  const std::vector<Criterion> criteria = {
      {1, "solver matches the independent oracle", solver_vs_oracle, false},
      {2, "analytic 2x2 fixture", analytic_fixture, false},
      {3, "partial correlations match the regress-out oracle",
       partial_correlation_oracle, false},
      {4, "synthetic end-to-end accuracy", synthetic_end_to_end, false},
      {5, "boundary spikes dominate the quiet signal", boundary_spikes, false},
      {6, "accuracy robust to chunk size", chunk_robustness, false},
      {7, "near-linear runtime scaling", linear_scaling, false},
      {8, "PAMAP2 soft reproduction", pamap2_reproduction, true},
      {9, "bit-identical artifacts across runs and threads", determinism, false},
      {10, "module invariant suites", invariant_suites, false},
  };

  bool all_required_pass = true;
  for (const Criterion& criterion : criteria) {
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass && !criterion.exempt) all_required_pass = false;
    std::cout << "criterion " << criterion.id << " ("
              << criterion.name << "): " << (outcome.pass ? "PASS" : "FAIL")
              << " -- " << outcome.detail << '\n';
  }
  return all_required_pass ? 0 : 1;
}
