#include "graphseg/windowing.hpp"

#include <cmath>
#include <stdexcept>

#include "graphseg/parallel.hpp"

namespace graphseg {

SolverInput parse_solver_input(const std::string& name) {
  if (name == "correlation") return SolverInput::Correlation;
  if (name == "raw") return SolverInput::RawCovariance;
  throw std::invalid_argument("unknown covariance mode '" + name +
                              "' (expected correlation or raw)");
}

std::string to_string(SolverInput kind) {
  return kind == SolverInput::Correlation ? "correlation" : "raw";
}

WindowBatch make_windows(const MultivariateSeries& series, Index window,
                         Index stride) {
  const Index n = series.samples();
  if (window < 1 || window > n) {
    throw std::invalid_argument("make_windows: window must be in [1, " +
                                std::to_string(n) + "], got " +
                                std::to_string(window));
  }
  if (stride < 1) {
    throw std::invalid_argument("make_windows: stride must be positive, got " +
                                std::to_string(stride));
  }
  WindowBatch batch;
  batch.values = series.values;
  batch.window = window;
  batch.stride = stride;
  const Index count = (n - window) / stride + 1;
  batch.starts.reserve(static_cast<std::size_t>(count));
  for (Index b = 0; b < count; ++b) batch.starts.push_back(b * stride);
  return batch;
}

CorrelationBatch window_correlation(const WindowBatch& batch,
                                    double variance_floor, SolverInput kind,
                                    int threads) {
  const Index m = batch.window;
  if (m < 2) {
    throw std::invalid_argument("window_correlation: window must hold at least 2 samples");
  }
  const Index d = batch.variables();
  CorrelationBatch out;
  out.input_kind = kind;
  out.matrices.resize(static_cast<std::size_t>(batch.batches()));

  parallel_for(static_cast<std::size_t>(batch.batches()), threads, [&](std::size_t b) {
    Matrix centered = batch.window_block(static_cast<Index>(b));
    centered.rowwise() -= centered.colwise().mean();

    std::vector<bool> degenerate(static_cast<std::size_t>(d), false);
    for (Index c = 0; c < d; ++c) {
      const double variance = centered.col(c).squaredNorm() / static_cast<double>(m);
      if (variance < variance_floor) {
        degenerate[static_cast<std::size_t>(c)] = true;
        centered.col(c).setZero();
      } else if (kind == SolverInput::Correlation) {
        centered.col(c) /= std::sqrt(variance);
      }
    }

    Matrix s = (centered.transpose() * centered) / static_cast<double>(m);
    s = ((s + s.transpose()) * 0.5).eval();
    if (kind == SolverInput::Correlation) {
      for (Index i = 0; i < d; ++i) {
        for (Index j = 0; j < d; ++j) {
          if (i == j) continue;
          s(i, j) = std::clamp(s(i, j), -1.0, 1.0);
        }
        s(i, i) = 1.0;
      }
    } else {
      // a dead sensor still needs a positive diagonal for the solver
      for (Index i = 0; i < d; ++i) {
        if (degenerate[static_cast<std::size_t>(i)]) s(i, i) = 1.0;
      }
    }
    out.matrices[b] = std::move(s);
  });
  return out;
}

} // namespace graphseg
