#pragma once

#include <string>
#include <vector>

#include "graphseg/ingest.hpp"
#include "graphseg/types.hpp"

namespace graphseg {

// Overlapping windows of a series: window b covers rows
// [starts[b], starts[b] + window). The series is stored once and windows
// are row blocks into it.
struct WindowBatch {
  Matrix values;               // full N x D series
  std::vector<Index> starts;   // starts[b] = b * stride
  Index window = 0;
  Index stride = 0;

  Index batches() const { return static_cast<Index>(starts.size()); }
  Index variables() const { return values.cols(); }
  auto window_block(Index b) const {
    return values.middleRows(starts[static_cast<std::size_t>(b)], window);
  }
};

// What is handed to the solver per window.
enum class SolverInput { Correlation, RawCovariance };

SolverInput parse_solver_input(const std::string& name);
std::string to_string(SolverInput kind);

struct CorrelationBatch {
  std::vector<Matrix> matrices;  // B of D x D, symmetric
  SolverInput input_kind = SolverInput::Correlation;

  Index batches() const { return static_cast<Index>(matrices.size()); }
};

// Windows at starts 0, s, 2s, ...; B = floor((N - window) / stride) + 1.
// Trailing samples that do not fill a window are dropped.
WindowBatch make_windows(const MultivariateSeries& series, Index window,
                         Index stride);

// Per window: center each variable, divide by its population standard
// deviation (divisor M) and form the sample correlation matrix. Variables
// whose variance falls below variance_floor get zeroed correlations and a
// unit diagonal. RawCovariance skips the standardization and returns the
// centered covariance instead.
CorrelationBatch window_correlation(const WindowBatch& batch,
                                    double variance_floor = 1e-8,
                                    SolverInput kind = SolverInput::Correlation,
                                    int threads = 1);

} // namespace graphseg
