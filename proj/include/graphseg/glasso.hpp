#pragma once

#include <span>
#include <string>
#include <vector>

#include "graphseg/types.hpp"
#include "graphseg/windowing.hpp"

namespace graphseg {

enum class LambdaMode { Fixed, Auto };

// Entries of a precision matrix at or below this magnitude count as absent
// edges, both for the eBIC model size and the KKT case split.
inline constexpr double kEdgeThreshold = 1e-6;

struct SolverSettings {
  LambdaMode lambda_mode = LambdaMode::Auto;
  double lambda = 0.1;  // used in Fixed mode
  std::vector<double> lambda_grid = {0.01, 0.05, 0.1, 0.2, 0.5};
  int max_iterations = 200;
  double admm_penalty = 1.0;
  double abs_tol = 1e-5;
  double rel_tol = 1e-4;
  int chunk_size = 64;   // windows sharing one regularization value
  double ebic_gamma = 0.5;
  int threads = 1;
};

struct GlassoSolution {
  Matrix theta;
  int iterations = 0;
  bool converged = true;  // false when max_iterations hit before tolerance
};

// Minimizes -logdet(T) + trace(S T) + lambda * sum_{i != j} |T_ij| over
// positive definite T (the diagonal is not penalized), by ADMM alternating
// an eigendecomposition step with off-diagonal soft-thresholding. Iterates
// until the KKT residual drops to 10 * abs_tol or max_iterations is hit.
GlassoSolution glasso_solve(const Matrix& s, double lambda,
                            const SolverSettings& settings = {});

// Max over off-diagonal entries of the stationarity violation:
//   |(T^-1 - S)_ij - lambda * sign(T_ij)|        where |T_ij| > threshold
//   max(0, |(T^-1 - S)_ij| - lambda)             elsewhere
double kkt_residual(const Matrix& theta, const Matrix& s, double lambda);

// -logdet(T) + trace(S T) + lambda * ||T||_1,offdiag. Requires T positive
// definite.
double glasso_objective(const Matrix& theta, const Matrix& s, double lambda);

// Grid value minimizing the chunk-averaged extended BIC
//   M * (trace(S T) - logdet T) + k log(M) + 4 gamma k log(D),
// k = number of off-diagonal upper-triangle edges of T. Ties go to the
// larger (sparser) value.
double select_lambda(std::span<const Matrix> chunk, Index samples_per_window,
                     std::span<const double> grid,
                     const SolverSettings& settings = {});

struct PrecisionBatch {
  std::vector<Matrix> matrices;
  std::vector<double> lambda_used;   // one value per chunk
  std::vector<int> iterations_used;  // per window
  std::vector<char> converged;       // per window
  int chunk_size = 0;

  Index batches() const { return static_cast<Index>(matrices.size()); }
  double lambda_for_window(Index b) const {
    return lambda_used[static_cast<std::size_t>(b / chunk_size)];
  }
};

// Solves every window of the batch, in chunks of settings.chunk_size that
// share one lambda (selected per chunk in Auto mode). Window solves within
// a chunk run in parallel; the output order always matches the input.
PrecisionBatch glasso_batch(const CorrelationBatch& correlations,
                            Index samples_per_window,
                            const SolverSettings& settings = {});

// rho_pq = -T_pq / sqrt(T_pp T_qq), zero diagonal, clamped to [-1, 1].
Matrix partial_correlation_graph(const Matrix& theta);

struct CIGraphSequence {
  std::vector<Matrix> graphs;  // B of D x D partial correlations

  Index batches() const { return static_cast<Index>(graphs.size()); }
};

CIGraphSequence partial_correlation_graphs(const PrecisionBatch& precisions);

} // namespace graphseg
