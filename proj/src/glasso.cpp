#include "graphseg/glasso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "graphseg/parallel.hpp"

namespace graphseg {

namespace {

void require_square_symmetric(const Matrix& s, const char* who) {
  if (s.rows() != s.cols()) {
    throw std::invalid_argument(std::string(who) + ": matrix must be square");
  }
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    throw std::invalid_argument(std::string(who) + ": matrix must be symmetric");
  }
}

// Off-diagonal soft-threshold; the diagonal is copied through.
Matrix soft_threshold_offdiag(const Matrix& t, double kappa) {
  const Index d = t.rows();
  Matrix z(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      if (i == j) {
        z(i, j) = t(i, j);
      } else {
        const double v = t(i, j);
        z(i, j) = std::copysign(std::max(std::abs(v) - kappa, 0.0), v);
      }
    }
  }
  return z;
}

double log_det_from_llt(const Eigen::LLT<Matrix>& llt) {
  return 2.0 * Matrix(llt.matrixL()).diagonal().array().log().sum();
}

} // namespace

double glasso_objective(const Matrix& theta, const Matrix& s, double lambda) {
  Eigen::LLT<Matrix> llt(theta);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("glasso_objective: theta is not positive definite");
  }
  double l1 = 0.0;
  const Index d = theta.rows();
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      if (i != j) l1 += std::abs(theta(i, j));
    }
  }
  return -log_det_from_llt(llt) + (s * theta).trace() + lambda * l1;
}

double kkt_residual(const Matrix& theta, const Matrix& s, double lambda) {
  require_square_symmetric(theta, "kkt_residual");
  Eigen::LLT<Matrix> llt(theta);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("kkt_residual: theta is singular or not positive definite");
  }
  const Index d = theta.rows();
  const Matrix residual = llt.solve(Matrix::Identity(d, d)) - s;
  double worst = 0.0;
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      if (i == j) continue;
      double v;
      if (std::abs(theta(i, j)) > kEdgeThreshold) {
        v = std::abs(residual(i, j) - lambda * (theta(i, j) > 0 ? 1.0 : -1.0));
      } else {
        v = std::max(0.0, std::abs(residual(i, j)) - lambda);
      }
      worst = std::max(worst, v);
    }
  }
  return worst;
}

GlassoSolution glasso_solve(const Matrix& s, double lambda,
                            const SolverSettings& settings) {
  require_square_symmetric(s, "glasso_solve");
  if (lambda < 0.0) {
    throw std::invalid_argument("glasso_solve: lambda must be nonnegative");
  }
  const Index d = s.rows();
  const double rho = settings.admm_penalty;
  const double kkt_target = 10.0 * settings.abs_tol;

  Matrix x = Matrix::Identity(d, d);
  Matrix z = Matrix::Identity(d, d);
  Matrix u = Matrix::Zero(d, d);

  Eigen::SelfAdjointEigenSolver<Matrix> eigen;
  GlassoSolution best;  // positive definite fallback if z never passes

  for (int iter = 1; iter <= settings.max_iterations; ++iter) {
    // x-update: eigendecompose rho (z - u) - s and lift the spectrum
    eigen.compute(((z - u) * rho - s).selfadjointView<Eigen::Lower>());
    Vector lifted = eigen.eigenvalues();
    for (Index i = 0; i < d; ++i) {
      lifted[i] = (lifted[i] + std::sqrt(lifted[i] * lifted[i] + 4.0 * rho)) / (2.0 * rho);
    }
    x = eigen.eigenvectors() * lifted.asDiagonal() * eigen.eigenvectors().transpose();
    x = ((x + x.transpose()) * 0.5).eval();

    const Matrix z_old = z;
    z = soft_threshold_offdiag(x + u, lambda / rho);
    u += x - z;

    const double primal = (x - z).norm();
    const double dual = rho * (z - z_old).norm();
    const double eps_primal = static_cast<double>(d) * settings.abs_tol +
                              settings.rel_tol * std::max(x.norm(), z.norm());
    const double eps_dual = static_cast<double>(d) * settings.abs_tol +
                            settings.rel_tol * rho * u.norm();

    if (primal <= eps_primal && dual <= eps_dual) {
      Eigen::LLT<Matrix> llt(z);
      if (llt.info() == Eigen::Success && kkt_residual(z, s, lambda) <= kkt_target) {
        return {z, iter, true};
      }
    }
  }

  // tolerance not reached; return the sparse iterate if it is positive
  // definite, otherwise the always-definite eigenstep iterate
  Eigen::LLT<Matrix> llt(z);
  if (llt.info() == Eigen::Success) {
    return {z, settings.max_iterations, false};
  }
  return {x, settings.max_iterations, false};
}

namespace {

// Unpenalized Gaussian MLE restricted to a sparsity pattern: the same ADMM
// loop with the soft-threshold replaced by projection onto the support.
// This is the fit the extended BIC scores, so candidate penalties are
// judged by the supports they recover, not by their shrinkage.
Matrix support_mle(const Matrix& s, const Matrix& pattern,
                   const SolverSettings& settings) {
  const Index d = s.rows();
  const double rho = settings.admm_penalty;
  Matrix x = Matrix::Identity(d, d);
  Matrix z = Matrix::Identity(d, d);
  Matrix u = Matrix::Zero(d, d);
  Eigen::SelfAdjointEigenSolver<Matrix> eigen;

  for (int iter = 1; iter <= settings.max_iterations; ++iter) {
    eigen.compute(((z - u) * rho - s).selfadjointView<Eigen::Lower>());
    Vector lifted = eigen.eigenvalues();
    for (Index i = 0; i < d; ++i) {
      lifted[i] = (lifted[i] + std::sqrt(lifted[i] * lifted[i] + 4.0 * rho)) / (2.0 * rho);
    }
    x = eigen.eigenvectors() * lifted.asDiagonal() * eigen.eigenvectors().transpose();
    x = ((x + x.transpose()) * 0.5).eval();

    const Matrix z_old = z;
    z = (x + u).cwiseProduct(pattern);
    u += x - z;

    const double primal = (x - z).norm();
    const double dual = rho * (z - z_old).norm();
    const double eps = static_cast<double>(d) * settings.abs_tol +
                       settings.rel_tol * std::max(x.norm(), z.norm());
    if (primal <= eps && dual <= eps) {
      Eigen::LLT<Matrix> llt(z);
      if (llt.info() == Eigen::Success) return z;
    }
  }
  Eigen::LLT<Matrix> llt(z);
  return llt.info() == Eigen::Success ? z : x;
}

} // namespace

double select_lambda(std::span<const Matrix> chunk, Index samples_per_window,
                     std::span<const double> grid,
                     const SolverSettings& settings) {
  if (chunk.empty()) {
    throw std::invalid_argument("select_lambda: empty chunk");
  }
  if (grid.empty()) {
    throw std::invalid_argument("select_lambda: empty grid");
  }
  const double m = static_cast<double>(samples_per_window);
  double best_score = std::numeric_limits<double>::infinity();
  double best_lambda = grid[0];

  std::vector<double> grid_sorted(grid.begin(), grid.end());
  std::sort(grid_sorted.begin(), grid_sorted.end());

  std::vector<double> scores(chunk.size());
  for (const double lambda : grid_sorted) {
    if (lambda <= 0.0) {
      throw std::invalid_argument("select_lambda: grid values must be positive");
    }
    parallel_for(chunk.size(), settings.threads, [&](std::size_t b) {
      const GlassoSolution sol = glasso_solve(chunk[b], lambda, settings);
      const Index d = sol.theta.rows();
      Matrix pattern = Matrix::Identity(d, d);
      Index edges = 0;
      for (Index i = 0; i < d; ++i) {
        for (Index j = i + 1; j < d; ++j) {
          if (std::abs(sol.theta(i, j)) > kEdgeThreshold) {
            pattern(i, j) = 1.0;
            pattern(j, i) = 1.0;
            ++edges;
          }
        }
      }
      const Matrix refit = support_mle(chunk[b], pattern, settings);
      Eigen::LLT<Matrix> llt(refit);
      const double loglik =
          0.5 * (log_det_from_llt(llt) - (chunk[b] * refit).trace());
      const double k = static_cast<double>(edges);
      const double dims = static_cast<double>(d);
      scores[b] = -2.0 * m * loglik + k * std::log(m) +
                  4.0 * settings.ebic_gamma * k * std::log(dims);
    });
    double total = 0.0;
    for (const double v : scores) total += v;
    const double score = total / static_cast<double>(chunk.size());
    if (score <= best_score) {  // ties go to the larger lambda
      best_score = score;
      best_lambda = lambda;
    }
  }
  return best_lambda;
}

PrecisionBatch glasso_batch(const CorrelationBatch& correlations,
                            Index samples_per_window,
                            const SolverSettings& settings) {
  if (settings.chunk_size < 1) {
    throw std::invalid_argument("glasso_batch: chunk_size must be positive");
  }
  const std::size_t total = correlations.matrices.size();
  PrecisionBatch out;
  out.chunk_size = settings.chunk_size;
  out.matrices.resize(total);
  out.iterations_used.resize(total);
  out.converged.resize(total);

  const std::size_t chunk_size = static_cast<std::size_t>(settings.chunk_size);
  for (std::size_t begin = 0; begin < total; begin += chunk_size) {
    const std::size_t end = std::min(total, begin + chunk_size);
    const std::span<const Matrix> chunk(correlations.matrices.data() + begin,
                                        end - begin);
    double lambda = settings.lambda;
    if (settings.lambda_mode == LambdaMode::Auto) {
      try {
        lambda = select_lambda(chunk, samples_per_window, settings.lambda_grid,
                               settings);
      } catch (const std::exception& e) {
        throw std::runtime_error("windows [" + std::to_string(begin) + ", " +
                                 std::to_string(end) + "): " + e.what());
      }
    }
    out.lambda_used.push_back(lambda);

    parallel_for(end - begin, settings.threads, [&](std::size_t offset) {
      const std::size_t b = begin + offset;
      try {
        GlassoSolution sol = glasso_solve(correlations.matrices[b], lambda, settings);
        out.matrices[b] = std::move(sol.theta);
        out.iterations_used[b] = sol.iterations;
        out.converged[b] = sol.converged ? 1 : 0;
      } catch (const std::exception& e) {
        throw std::runtime_error("window " + std::to_string(b) + ": " + e.what());
      }
    });
  }
  return out;
}

Matrix partial_correlation_graph(const Matrix& theta) {
  require_square_symmetric(theta, "partial_correlation_graph");
  const Index d = theta.rows();
  for (Index i = 0; i < d; ++i) {
    if (!(theta(i, i) > 0.0)) {
      throw std::invalid_argument(
          "partial_correlation_graph: diagonal entry " + std::to_string(i) +
          " is not positive");
    }
  }
  Matrix graph = Matrix::Zero(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = i + 1; j < d; ++j) {
      const double rho =
          -theta(i, j) / std::sqrt(theta(i, i) * theta(j, j));
      const double clamped = std::clamp(rho, -1.0, 1.0);
      graph(i, j) = clamped;
      graph(j, i) = clamped;
    }
  }
  return graph;
}

CIGraphSequence partial_correlation_graphs(const PrecisionBatch& precisions) {
  CIGraphSequence out;
  out.graphs.reserve(precisions.matrices.size());
  for (const Matrix& theta : precisions.matrices) {
    out.graphs.push_back(partial_correlation_graph(theta));
  }
  return out;
}

} // namespace graphseg
