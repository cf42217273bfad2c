#include "graphseg/synthetic.hpp"

#include <stdexcept>
#include <string>

#include "graphseg/rng.hpp"

namespace graphseg {

Matrix random_sparse_precision(std::uint64_t seed, int variables,
                               double density, double weight_min,
                               double weight_max) {
  if (variables < 2) {
    throw std::invalid_argument("random_sparse_precision: need at least 2 variables");
  }
  if (!(density > 0.0 && density < 1.0)) {
    throw std::invalid_argument("random_sparse_precision: density must lie in (0, 1)");
  }
  if (!(weight_min > 0.0 && weight_min <= weight_max)) {
    throw std::invalid_argument("random_sparse_precision: need 0 < weight_min <= weight_max");
  }
  Rng rng(seed);
  const Index d = variables;
  Matrix theta = Matrix::Zero(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = i + 1; j < d; ++j) {
      if (!rng.bernoulli(density)) continue;
      const double magnitude = rng.uniform(weight_min, weight_max);
      const double w = rng.bernoulli(0.5) ? magnitude : -magnitude;
      theta(i, j) = w;
      theta(j, i) = w;
    }
  }
  for (Index i = 0; i < d; ++i) {
    theta(i, i) = 1.0 + theta.row(i).cwiseAbs().sum();
  }
  return theta;
}

SyntheticData generate_from_precisions(std::uint64_t seed,
                                       const std::vector<Matrix>& precisions,
                                       const std::vector<Index>& lengths,
                                       Index truth_guard_radius) {
  if (precisions.empty() || precisions.size() != lengths.size()) {
    throw std::invalid_argument("generate_from_precisions: need one precision per segment");
  }
  const Index d = precisions.front().rows();
  Index total = 0;
  for (const Index len : lengths) {
    if (len < 1) {
      throw std::invalid_argument("generate_from_precisions: segment lengths must be positive");
    }
    total += len;
  }

  SyntheticData data;
  data.precisions = precisions;
  data.series.values.resize(total, d);
  data.series.names.reserve(static_cast<std::size_t>(d));
  for (Index c = 0; c < d; ++c) {
    data.series.names.push_back("v" + std::to_string(c));
  }
  data.truth.labels.assign(static_cast<std::size_t>(total), 1);

  Rng rng(seed);
  Vector z(d);
  Index row = 0;
  for (std::size_t k = 0; k < precisions.size(); ++k) {
    const Matrix& theta = precisions[k];
    if (theta.rows() != d || theta.cols() != d) {
      throw std::invalid_argument("generate_from_precisions: precision shapes differ");
    }
    Matrix covariance = theta.llt().solve(Matrix::Identity(d, d));
    covariance = ((covariance + covariance.transpose()) * 0.5).eval();
    Eigen::LLT<Matrix> llt(covariance);
    if (llt.info() != Eigen::Success) {
      throw std::invalid_argument("generate_from_precisions: precision " +
                                  std::to_string(k) + " is not positive definite");
    }
    const Matrix factor = llt.matrixL();
    for (Index t = 0; t < lengths[k]; ++t, ++row) {
      for (Index c = 0; c < d; ++c) z[c] = rng.normal();
      data.series.values.row(row) = (factor * z).transpose();
    }
  }

  // truth zeros mirror the allocation guard: every sample within the
  // radius of an internal boundary
  Index boundary = 0;
  for (std::size_t k = 0; k + 1 < lengths.size(); ++k) {
    boundary += lengths[k];
    const Index lo = std::max<Index>(0, boundary - truth_guard_radius);
    const Index hi = std::min<Index>(total - 1, boundary + truth_guard_radius);
    for (Index t = lo; t <= hi; ++t) {
      data.truth.labels[static_cast<std::size_t>(t)] = 0;
    }
  }
  return data;
}

namespace {

// Precision matrix with a unit diagonal and prescribed partial
// correlations: theta_ij = -rho_ij, so the CI-graph edge weights equal the
// drawn values exactly. Draws are rejected until the matrix is positive
// definite with some margin.
Matrix ci_weight_precision(Rng& rng, int variables, double density,
                           double weight_min, double weight_max) {
  const Index d = variables;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Matrix theta = Matrix::Identity(d, d);
    for (Index i = 0; i < d; ++i) {
      for (Index j = i + 1; j < d; ++j) {
        if (!rng.bernoulli(density)) continue;
        const double magnitude = rng.uniform(weight_min, weight_max);
        const double rho = rng.bernoulli(0.5) ? magnitude : -magnitude;
        theta(i, j) = -rho;
        theta(j, i) = -rho;
      }
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eigen(theta);
    if (eigen.eigenvalues().minCoeff() >= 0.05) return theta;
  }
  throw std::runtime_error(
      "generate_piecewise_gaussian: could not draw a positive definite "
      "precision matrix; lower the density or the edge weights");
}

Matrix ci_graph(const Matrix& theta) {
  const Index d = theta.rows();
  Matrix graph = Matrix::Zero(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      if (i != j) graph(i, j) = -theta(i, j) / std::sqrt(theta(i, i) * theta(j, j));
    }
  }
  return graph;
}

} // namespace

SyntheticData generate_piecewise_gaussian(const SyntheticSpec& spec) {
  if (spec.segments.empty()) {
    throw std::invalid_argument("generate_piecewise_gaussian: no segments given");
  }
  constexpr int kMaxCandidates = 256;
  Rng rng(spec.seed);
  std::vector<Matrix> precisions;
  std::vector<Index> lengths;
  precisions.reserve(spec.segments.size());
  lengths.reserve(spec.segments.size());
  for (const SegmentSpec& segment : spec.segments) {
    lengths.push_back(segment.length);
    if (precisions.empty()) {
      precisions.push_back(ci_weight_precision(rng, spec.variables,
                                               segment.edge_density,
                                               spec.weight_min, spec.weight_max));
      continue;
    }
    // redraw until the new graph is separated from the previous segment's;
    // after kMaxCandidates the best-separated candidate is taken
    const Matrix previous = ci_graph(precisions.back());
    Matrix best;
    double best_score = -1.0;
    for (int t = 0; t < kMaxCandidates; ++t) {
      Matrix candidate = ci_weight_precision(rng, spec.variables,
                                             segment.edge_density,
                                             spec.weight_min, spec.weight_max);
      const Matrix gap = previous - ci_graph(candidate);
      const double l1 = gap.cwiseAbs().sum();
      const double signed_gap = std::abs(gap.sum());
      const double score =
          std::min(spec.min_l1_gap > 0.0 ? l1 / spec.min_l1_gap : 1.0,
                   spec.min_signed_gap > 0.0 ? signed_gap / spec.min_signed_gap : 1.0);
      if (score > best_score) {
        best_score = score;
        best = std::move(candidate);
      }
      if (score >= 1.0) break;
    }
    precisions.push_back(std::move(best));
  }
  return generate_from_precisions(rng.next_u64(), precisions, lengths,
                                  spec.truth_guard_radius);
}

} // namespace graphseg
