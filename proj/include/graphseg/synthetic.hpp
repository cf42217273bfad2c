#pragma once

#include <cstdint>
#include <vector>

#include "graphseg/ingest.hpp"
#include "graphseg/types.hpp"

namespace graphseg {

struct SegmentSpec {
  Index length = 0;
  double edge_density = 0.4;  // in (0, 1)
};

// Piecewise-stationary Gaussian series: each segment draws i.i.d. samples
// from a zero-mean Gaussian with its own sparse precision matrix. Edge
// weights are the CI-graph weights, i.e. partial correlations: a segment's
// precision matrix has a unit diagonal and -rho off the diagonal, with
// each edge present with the segment's density and |rho| uniform in
// [weight_min, weight_max] (random sign). Consecutive segments are
// redrawn until their CI graphs are at least min_l1_gap / min_signed_gap
// apart, so every internal boundary is a genuine distribution change and
// not a sampling accident. The truth labels are 1 except within
// truth_guard_radius samples of an internal boundary, matching the band
// the allocation step zeroes around a detected boundary.
struct SyntheticSpec {
  std::uint64_t seed = 1;
  int variables = 5;
  std::vector<SegmentSpec> segments;
  double weight_min = 0.2;  // partial-correlation magnitudes
  double weight_max = 0.5;
  Index truth_guard_radius = 0;  // samples on each side of a boundary
  double min_l1_gap = 2.0;     // separation floors between consecutive
  double min_signed_gap = 0.5; // segment graphs; 0 disables
};

// Symmetric D x D matrix: each upper-triangle entry is nonzero with
// probability density, drawn uniformly from +-[weight_min, weight_max];
// the diagonal is 1 + the row's absolute off-diagonal sum, which makes the
// matrix strictly diagonally dominant and hence positive definite.
Matrix random_sparse_precision(std::uint64_t seed, int variables,
                               double density, double weight_min,
                               double weight_max);

struct SyntheticData {
  MultivariateSeries series;
  LabelSeries truth;
  std::vector<Matrix> precisions;  // one per segment
};

// Samples segment k from N(0, inverse(precisions[k])) via the Cholesky
// factor of the covariance; all randomness comes from Rng(seed).
SyntheticData generate_from_precisions(std::uint64_t seed,
                                       const std::vector<Matrix>& precisions,
                                       const std::vector<Index>& lengths,
                                       Index truth_guard_radius);

SyntheticData generate_piecewise_gaussian(const SyntheticSpec& spec);

} // namespace graphseg
