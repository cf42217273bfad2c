#pragma once

#include <string>
#include <vector>

#include "graphseg/types.hpp"

namespace graphseg {

// Units of the guard band zeroed around every surviving spike. Samples
// converts Z window-lengths into batch indices (radius ceil(Z*M/s));
// Batches applies Z*M directly as a batch-index radius.
enum class GuardUnits { Samples, Batches };

GuardUnits parse_guard_units(const std::string& name);
std::string to_string(GuardUnits units);

struct AllocationConfig {
  double threshold = 0.5;    // on the normalized second-order signal
  int guard_multiplier = 5;  // Z
  GuardUnits guard_units = GuardUnits::Samples;
  Index window = 0;  // M
  Index stride = 1;  // s
};

Index guard_radius_batches(const AllocationConfig& config);

// Entries strictly below threshold are zeroed; the rest pass through.
Vector denoise_threshold(Vector d2g_norm, double threshold);

// Labels start at 1 everywhere; every index with a positive thresholded
// value zeroes the inclusive band [i - r, i + r] around it.
std::vector<int> allocate_segments(const Vector& d2g_thresh,
                                   const AllocationConfig& config);

// Each sample takes the label of the batch whose window center
// (start + (window - 1) / 2) is nearest; ties go to the earlier batch, and
// samples outside the first/last center take the boundary batch's label.
std::vector<int> batch_labels_to_samples(const std::vector<int>& batch_labels,
                                         const std::vector<Index>& starts,
                                         Index window, Index total_samples);

struct SegmentLabels {
  std::vector<int> batch_labels;   // length B
  std::vector<int> sample_labels;  // length N
};

SegmentLabels label_segments(const Vector& d2g_norm,
                             const AllocationConfig& config,
                             const std::vector<Index>& starts,
                             Index total_samples);

} // namespace graphseg
