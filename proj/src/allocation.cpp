#include "graphseg/allocation.hpp"

#include <cmath>
#include <stdexcept>

namespace graphseg {

GuardUnits parse_guard_units(const std::string& name) {
  if (name == "samples") return GuardUnits::Samples;
  if (name == "batches") return GuardUnits::Batches;
  throw std::invalid_argument("unknown guard units '" + name +
                              "' (expected samples or batches)");
}

std::string to_string(GuardUnits units) {
  return units == GuardUnits::Samples ? "samples" : "batches";
}

Index guard_radius_batches(const AllocationConfig& config) {
  if (config.guard_multiplier < 1) {
    throw std::invalid_argument("guard multiplier Z must be at least 1");
  }
  if (config.window < 1 || config.stride < 1) {
    throw std::invalid_argument("guard radius needs positive window and stride");
  }
  const Index zm = static_cast<Index>(config.guard_multiplier) * config.window;
  if (config.guard_units == GuardUnits::Batches) return zm;
  return (zm + config.stride - 1) / config.stride;  // ceil(Z * M / s)
}

Vector denoise_threshold(Vector d2g_norm, double threshold) {
  if (threshold < 0.0) {
    throw std::invalid_argument("denoise_threshold: threshold must be nonnegative");
  }
  for (Index i = 0; i < d2g_norm.size(); ++i) {
    if (d2g_norm[i] < threshold) d2g_norm[i] = 0.0;
  }
  return d2g_norm;
}

std::vector<int> allocate_segments(const Vector& d2g_thresh,
                                   const AllocationConfig& config) {
  const Index b = d2g_thresh.size();
  if (b < 1) {
    throw std::invalid_argument("allocate_segments: empty signal");
  }
  const Index radius = guard_radius_batches(config);

  // difference array over the union of zero bands
  std::vector<Index> cover(static_cast<std::size_t>(b) + 1, 0);
  for (Index i = 0; i < b; ++i) {
    if (d2g_thresh[i] > 0.0) {
      const Index lo = std::max<Index>(0, i - radius);
      const Index hi = std::min<Index>(b - 1, i + radius);
      ++cover[static_cast<std::size_t>(lo)];
      --cover[static_cast<std::size_t>(hi) + 1];
    }
  }
  std::vector<int> labels(static_cast<std::size_t>(b), 1);
  Index depth = 0;
  for (Index i = 0; i < b; ++i) {
    depth += cover[static_cast<std::size_t>(i)];
    if (depth > 0) labels[static_cast<std::size_t>(i)] = 0;
  }
  return labels;
}

std::vector<int> batch_labels_to_samples(const std::vector<int>& batch_labels,
                                         const std::vector<Index>& starts,
                                         Index window, Index total_samples) {
  if (batch_labels.size() != starts.size() || batch_labels.empty()) {
    throw std::invalid_argument("batch_labels_to_samples: labels and starts must be "
                                "nonempty and the same length");
  }
  if (window < 1 || total_samples < 1) {
    throw std::invalid_argument("batch_labels_to_samples: bad geometry");
  }
  const std::size_t b = starts.size();
  for (std::size_t i = 0; i + 1 < b; ++i) {
    if (starts[i + 1] < starts[i]) {
      throw std::invalid_argument("batch_labels_to_samples: starts must be ascending");
    }
  }
  if (starts.back() + window > total_samples) {
    throw std::invalid_argument("batch_labels_to_samples: last window exceeds the series");
  }

  const auto center = [&](std::size_t i) {
    return static_cast<double>(starts[i]) + static_cast<double>(window - 1) / 2.0;
  };

  std::vector<int> out(static_cast<std::size_t>(total_samples));
  std::size_t nearest = 0;
  for (Index t = 0; t < total_samples; ++t) {
    const double sample = static_cast<double>(t);
    while (nearest + 1 < b &&
           center(nearest + 1) - sample < sample - center(nearest)) {
      ++nearest;
    }
    out[static_cast<std::size_t>(t)] = batch_labels[nearest];
  }
  return out;
}

SegmentLabels label_segments(const Vector& d2g_norm,
                             const AllocationConfig& config,
                             const std::vector<Index>& starts,
                             Index total_samples) {
  SegmentLabels labels;
  labels.batch_labels =
      allocate_segments(denoise_threshold(d2g_norm, config.threshold), config);
  labels.sample_labels = batch_labels_to_samples(labels.batch_labels, starts,
                                                 config.window, total_samples);
  return labels;
}

} // namespace graphseg
