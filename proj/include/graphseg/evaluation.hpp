#pragma once

#include <cstddef>
#include <span>

namespace graphseg {

// Fraction of positions where the two label sequences agree.
double accuracy(std::span<const int> predicted, std::span<const int> truth);

struct EvalReport {
  double accuracy = 0.0;
  std::size_t batches_total = 0;
  std::size_t batches_matching = 0;
};

EvalReport evaluate_batch_labels(std::span<const int> predicted,
                                 std::span<const int> truth);

} // namespace graphseg
