#include "graphseg/evaluation.hpp"

#include <stdexcept>
#include <string>

namespace graphseg {

double accuracy(std::span<const int> predicted, std::span<const int> truth) {
  return evaluate_batch_labels(predicted, truth).accuracy;
}

EvalReport evaluate_batch_labels(std::span<const int> predicted,
                                 std::span<const int> truth) {
  if (predicted.size() != truth.size()) {
    throw std::invalid_argument("accuracy: length mismatch (" +
                                std::to_string(predicted.size()) + " vs " +
                                std::to_string(truth.size()) + ")");
  }
  if (predicted.empty()) {
    throw std::invalid_argument("accuracy: empty label sequences");
  }
  EvalReport report;
  report.batches_total = predicted.size();
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (predicted[i] == truth[i]) ++report.batches_matching;
  }
  report.accuracy = static_cast<double>(report.batches_matching) /
                    static_cast<double>(report.batches_total);
  return report;
}

} // namespace graphseg
