#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graphseg/types.hpp"

namespace graphseg {

enum class FileFormat { GenericCsv, Pamap2 };

FileFormat parse_file_format(const std::string& name);
std::string to_string(FileFormat format);

// A length-N multivariate series. Missing entries are stored as NaN until
// forward_fill replaces them.
struct MultivariateSeries {
  Matrix values;                    // N x D, row = time step
  std::vector<double> timestamps;   // seconds; empty or length N
  std::vector<std::string> names;   // length D

  Index samples() const { return values.rows(); }
  Index variables() const { return values.cols(); }
};

// Per-sample {0,1} ground truth: 1 while an activity is in progress.
struct LabelSeries {
  std::vector<int> labels;
};

// Loads the selected 0-based columns of a delimited file, in the given
// order. GenericCsv is comma separated with one header row; Pamap2 is
// whitespace separated with no header ("NaN" marks missing values, column
// 0 is the timestamp, column 1 the activity id). Cells that do not parse
// as finite numbers become missing entries. If label_column is given, the
// returned labels are 1 where that cell is a finite nonzero number.
std::pair<MultivariateSeries, std::optional<LabelSeries>> load_delimited(
    const std::filesystem::path& path, FileFormat format,
    const std::vector<Index>& columns,
    std::optional<Index> label_column = std::nullopt);

// Replaces every missing entry by the most recent observed value in its
// column; leading gaps take the first observed value. A column with no
// observed value at all is an error.
MultivariateSeries forward_fill(MultivariateSeries series);

// Per-batch truth: batch b gets the truth label of its window's center
// sample, starts[b] + floor(window / 2).
std::vector<int> make_ground_truth_batch_labels(
    const LabelSeries& truth, const std::vector<Index>& window_starts,
    Index window);

} // namespace graphseg
