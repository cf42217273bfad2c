#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "graphseg/glasso.hpp"
#include "graphseg/ingest.hpp"
#include "graphseg/trajectory.hpp"
#include "graphseg/types.hpp"
#include "graphseg/windowing.hpp"

namespace graphseg {

// Shortest decimal string that round-trips the exact double, so repeated
// runs produce byte-identical files.
std::string format_double(double value);

void write_graphs_json(const std::filesystem::path& path,
                       const CIGraphSequence& graphs,
                       const PrecisionBatch& precisions,
                       const WindowBatch& windows);

// Columns batch_index, window_start, dG, d2G, d2G_norm. dG pairs window b
// with b + 1, so the last row's dG cell is empty.
void write_trajectory_csv(const std::filesystem::path& path,
                          const TrajectorySignal& signal,
                          const WindowBatch& windows);

void write_sample_labels_csv(const std::filesystem::path& path,
                             std::span<const int> labels);

void write_batch_labels_csv(const std::filesystem::path& path,
                            std::span<const int> labels,
                            const WindowBatch& windows);

void write_summary_json(const std::filesystem::path& path,
                        const nlohmann::json& summary);

// Series as generic CSV (header row of variable names).
void write_series_csv(const std::filesystem::path& path,
                      const MultivariateSeries& series);

void write_truth_csv(const std::filesystem::path& path,
                     const LabelSeries& truth);

void write_precisions_json(const std::filesystem::path& path,
                           const std::vector<Matrix>& precisions);

// Reads a labels CSV written by the functions above (index,label rows).
std::vector<int> read_labels_csv(const std::filesystem::path& path);

} // namespace graphseg
