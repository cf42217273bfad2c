#include "graphseg/io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace graphseg {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write '" + path.string() + "'");
  }
  return out;
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace

std::string format_double(double value) {
  char buffer[32];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) {
    throw std::runtime_error("format_double: value does not fit");
  }
  return std::string(buffer, ptr);
}

void write_graphs_json(const std::filesystem::path& path,
                       const CIGraphSequence& graphs,
                       const PrecisionBatch& precisions,
                       const WindowBatch& windows) {
  nlohmann::json doc;
  doc["schema_version"] = 1;
  doc["window"] = windows.window;
  doc["stride"] = windows.stride;
  nlohmann::json entries = nlohmann::json::array();
  for (Index b = 0; b < graphs.batches(); ++b) {
    nlohmann::json entry;
    entry["window_start"] = windows.starts[static_cast<std::size_t>(b)];
    entry["lambda"] = precisions.lambda_for_window(b);
    entry["partial_correlations"] =
        matrix_to_json(graphs.graphs[static_cast<std::size_t>(b)]);
    entries.push_back(std::move(entry));
  }
  doc["graphs"] = std::move(entries);
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
}

void write_trajectory_csv(const std::filesystem::path& path,
                          const TrajectorySignal& signal,
                          const WindowBatch& windows) {
  auto out = open_out(path);
  out << "batch_index,window_start,dG,d2G,d2G_norm\n";
  const Index b = windows.batches();
  for (Index i = 0; i < b; ++i) {
    out << i << ',' << windows.starts[static_cast<std::size_t>(i)] << ',';
    if (i < signal.dg.size()) out << format_double(signal.dg[i]);
    out << ',' << format_double(signal.d2g[i]) << ','
        << format_double(signal.d2g_norm[i]) << '\n';
  }
}

void write_sample_labels_csv(const std::filesystem::path& path,
                             std::span<const int> labels) {
  auto out = open_out(path);
  out << "sample_index,label\n";
  for (std::size_t t = 0; t < labels.size(); ++t) {
    out << t << ',' << labels[t] << '\n';
  }
}

void write_batch_labels_csv(const std::filesystem::path& path,
                            std::span<const int> labels,
                            const WindowBatch& windows) {
  auto out = open_out(path);
  out << "batch_index,window_start,label\n";
  for (std::size_t b = 0; b < labels.size(); ++b) {
    out << b << ',' << windows.starts[b] << ',' << labels[b] << '\n';
  }
}

void write_summary_json(const std::filesystem::path& path,
                        const nlohmann::json& summary) {
  auto out = open_out(path);
  out << summary.dump(2) << '\n';
}

void write_series_csv(const std::filesystem::path& path,
                      const MultivariateSeries& series) {
  auto out = open_out(path);
  for (std::size_t c = 0; c < series.names.size(); ++c) {
    if (c > 0) out << ',';
    out << series.names[c];
  }
  out << '\n';
  for (Index r = 0; r < series.samples(); ++r) {
    for (Index c = 0; c < series.variables(); ++c) {
      if (c > 0) out << ',';
      out << format_double(series.values(r, c));
    }
    out << '\n';
  }
}

void write_truth_csv(const std::filesystem::path& path,
                     const LabelSeries& truth) {
  write_sample_labels_csv(path, truth.labels);
}

void write_precisions_json(const std::filesystem::path& path,
                           const std::vector<Matrix>& precisions) {
  nlohmann::json doc;
  doc["schema_version"] = 1;
  nlohmann::json entries = nlohmann::json::array();
  for (const Matrix& theta : precisions) entries.push_back(matrix_to_json(theta));
  doc["precisions"] = std::move(entries);
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
}

std::vector<int> read_labels_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open labels file '" + path.string() + "'");
  }
  std::vector<int> labels;
  std::string line;
  bool header = true;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    const auto comma = line.rfind(',');
    if (comma == std::string::npos) {
      throw std::runtime_error("labels file '" + path.string() + "': bad row at line " +
                               std::to_string(line_number));
    }
    int value = 0;
    const char* begin = line.data() + comma + 1;
    const char* end = line.data() + line.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || (value != 0 && value != 1)) {
      throw std::runtime_error("labels file '" + path.string() +
                               "': label must be 0 or 1 at line " +
                               std::to_string(line_number));
    }
    labels.push_back(value);
  }
  if (labels.empty()) {
    throw std::runtime_error("labels file '" + path.string() + "' has no rows");
  }
  return labels;
}

} // namespace graphseg
