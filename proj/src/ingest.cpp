#include "graphseg/ingest.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace graphseg {

namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

// Finite value on success, NaN for anything that does not parse cleanly
// (covers PAMAP2's literal "NaN" tokens and garbage cells alike).
double parse_cell(std::string_view cell) {
  cell = trim(cell);
  if (cell.empty()) return kMissing;
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) return kMissing;
  return std::isfinite(value) ? value : kMissing;
}

void split_comma(const std::string& line, std::vector<std::string_view>& out) {
  out.clear();
  std::string_view rest = line;
  while (true) {
    const auto pos = rest.find(',');
    if (pos == std::string_view::npos) {
      out.push_back(rest);
      return;
    }
    out.push_back(rest.substr(0, pos));
    rest.remove_prefix(pos + 1);
  }
}

void split_whitespace(const std::string& line, std::vector<std::string_view>& out) {
  out.clear();
  std::string_view rest = line;
  std::size_t i = 0;
  while (i < rest.size()) {
    while (i < rest.size() && (rest[i] == ' ' || rest[i] == '\t' || rest[i] == '\r')) ++i;
    const std::size_t begin = i;
    while (i < rest.size() && rest[i] != ' ' && rest[i] != '\t' && rest[i] != '\r') ++i;
    if (i > begin) out.push_back(rest.substr(begin, i - begin));
  }
}

bool blank(const std::string& line) {
  return trim(line).empty();
}

} // namespace

FileFormat parse_file_format(const std::string& name) {
  if (name == "generic-csv") return FileFormat::GenericCsv;
  if (name == "pamap2") return FileFormat::Pamap2;
  throw std::invalid_argument("unknown file format '" + name +
                              "' (expected generic-csv or pamap2)");
}

std::string to_string(FileFormat format) {
  return format == FileFormat::GenericCsv ? "generic-csv" : "pamap2";
}

std::pair<MultivariateSeries, std::optional<LabelSeries>> load_delimited(
    const std::filesystem::path& path, FileFormat format,
    const std::vector<Index>& columns, std::optional<Index> label_column) {
  if (columns.size() < 2) {
    throw std::invalid_argument("load_delimited: at least 2 columns must be selected");
  }
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("load_delimited: cannot open '" + path.string() + "'");
  }

  const bool csv = format == FileFormat::GenericCsv;
  std::string line;
  std::vector<std::string_view> fields;
  std::size_t line_number = 0;
  Index width = -1;

  MultivariateSeries series;
  series.names.reserve(columns.size());

  if (csv) {
    // header row fixes the width and provides variable names
    do {
      if (!std::getline(in, line)) {
        throw std::runtime_error("load_delimited: '" + path.string() + "' has no header row");
      }
      ++line_number;
    } while (blank(line));
    split_comma(line, fields);
    width = static_cast<Index>(fields.size());
    for (const Index c : columns) {
      if (c < 0 || c >= width) {
        throw std::invalid_argument("load_delimited: column " + std::to_string(c) +
                                    " out of range (file has " + std::to_string(width) +
                                    " columns)");
      }
      series.names.emplace_back(trim(fields[static_cast<std::size_t>(c)]));
    }
  }

  std::vector<double> data;     // row-major staging
  std::vector<double> stamps;
  std::vector<int> labels;
  const std::size_t d = columns.size();

  while (std::getline(in, line)) {
    ++line_number;
    if (blank(line)) continue;
    if (csv) {
      split_comma(line, fields);
    } else {
      split_whitespace(line, fields);
    }
    if (width < 0) {
      width = static_cast<Index>(fields.size());
      for (const Index c : columns) {
        if (c < 0 || c >= width) {
          throw std::invalid_argument("load_delimited: column " + std::to_string(c) +
                                      " out of range (file has " + std::to_string(width) +
                                      " columns)");
        }
        series.names.emplace_back("c" + std::to_string(c));
      }
    }
    if (static_cast<Index>(fields.size()) != width) {
      throw std::runtime_error("load_delimited: ragged row at line " +
                               std::to_string(line_number) + " of '" + path.string() +
                               "' (" + std::to_string(fields.size()) + " fields, expected " +
                               std::to_string(width) + ")");
    }
    for (const Index c : columns) {
      data.push_back(parse_cell(fields[static_cast<std::size_t>(c)]));
    }
    if (!csv) {
      stamps.push_back(parse_cell(fields[0]));
    }
    if (label_column) {
      if (*label_column < 0 || *label_column >= width) {
        throw std::invalid_argument("load_delimited: label column " +
                                    std::to_string(*label_column) + " out of range");
      }
      const double v = parse_cell(fields[static_cast<std::size_t>(*label_column)]);
      labels.push_back(std::isfinite(v) && v != 0.0 ? 1 : 0);
    }
  }

  const Index n = static_cast<Index>(data.size() / d);
  if (n == 0) {
    throw std::runtime_error("load_delimited: '" + path.string() + "' has no data rows");
  }
  series.values.resize(n, static_cast<Index>(d));
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < static_cast<Index>(d); ++c) {
      series.values(r, c) = data[static_cast<std::size_t>(r * static_cast<Index>(d) + c)];
    }
  }
  if (!csv) series.timestamps = std::move(stamps);

  std::optional<LabelSeries> truth;
  if (label_column) truth = LabelSeries{std::move(labels)};
  return {std::move(series), std::move(truth)};
}

MultivariateSeries forward_fill(MultivariateSeries series) {
  const Index n = series.samples();
  const Index d = series.variables();
  for (Index c = 0; c < d; ++c) {
    Index first = -1;
    for (Index r = 0; r < n; ++r) {
      if (!std::isnan(series.values(r, c))) {
        first = r;
        break;
      }
    }
    if (first < 0) {
      const std::string name = c < static_cast<Index>(series.names.size())
                                   ? series.names[static_cast<std::size_t>(c)]
                                   : std::to_string(c);
      throw std::runtime_error("forward_fill: column '" + name +
                               "' has no observed values");
    }
    double last = series.values(first, c);
    for (Index r = 0; r < first; ++r) series.values(r, c) = last;  // head backfill
    for (Index r = first; r < n; ++r) {
      if (std::isnan(series.values(r, c))) {
        series.values(r, c) = last;
      } else {
        last = series.values(r, c);
      }
    }
  }
  return series;
}

std::vector<int> make_ground_truth_batch_labels(
    const LabelSeries& truth, const std::vector<Index>& window_starts,
    Index window) {
  const Index n = static_cast<Index>(truth.labels.size());
  std::vector<int> out;
  out.reserve(window_starts.size());
  for (const Index start : window_starts) {
    if (start < 0 || start + window > n) {
      throw std::out_of_range("make_ground_truth_batch_labels: window [" +
                              std::to_string(start) + ", " +
                              std::to_string(start + window) +
                              ") outside series of length " + std::to_string(n));
    }
    out.push_back(truth.labels[static_cast<std::size_t>(start + window / 2)]);
  }
  return out;
}

} // namespace graphseg
