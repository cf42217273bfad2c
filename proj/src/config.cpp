#include "graphseg/config.hpp"

#include <fstream>
#include <stdexcept>

namespace graphseg {

namespace {

using nlohmann::json;

[[noreturn]] void bad_key(const std::string& key, const char* expected) {
  throw std::invalid_argument("config key '" + key + "' must be " + expected);
}

double as_number(const json& v, const std::string& key) {
  if (!v.is_number()) bad_key(key, "a number");
  return v.get<double>();
}

Index as_index(const json& v, const std::string& key) {
  if (!v.is_number_integer()) bad_key(key, "an integer");
  return v.get<Index>();
}

int as_int(const json& v, const std::string& key) {
  if (!v.is_number_integer()) bad_key(key, "an integer");
  return v.get<int>();
}

std::string as_string(const json& v, const std::string& key) {
  if (!v.is_string()) bad_key(key, "a string");
  return v.get<std::string>();
}

} // namespace

void apply_config_json(PipelineConfig& config, const nlohmann::json& doc) {
  if (!doc.is_object()) {
    throw std::invalid_argument("config must be a flat JSON object");
  }
  for (const auto& [key, value] : doc.items()) {
    if (key == "input") {
      config.input = as_string(value, key);
    } else if (key == "format") {
      config.format = parse_file_format(as_string(value, key));
    } else if (key == "columns") {
      if (!value.is_array()) bad_key(key, "an array of integers");
      config.columns.clear();
      for (const auto& c : value) config.columns.push_back(as_index(c, key));
    } else if (key == "label_column") {
      if (value.is_null()) {
        config.label_column.reset();
      } else {
        config.label_column = as_index(value, key);
      }
    } else if (key == "window") {
      config.window = as_index(value, key);
    } else if (key == "stride") {
      config.stride = as_index(value, key);
    } else if (key == "covariance") {
      config.covariance = parse_solver_input(as_string(value, key));
    } else if (key == "variance_floor") {
      config.variance_floor = as_number(value, key);
    } else if (key == "lambda") {
      if (value.is_string()) {
        if (value.get<std::string>() != "auto") bad_key(key, "a number or \"auto\"");
        config.solver.lambda_mode = LambdaMode::Auto;
      } else {
        config.solver.lambda_mode = LambdaMode::Fixed;
        config.solver.lambda = as_number(value, key);
      }
    } else if (key == "lambda_grid") {
      if (!value.is_array() || value.empty()) bad_key(key, "a nonempty array of numbers");
      config.solver.lambda_grid.clear();
      for (const auto& g : value) config.solver.lambda_grid.push_back(as_number(g, key));
    } else if (key == "chunk_size") {
      config.solver.chunk_size = as_int(value, key);
    } else if (key == "max_iterations") {
      config.solver.max_iterations = as_int(value, key);
    } else if (key == "threads") {
      config.solver.threads = as_int(value, key);
    } else if (key == "metric") {
      config.metric = parse_metric(as_string(value, key));
    } else if (key == "threshold") {
      config.threshold = as_number(value, key);
    } else if (key == "guard_z") {
      config.guard_multiplier = as_int(value, key);
    } else if (key == "guard_units") {
      config.guard_units = parse_guard_units(as_string(value, key));
    } else if (key == "seed") {
      if (!value.is_number_integer()) bad_key(key, "an integer");
      config.seed = value.get<std::uint64_t>();
    } else if (key == "out_dir") {
      config.out_dir = as_string(value, key);
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
}

PipelineConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config file '" + path.string() + "'");
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("config file '" + path.string() + "': " + e.what());
  }
  PipelineConfig config;
  apply_config_json(config, doc);
  return config;
}

nlohmann::json config_to_json(const PipelineConfig& config) {
  nlohmann::json doc;
  doc["input"] = config.input;
  doc["format"] = to_string(config.format);
  doc["columns"] = config.columns;
  if (config.label_column) {
    doc["label_column"] = *config.label_column;
  } else {
    doc["label_column"] = nullptr;
  }
  doc["window"] = config.window;
  doc["stride"] = config.stride;
  doc["covariance"] = to_string(config.covariance);
  doc["variance_floor"] = config.variance_floor;
  if (config.solver.lambda_mode == LambdaMode::Auto) {
    doc["lambda"] = "auto";
  } else {
    doc["lambda"] = config.solver.lambda;
  }
  doc["lambda_grid"] = config.solver.lambda_grid;
  doc["chunk_size"] = config.solver.chunk_size;
  doc["max_iterations"] = config.solver.max_iterations;
  doc["threads"] = config.solver.threads;
  doc["metric"] = to_string(config.metric);
  doc["threshold"] = config.threshold;
  doc["guard_z"] = config.guard_multiplier;
  doc["guard_units"] = to_string(config.guard_units);
  doc["seed"] = config.seed;
  doc["out_dir"] = config.out_dir;
  return doc;
}

} // namespace graphseg
