#pragma once

// Function and coefficient files.
//
// Function vectors are keyed by word:      csv lines "word,value" or
// json {"n":.., "k":.., "values":{"1122": 1.5, ...}}.
// Coefficient vectors are keyed by tableau ("134/25"): csv "tableau,value"
// or json {"n":.., "k":.., "coefficients":{...}}.
// Missing keys default to 0; duplicate or unknown keys are errors that name
// the offending line.

#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "jfft/factor.hpp"
#include "jfft/plan_io.hpp"
#include "jfft/transform.hpp"

namespace jfft {

enum class VectorKind { function_values, gt_coefficients };
enum class FileFormat { csv, json };

inline FileFormat format_from_path(const std::string& path, FileFormat fallback = FileFormat::csv) {
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) return FileFormat::json;
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0) return FileFormat::csv;
  return fallback;
}

namespace detail {

inline std::vector<std::string> vector_keys(const TransformPlan& plan, VectorKind kind) {
  std::vector<std::string> keys;
  keys.reserve(static_cast<size_t>(plan.dim));
  if (kind == VectorKind::function_values) {
    for (const auto& lab : plan.levels.front()) keys.push_back(lab.suffix);
  } else {
    for (const auto& lab : plan.levels.back()) keys.push_back(serialize_tableau(lab.tableau, plan.n));
  }
  return keys;
}

inline std::unordered_map<std::string, int> key_index(const std::vector<std::string>& keys) {
  std::unordered_map<std::string, int> idx;
  idx.reserve(keys.size() * 2);
  for (size_t j = 0; j < keys.size(); ++j) idx.emplace(keys[j], static_cast<int>(j));
  return idx;
}

}  // namespace detail

/// Read a vector file.  `source` names the stream in error messages.
inline std::vector<double> read_vector(std::istream& is, const TransformPlan& plan, VectorKind kind,
                                       FileFormat format, const std::string& source = "<input>") {
  auto keys = detail::vector_keys(plan, kind);
  auto idx = detail::key_index(keys);
  std::vector<double> values(static_cast<size_t>(plan.dim), 0.0);
  std::vector<char> seen(static_cast<size_t>(plan.dim), 0);
  const char* what = (kind == VectorKind::function_values) ? "word" : "tableau";

  if (format == FileFormat::csv) {
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      auto fail = [&](const std::string& msg) {
        throw IoError(source + ":" + std::to_string(line_no) + ": " + msg);
      };
      auto comma = line.find(',');
      if (comma == std::string::npos) fail("expected '<" + std::string(what) + ">,<value>'");
      std::string key = line.substr(0, comma);
      std::string val = line.substr(comma + 1);
      auto it = idx.find(key);
      if (it == idx.end()) fail("unknown " + std::string(what) + " '" + key + "'");
      if (seen[static_cast<size_t>(it->second)]++) fail("duplicate " + std::string(what) + " '" + key + "'");
      const char* begin = val.c_str();
      char* end = nullptr;
      double v = std::strtod(begin, &end);
      while (end && *end == ' ') ++end;
      if (end == begin || *end != '\0') fail("bad value '" + val + "'");
      values[static_cast<size_t>(it->second)] = v;
    }
    return values;
  }

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(is);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError(source + ": " + e.what());
  }
  auto fail = [&](const std::string& msg) { throw IoError(source + ": " + msg); };
  if (!doc.is_object()) fail("top-level json must be an object");
  if (doc.contains("n") && (!doc["n"].is_number_integer() || doc["n"].get<int>() != plan.n))
    fail("json n does not match the plan");
  if (doc.contains("k") && (!doc["k"].is_number_integer() || doc["k"].get<int>() != plan.k))
    fail("json k does not match the plan");
  const char* field = (kind == VectorKind::function_values) ? "values" : "coefficients";
  if (!doc.contains(field) || !doc[field].is_object())
    fail(std::string("missing object field '") + field + "'");
  for (const auto& [key, val] : doc[field].items()) {
    auto it = idx.find(key);
    if (it == idx.end()) fail("unknown " + std::string(what) + " '" + key + "'");
    if (seen[static_cast<size_t>(it->second)]++) fail("duplicate " + std::string(what) + " '" + key + "'");
    if (!val.is_number()) fail("value of '" + key + "' is not a number");
    values[static_cast<size_t>(it->second)] = val.get<double>();
  }
  return values;
}

inline std::vector<double> read_vector_file(const std::string& path, const TransformPlan& plan,
                                            VectorKind kind) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path);
  return read_vector(is, plan, kind, format_from_path(path), path);
}

inline void write_vector(std::ostream& os, const TransformPlan& plan, VectorKind kind,
                         FileFormat format, const std::vector<double>& values) {
  auto keys = detail::vector_keys(plan, kind);
  if (values.size() != keys.size()) throw std::invalid_argument("write_vector: dimension mismatch");
  if (format == FileFormat::csv) {
    for (size_t j = 0; j < keys.size(); ++j) os << keys[j] << ',' << format_double(values[j]) << "\n";
    return;
  }
  nlohmann::json doc;
  doc["n"] = plan.n;
  doc["k"] = plan.k;
  const char* field = (kind == VectorKind::function_values) ? "values" : "coefficients";
  nlohmann::json obj = nlohmann::json::object();
  for (size_t j = 0; j < keys.size(); ++j) obj[keys[j]] = values[j];
  doc[field] = obj;
  os << doc.dump(2) << "\n";
}

inline void write_vector_file(const std::string& path, const TransformPlan& plan, VectorKind kind,
                              FileFormat format, const std::vector<double>& values) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open " + path + " for writing");
  write_vector(os, plan, kind, format, values);
  os.flush();
  if (!os) throw IoError("write failure on " + path);
}

}  // namespace jfft
