// Copyright 2026 The magiclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "magiclab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace magiclab {

nlohmann::json ExperimentManifest::to_json() const {
  nlohmann::json j;
  j["experiment"] = experiment;
  j["master_seed"] = master_seed;
  j["n"] = n;
  j["k"] = k;
  j["alpha"] = alpha;
  j["sample_count"] = sample_count;
  j["parameters"] = parameters;
  j["code_version"] = code_version;
  return j;
}

ExperimentManifest ExperimentManifest::from_json(const nlohmann::json& j) {
  ExperimentManifest m;
  m.experiment = j.at("experiment").get<std::string>();
  m.master_seed = j.at("master_seed").get<std::uint64_t>();
  m.n = j.value("n", 0);
  m.k = j.value("k", 0);
  m.alpha = j.value("alpha", std::vector<double>{});
  m.sample_count = j.value("sample_count", std::size_t{0});
  m.parameters = j.value("parameters", nlohmann::json::object());
  m.code_version = j.value("code_version", std::string(kCodeVersion));
  return m;
}

ResultTable::ResultTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void ResultTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) throw std::invalid_argument("ResultTable: row width mismatch");
  rows_.push_back(std::move(row));
}

void ResultTable::resize(std::size_t rows) { rows_.resize(rows); }

void ResultTable::set_row(std::size_t index, std::vector<Cell> row) {
  if (row.size() != columns_.size()) throw std::invalid_argument("ResultTable: row width mismatch");
  rows_.at(index) = std::move(row);
}

std::size_t ResultTable::index_of(const std::string& name) const {
  const auto it = std::find(columns_.begin(), columns_.end(), name);
  if (it == columns_.end()) throw std::out_of_range("ResultTable: no column " + name);
  return static_cast<std::size_t>(it - columns_.begin());
}

std::vector<double> ResultTable::column(const std::string& name) const {
  const std::size_t c = index_of(name);
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& row : rows_) {
    if (const auto* d = std::get_if<double>(&row[c])) out.push_back(*d);
    else if (const auto* i = std::get_if<std::int64_t>(&row[c])) out.push_back(static_cast<double>(*i));
  }
  return out;
}

std::vector<ColumnSummary> ResultTable::summary() const {
  std::vector<ColumnSummary> out;
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    std::vector<double> v;
    for (const auto& row : rows_)
      if (const auto* d = std::get_if<double>(&row[c])) v.push_back(*d);
    if (v.empty()) continue;
    ColumnSummary s;
    s.column = columns_[c];
    s.count = v.size();
    s.mean = mean(v);
    s.stderr_mean = standard_error(v);
    s.min = *std::min_element(v.begin(), v.end());
    s.max = *std::max_element(v.begin(), v.end());
    out.push_back(s);
  }
  return out;
}

void ResultTable::check(std::string name, bool passed, double value, double bound,
                        std::string detail) {
  checks_.push_back({std::move(name), passed, value, bound, std::move(detail)});
}

bool ResultTable::all_passed() const {
  return std::all_of(checks_.begin(), checks_.end(), [](const auto& c) { return c.passed; });
}

namespace {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string cell_text(const Cell& cell) {
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
  return std::get<std::string>(cell);
}

nlohmann::json cell_json(const Cell& cell) {
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return *i;
  if (const auto* d = std::get_if<double>(&cell)) {
    if (std::isfinite(*d)) return *d;
    return format_double(*d);
  }
  return std::get<std::string>(cell);
}

nlohmann::json finite_or_text(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

}  // namespace

std::string ResultTable::to_csv() const {
  std::string out;
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (c) out += ',';
    out += csv_field(columns_[c]);
  }
  out += "\r\n";
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += csv_field(cell_text(row[c]));
    }
    out += "\r\n";
  }
  return out;
}

std::string ResultTable::to_json() const {
  nlohmann::json j;
  j["manifest"] = manifest.to_json();
  j["columns"] = columns_;
  auto& rows = j["rows"] = nlohmann::json::array();
  for (const auto& row : rows_) {
    auto r = nlohmann::json::array();
    for (const auto& cell : row) r.push_back(cell_json(cell));
    rows.push_back(std::move(r));
  }
  auto& summ = j["summary"] = nlohmann::json::array();
  for (const auto& s : summary()) {
    summ.push_back({{"column", s.column},
                    {"count", s.count},
                    {"mean", finite_or_text(s.mean)},
                    {"stderr", finite_or_text(s.stderr_mean)},
                    {"min", finite_or_text(s.min)},
                    {"max", finite_or_text(s.max)}});
  }
  auto& checks = j["checks"] = nlohmann::json::array();
  for (const auto& c : checks_) {
    checks.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"value", finite_or_text(c.value)},
                      {"bound", finite_or_text(c.bound)},
                      {"detail", c.detail}});
  }
  return j.dump(2) + "\n";
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double standard_error(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  const double n = static_cast<double>(v.size());
  return std::sqrt(ss / (n - 1.0) / n);
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

int configure_threads(std::optional<int> flag) {
  std::optional<int> count = flag;
  if (!count) {
    if (const char* env = std::getenv("MAGICLAB_THREADS")) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (end != env && *end == '\0' && v > 0) count = static_cast<int>(v);
    }
  }
#ifdef _OPENMP
  if (count) omp_set_num_threads(*count);
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::string write_result_files(const ResultTable& table, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y%m%dT%H%M%SZ", &utc);
  const std::string stem = (std::filesystem::path(dir) /
                            (table.manifest.experiment + "_" +
                             std::to_string(table.manifest.master_seed) + "_" + stamp))
                               .string();
  auto write = [](const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
  };
  write(stem + ".csv", table.to_csv());
  write(stem + ".json", table.to_json());
  write(stem + ".manifest.json", table.manifest.to_json().dump(2) + "\n");
  return stem;
}

}  // namespace magiclab
