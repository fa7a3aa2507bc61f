#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ellspin/tensor.hpp"

namespace ellspin {

using json = nlohmann::ordered_json;

// One verified identity; `check` is a short tag naming it in reports.
struct ResidualEntry {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string check;
};

ResidualEntry make_entry(const std::string& name, double value, double tolerance,
                         const std::string& check);

// Machine-readable run summary.  No timestamps: identical configuration must
// produce a bit-identical file.
struct Report {
  std::string command;
  json params = json::object();
  std::vector<ResidualEntry> residuals;

  bool all_pass() const;
  json to_json() const;
};

json complex_json(cplx z);                         // [re, im]
json complex_list_json(const std::vector<cplx>& v);
cplx complex_from_json(const json& j);

void write_json(const json& j, const std::string& path);
void write_report_json(const Report& r, const std::string& path);
void write_report_csv(const Report& r, const std::string& path);

// Dense square complex matrix: u64 little-endian dimension header, then
// dim^2 row-major (re, im) float64 pairs.
void write_matrix_bin(const Mat& M, const std::string& path);
Mat read_matrix_bin(const std::string& path);

}  // namespace ellspin
