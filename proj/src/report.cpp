#include "ellspin/report.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace ellspin {

ResidualEntry make_entry(const std::string& name, double value, double tolerance,
                         const std::string& check) {
  return {name, value, tolerance, value <= tolerance, check};
}

bool Report::all_pass() const {
  for (const auto& e : residuals)
    if (!e.pass) return false;
  return true;
}

json Report::to_json() const {
  json j;
  j["command"] = command;
  j["params"] = params;
  json rs = json::array();
  for (const auto& e : residuals) {
    json r;
    r["name"] = e.name;
    r["value"] = e.value;
    r["tolerance"] = e.tolerance;
    r["pass"] = e.pass;
    r["check"] = e.check;
    rs.push_back(r);
  }
  j["residuals"] = rs;
  j["all_pass"] = all_pass();
  return j;
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json complex_list_json(const std::vector<cplx>& v) {
  json j = json::array();
  for (cplx z : v) j.push_back(complex_json(z));
  return j;
}

cplx complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::runtime_error("expected [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

void write_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
}

void write_report_json(const Report& r, const std::string& path) {
  write_json(r.to_json(), path);
}

void write_report_csv(const Report& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "name,value,tolerance,pass,check\n";
  out.precision(17);
  for (const auto& e : r.residuals) {
    out << e.name << ',' << e.value << ',' << e.tolerance << ',' << (e.pass ? 1 : 0) << ','
        << e.check << '\n';
  }
}

void write_matrix_bin(const Mat& M, const std::string& path) {
  if (M.rows() != M.cols()) throw std::invalid_argument("write_matrix_bin: square only");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  const std::uint64_t dim = static_cast<std::uint64_t>(M.rows());
  out.write(reinterpret_cast<const char*>(&dim), 8);
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      const double re = M(i, j).real();
      const double im = M(i, j).imag();
      out.write(reinterpret_cast<const char*>(&re), 8);
      out.write(reinterpret_cast<const char*>(&im), 8);
    }
  }
}

Mat read_matrix_bin(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::uint64_t dim = 0;
  in.read(reinterpret_cast<char*>(&dim), 8);
  if (!in || dim == 0 || dim > 4096) throw std::runtime_error("bad matrix header: " + path);
  Mat M(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::uint64_t i = 0; i < dim; ++i) {
    for (std::uint64_t j = 0; j < dim; ++j) {
      double re = 0.0, im = 0.0;
      in.read(reinterpret_cast<char*>(&re), 8);
      in.read(reinterpret_cast<char*>(&im), 8);
      M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = cplx(re, im);
    }
  }
  if (!in) throw std::runtime_error("truncated matrix file: " + path);
  return M;
}

}  // namespace ellspin
