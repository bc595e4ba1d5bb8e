#include "fastlat/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace fastlat {

using nlohmann::json;

json matrix_to_json(const CMatrix& m) {
  json entries = json::array();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      entries.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
  return json{{"n_rows", m.rows()}, {"n_cols", m.cols()}, {"entries", std::move(entries)}};
}

CMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n_rows") || !j.contains("n_cols") || !j.contains("entries"))
    throw std::invalid_argument("matrix JSON: expected n_rows, n_cols, entries");
  const int rows = j.at("n_rows").get<int>();
  const int cols = j.at("n_cols").get<int>();
  const json& entries = j.at("entries");
  if (rows < 1 || cols < 1) throw std::invalid_argument("matrix JSON: bad dimensions");
  if (!entries.is_array() || static_cast<int>(entries.size()) != rows * cols)
    throw std::invalid_argument("matrix JSON: entries length must be n_rows * n_cols");
  CMatrix m(rows, cols);
  int k = 0;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c, ++k) {
      const json& e = entries[k];
      if (!e.is_array() || e.size() != 2)
        throw std::invalid_argument("matrix JSON: each entry must be [re, im]");
      m(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
    }
  }
  if (!m.all_finite()) throw std::invalid_argument("matrix JSON: non-finite entry");
  return m;
}

json basis_to_json(const CodeBasis& basis) {
  json matrices = json::array();
  for (const CMatrix& m : basis.matrices) matrices.push_back(matrix_to_json(m));
  return json{{"name", basis.name}, {"n", basis.n}, {"l", basis.l},
              {"matrices", std::move(matrices)}};
}

CodeBasis basis_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("l") || !j.contains("matrices"))
    throw std::invalid_argument("basis JSON: expected n, l, matrices");
  CodeBasis basis;
  basis.name = j.value("name", std::string{});
  basis.n = j.at("n").get<int>();
  basis.l = j.at("l").get<int>();
  const json& matrices = j.at("matrices");
  if (!matrices.is_array()) throw std::invalid_argument("basis JSON: matrices must be an array");
  for (const json& m : matrices) basis.matrices.push_back(matrix_from_json(m));
  basis.validate();
  return basis;
}

json partition_to_json(const GroupPartition& partition) {
  json groups = json::array();
  for (const auto& g : partition.groups) {
    json one = json::array();
    for (int u : g) one.push_back(u + 1);
    groups.push_back(std::move(one));
  }
  json remainder = json::array();
  for (int u : partition.remainder) remainder.push_back(u + 1);
  return json{{"groups", std::move(groups)}, {"remainder", std::move(remainder)}};
}

GroupPartition partition_from_json(const json& j) {
  if (!j.is_object() || !j.contains("groups"))
    throw std::invalid_argument("partition JSON: expected groups");
  GroupPartition partition;
  auto read_set = [](const json& arr, const char* what) {
    if (!arr.is_array())
      throw std::invalid_argument(std::string("partition JSON: ") + what + " must be an array");
    std::vector<int> out;
    for (const json& v : arr) {
      const int idx = v.get<int>();
      if (idx < 1) throw std::invalid_argument("partition JSON: indices are 1-based");
      out.push_back(idx - 1);
    }
    return out;
  };
  for (const json& g : j.at("groups")) partition.groups.push_back(read_set(g, "group"));
  if (j.contains("remainder")) partition.remainder = read_set(j.at("remainder"), "remainder");
  return partition;
}

json report_to_json(const ComplexityReport& report) {
  json checks = json::array();
  for (const BoundCheck& c : report.bound_checks)
    checks.push_back(json{{"name", c.name},
                          {"lhs", c.lhs},
                          {"rhs", c.rhs},
                          {"applicable", c.applicable},
                          {"pass", c.pass}});
  json out{{"fast_decodable", report.fast_decodable},
           {"exponent", report.exponent},
           {"heuristic", report.heuristic},
           {"bound_checks", std::move(checks)}};
  out["g_group"] = report.g_group ? json(*report.g_group) : json(nullptr);
  out["partition"] = report.partition ? partition_to_json(*report.partition) : json(nullptr);
  return out;
}

json bound_report_to_json(const BoundReport& report) {
  json out{{"context", report.context},
           {"n", report.n},
           {"nu2_n", report.nu2_n},
           {"r_even", report.r_even},
           {"r_odd", report.r_odd},
           {"g_even", report.g_even},
           {"g_odd", report.g_odd},
           {"g_general", report.g_general},
           {"hre", report.hre},
           {"g_max", report.g_max}};
  if (report.algebra)
    out["algebra"] = json{{"degree", report.algebra->degree},
                          {"index", report.algebra->index},
                          {"division", report.algebra->division}};
  else
    out["algebra"] = json(nullptr);
  return out;
}

namespace {

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

void write_file(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << j.dump(2) << '\n';
}

}  // namespace

CodeBasis load_code(const std::string& path) { return basis_from_json(parse_file(path)); }

void save_code(const CodeBasis& basis, const std::string& path) {
  write_file(basis_to_json(basis), path);
}

GroupPartition load_partition(const std::string& path, int expected_total) {
  GroupPartition partition = partition_from_json(parse_file(path));
  partition.validate(expected_total);
  return partition;
}

void save_partition(const GroupPartition& partition, const std::string& path) {
  write_file(partition_to_json(partition), path);
}

}  // namespace fastlat
