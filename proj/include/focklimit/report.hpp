#pragma once

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <string>
#include <vector>

#include "focklimit/kernels.hpp"

namespace focklimit {

// shortest round-trip decimal form; locale-independent and stable across runs
inline std::string dstr(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

struct CheckResult {
  std::string name;
  double deviation = 0.0;  // measured defect, or margin LHS - RHS for inequalities
  double tolerance = 0.0;
  std::string restriction;  // subspace or sampling the check ran on
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

inline nlohmann::ordered_json to_json(const SuiteReport& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["all_pass"] = r.all_pass();
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["deviation"] = c.deviation;
    cj["tolerance"] = c.tolerance;
    cj["restriction"] = c.restriction;
    cj["pass"] = c.pass;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  return j;
}

struct ConvergenceRow {
  double lambda = 0.0;
  std::string vector_id;
  double error = 0.0;     // distance to the effective-resolvent prediction
  double residual = 0.0;  // relative linear-solver residual
  double seconds = 0.0;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
};

inline std::string to_csv(const ConvergenceTable& t) {
  std::string out = "lambda,vector_id,error,residual,seconds\n";
  for (const auto& r : t.rows)
    out += dstr(r.lambda) + "," + r.vector_id + "," + dstr(r.error) + "," + dstr(r.residual) +
           "," + dstr(r.seconds) + "\n";
  return out;
}

inline nlohmann::ordered_json to_json(const ConvergenceTable& t) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : t.rows) {
    nlohmann::ordered_json j;
    j["lambda"] = r.lambda;
    j["vector_id"] = r.vector_id;
    j["error"] = r.error;
    j["residual"] = r.residual;
    j["seconds"] = r.seconds;
    rows.push_back(j);
  }
  return rows;
}

struct EvolveRow {
  double lambda = 0.0;
  std::string vector_id;
  double discrepancy = 0.0;
};

inline std::string to_csv(const std::vector<EvolveRow>& rows) {
  std::string out = "lambda,vector_id,discrepancy\n";
  for (const auto& r : rows)
    out += dstr(r.lambda) + "," + r.vector_id + "," + dstr(r.discrepancy) + "\n";
  return out;
}

inline nlohmann::ordered_json to_json(const std::vector<EvolveRow>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["lambda"] = r.lambda;
    j["vector_id"] = r.vector_id;
    j["discrepancy"] = r.discrepancy;
    arr.push_back(j);
  }
  return arr;
}

struct SpectrumRow {
  std::string op;
  std::string lambda;  // empty for lambda-independent operators
  double min_eigenvalue = 0.0;
};

inline std::string to_csv(const std::vector<SpectrumRow>& rows) {
  std::string out = "operator,lambda,min_eigenvalue\n";
  for (const auto& r : rows) out += r.op + "," + r.lambda + "," + dstr(r.min_eigenvalue) + "\n";
  return out;
}

inline nlohmann::ordered_json to_json(const std::vector<SpectrumRow>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["operator"] = r.op;
    j["lambda"] = r.lambda;
    j["min_eigenvalue"] = r.min_eigenvalue;
    arr.push_back(j);
  }
  return arr;
}

inline std::string kernel_csv_header() { return "z1,z2,z3,j,l,re,im,provenance\n"; }

inline std::string to_csv_rows(const KernelMatrix& k) {
  std::string out;
  for (int j = 0; j < 3; ++j)
    for (int l = 0; l < 3; ++l)
      out += dstr(k.z.x()) + "," + dstr(k.z.y()) + "," + dstr(k.z.z()) + "," +
             std::to_string(j + 1) + "," + std::to_string(l + 1) + "," +
             dstr(k.entries(j, l).real()) + "," + dstr(k.entries(j, l).imag()) + "," +
             to_string(k.provenance) + "\n";
  return out;
}

inline nlohmann::ordered_json to_json_rows(const KernelMatrix& k) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (int j = 0; j < 3; ++j)
    for (int l = 0; l < 3; ++l) {
      nlohmann::ordered_json row;
      row["z1"] = k.z.x();
      row["z2"] = k.z.y();
      row["z3"] = k.z.z();
      row["j"] = j + 1;
      row["l"] = l + 1;
      row["re"] = k.entries(j, l).real();
      row["im"] = k.entries(j, l).imag();
      row["provenance"] = to_string(k.provenance);
      arr.push_back(row);
    }
  return arr;
}

}  // namespace focklimit
