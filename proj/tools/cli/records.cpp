#include "records.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "uwell/renorm.hpp"
#include "uwell/version.hpp"

namespace uwell::cli {
namespace {

std::string format_number(double v, int digits) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits > 0 ? digits : 17, v);
  return buf;
}

std::string csv_field(const Json& v, int digits) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return format_number(v.get<double>(), digits);
  if (v.is_number()) return v.dump();
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

Json optional_number(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

RunRecord make_run_record(const EigenResult& result, const SolverParams& params,
                          double coarsest_dx, Verdict verdict) {
  RunRecord r;
  r.version = kVersion;
  r.v0 = result.v0;
  r.l = orbital_index(result.sector);
  r.n = result.n;
  r.sector = std::string(to_string(result.sector));
  r.tail_route = std::string(to_string(tail_route_for(result.sector)));
  r.a = result.cutoff_a;
  r.dx = result.step_dx;
  r.h = result.h;
  r.eig_tol = params.eig_tol;
  r.max_iters = params.max_iters;
  r.coarsest_dx = coarsest_dx;
  r.seed = "trigonometric";
  r.eigenvalue_at_a = result.eigenvalue_at_a;
  r.eigenvalue_renormalized = result.eigenvalue_renormalized;
  r.rayleigh_quotient = result.rayleigh_quotient;
  r.residual = result.residual;
  r.iterations = result.iterations;
  r.total_iterations = result.total_iterations;
  r.converged = result.converged;
  r.status = std::string(to_string(result.status));
  r.verdict = std::string(to_string(verdict));
  return r;
}

Json to_json(const RunRecord& r) {
  Json j;
  j["record"] = "solve";
  j["version"] = r.version;
  j["v0"] = r.v0;
  j["l"] = r.l;
  j["n"] = r.n;
  j["sector"] = r.sector;
  j["tail_route"] = r.tail_route;
  j["a"] = r.a;
  j["dx"] = r.dx;
  j["h"] = r.h;
  j["eig_tol"] = r.eig_tol;
  j["max_iters"] = r.max_iters;
  j["coarsest_dx"] = r.coarsest_dx;
  j["seed"] = r.seed;
  j["eigenvalue_at_a"] = r.eigenvalue_at_a;
  j["eigenvalue_renormalized"] = r.eigenvalue_renormalized;
  j["rayleigh_quotient"] = r.rayleigh_quotient;
  j["residual"] = r.residual;
  j["iterations"] = r.iterations;
  j["total_iterations"] = r.total_iterations;
  j["converged"] = r.converged;
  j["status"] = r.status;
  j["verdict"] = r.verdict;
  if (r.duration_s) j["duration_s"] = *r.duration_s;
  return j;
}

RunRecord run_record_from_json(const Json& j) {
  RunRecord r;
  r.version = j.at("version").get<std::string>();
  r.v0 = j.at("v0").get<double>();
  r.l = j.at("l").get<int>();
  r.n = j.at("n").get<int>();
  r.sector = j.at("sector").get<std::string>();
  r.tail_route = j.at("tail_route").get<std::string>();
  r.a = j.at("a").get<double>();
  r.dx = j.at("dx").get<double>();
  r.h = j.at("h").get<double>();
  r.eig_tol = j.at("eig_tol").get<double>();
  r.max_iters = j.at("max_iters").get<long>();
  r.coarsest_dx = j.at("coarsest_dx").get<double>();
  r.seed = j.at("seed").get<std::string>();
  r.eigenvalue_at_a = j.at("eigenvalue_at_a").get<double>();
  r.eigenvalue_renormalized = j.at("eigenvalue_renormalized").get<double>();
  r.rayleigh_quotient = j.at("rayleigh_quotient").get<double>();
  r.residual = j.at("residual").get<double>();
  r.iterations = j.at("iterations").get<long>();
  r.total_iterations = j.at("total_iterations").get<long>();
  r.converged = j.at("converged").get<bool>();
  r.status = j.at("status").get<std::string>();
  r.verdict = j.at("verdict").get<std::string>();
  if (j.contains("duration_s")) r.duration_s = j.at("duration_s").get<double>();
  return r;
}

Json to_json(const ThresholdReport& report, double v0_from, double v0_to,
             double a, double dx) {
  Json j;
  j["record"] = "scan";
  j["version"] = kVersion;
  j["l"] = orbital_index(report.sector);
  j["n"] = report.n;
  j["sector"] = std::string(to_string(report.sector));
  j["tail_route"] = std::string(to_string(tail_route_for(report.sector)));
  j["v0_from"] = v0_from;
  j["v0_to"] = v0_to;
  j["step"] = report.resolution;
  j["a"] = a;
  j["dx"] = dx;
  j["found"] = report.found;
  std::optional<double> lo, hi, e_at, e_ren, e_lo;
  if (report.found) {
    lo = report.v0_lower;
    hi = report.v0_upper;
    e_at = report.upper_result->eigenvalue_at_a;
    e_ren = report.upper_result->eigenvalue_renormalized;
    e_lo = report.lower_result->eigenvalue_renormalized;
  }
  j["v0_lower"] = optional_number(lo);
  j["v0_upper"] = optional_number(hi);
  j["eigenvalue_at_a"] = optional_number(e_at);
  j["eigenvalue_renormalized"] = optional_number(e_ren);
  j["lower_eigenvalue_renormalized"] = optional_number(e_lo);
  return j;
}

Json to_json(const TableCell& cell, double a, double dx) {
  Json j;
  j["record"] = "table";
  j["version"] = kVersion;
  j["v0"] = cell.v0;
  j["l"] = orbital_index(cell.sector);
  j["n"] = cell.n;
  j["sector"] = std::string(to_string(cell.sector));
  j["tail_route"] = std::string(to_string(tail_route_for(cell.sector)));
  j["a"] = a;
  j["dx"] = dx;
  j["verdict"] = cell.error.empty() ? std::string(to_string(cell.verdict))
                                    : std::string("failed");
  std::optional<double> at, ren;
  std::string status;
  if (cell.result) {
    at = cell.result->eigenvalue_at_a;
    ren = cell.result->eigenvalue_renormalized;
    status = std::string(to_string(cell.result->status));
  }
  j["status"] = status;
  j["eigenvalue_at_a"] = optional_number(at);
  j["eigenvalue_renormalized"] = optional_number(ren);
  j["infinite_well_reference"] =
      optional_number(infinite_well_reference(orbital_index(cell.sector), cell.n));
  j["error"] = cell.error;
  return j;
}

Json rounded(Json flat, int digits) {
  if (digits <= 0) return flat;
  for (auto& [key, value] : flat.items()) {
    if (value.is_number_float()) {
      value = std::stod(format_number(value.get<double>(), digits));
    }
  }
  return flat;
}

void write_csv(std::ostream& out, const std::vector<Json>& rows, int digits,
               bool header) {
  if (rows.empty()) return;
  if (header) {
    bool first = true;
    for (const auto& [key, value] : rows.front().items()) {
      out << (first ? "" : ",") << key;
      first = false;
    }
    out << '\n';
  }
  for (const auto& row : rows) {
    bool first = true;
    for (const auto& [key, value] : row.items()) {
      out << (first ? "" : ",") << csv_field(value, digits);
      first = false;
    }
    out << '\n';
  }
}

void write_json(std::ostream& out, const std::vector<Json>& rows, int digits) {
  if (rows.size() == 1) {
    out << rounded(rows.front(), digits).dump() << '\n';
    return;
  }
  out << "[\n";
  for (std::size_t k = 0; k < rows.size(); ++k) {
    out << rounded(rows[k], digits).dump() << (k + 1 < rows.size() ? ",\n" : "\n");
  }
  out << "]\n";
}

}  // namespace uwell::cli
