#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "uwell/evolution.hpp"
#include "uwell/spectrum.hpp"

namespace uwell::cli {

using Json = nlohmann::ordered_json;

/// Inputs and outputs of one solve. Field order is the serialized order.
struct RunRecord {
  std::string version;
  double v0 = 0.0;
  int l = 0;
  int n = 1;
  std::string sector;
  std::string tail_route;
  double a = 0.0;
  double dx = 0.0;
  double h = 0.0;
  double eig_tol = 0.0;
  long max_iters = 0;
  double coarsest_dx = 0.0;
  std::string seed;
  double eigenvalue_at_a = 0.0;
  double eigenvalue_renormalized = 0.0;
  double rayleigh_quotient = 0.0;
  double residual = 0.0;
  long iterations = 0;
  long total_iterations = 0;
  bool converged = false;
  std::string status;
  std::string verdict;
  std::optional<double> duration_s;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

RunRecord make_run_record(const EigenResult& result, const SolverParams& params,
                          double coarsest_dx, Verdict verdict);

Json to_json(const RunRecord& r);
RunRecord run_record_from_json(const Json& j);

Json to_json(const ThresholdReport& report, double v0_from, double v0_to,
             double a, double dx);

Json to_json(const TableCell& cell, double a, double dx);

/// Rounds every floating value of a flat object to `digits` significant
/// digits; 0 leaves them untouched.
Json rounded(Json flat, int digits);

/// Writes a header line (if requested) and one row per flat object.
void write_csv(std::ostream& out, const std::vector<Json>& rows, int digits,
               bool header = true);

/// One flat object per line of a JSON array, or a bare object for one row.
void write_json(std::ostream& out, const std::vector<Json>& rows, int digits);

}  // namespace uwell::cli
