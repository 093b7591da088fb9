#pragma once

// (s,v)-plane scan harness: evaluates the selected methods on a grid and
// streams ComparisonRecord rows as CSV.  Grid points run on a worker pool;
// rows are gathered and emitted in grid order, so the output is identical
// for 1 and N workers.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sinegas/config.hpp"

namespace sinegas {

enum class ScanMethod { nystrom, toeplitz, gap, extended, transition, fh };

ScanMethod parse_method(const std::string& name);
std::string method_name(ScanMethod m);

struct ScanSpec {
  std::vector<double> s_values;
  std::vector<double> v_values;      // exactly one of v_values / kappa_values
  std::vector<double> kappa_values;
  std::vector<ScanMethod> methods;   // canonical order enforced internally
  int fixed_order = 0;               // 0 = auto order policy
  int toeplitz_n = 400;
  int jobs = 0;                      // 0 = config / hardware
};

struct ComparisonRecord {
  double s, v, kappa, gamma;
  std::optional<double> oracle_logdet;
  double oracle_accuracy = 0.0;
  // parallel to the selected method list in canonical order (oracle excluded)
  std::vector<std::optional<double>> values;
  std::vector<std::optional<double>> residuals;
  std::vector<std::optional<double>> budgets;
  std::string status;  // "ok" or semicolon-joined skip markers
};

std::vector<ComparisonRecord> run_scan(const ScanSpec& spec, const Config& cfg);

// "# sine-gas scan v1" header, 17-significant-digit floats, lossless
// round-trip.
void write_csv(std::ostream& os, const ScanSpec& spec,
               const std::vector<ComparisonRecord>& records);

std::string format_double(double x);  // %.17g

}  // namespace sinegas
