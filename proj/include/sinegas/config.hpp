#pragma once

// Shared configuration: regime cutoffs and error-budget constants.  The
// asymptotic error bounds carry unspecified constants; the defaults below
// were fitted once against the Nystrom oracle on a calibration grid, and the
// verification checks test decay rates rather than these values.
//
// Precedence: compiled defaults < config file < SINEGAS_* environment
// variables.  The file format is flat "key = value" text, '#' comments.

#include <string>

namespace sinegas {

struct Config {
  double s0 = 8.0;      // asymptotic-regime floor
  double delta = 0.01;  // kappa domain cut: kappa <= 1 - delta
  double t0 = 0.5;      // Toeplitz small-arc cutoff for 2s/n

  // error-budget constants
  double c_gap = 0.05;  // gap regime: c_gap / s
  double c1 = 0.05;     // extended regime: c1 v/s + c2 v^3/s
  double c2 = 0.05;
  double C0 = 0.5;      // transition regime: C0 + cJ s^{-1/4} ln s
  double cJ = 0.1;

  double det_tol = 1e-6;        // Nystrom order-doubling gate
  double nystrom_factor = 1.5;  // order rule: ceil(factor * 2s/pi) + pad
  int nystrom_pad = 40;
  double dd_v_threshold = 8.0;   // switch the oracle to double-double

  int tail_modes = 32;
  double tail_u_min = 1e-4;
  int tail_cheb = 96;

  int scan_jobs = 0;  // 0 = hardware concurrency

  static Config defaults() { return Config{}; }
  // Load "key = value" lines from a file over the defaults; unknown keys are
  // an error so typos do not pass silently.
  static Config load(const std::string& path);
  // Apply SINEGAS_<UPPERCASE_KEY> environment overrides.
  void apply_env();

  int order_for(double s) const;
};

}  // namespace sinegas
