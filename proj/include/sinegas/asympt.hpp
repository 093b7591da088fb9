#pragma once

// Every explicit asymptotic form of ln det(I - gamma K_s) as an evaluator
// with a named term-by-term breakdown: the gap expansion, the extended
// (growing-v) expansion, the elliptic transition expansion, the finite-n
// Fisher-Hartwig Toeplitz expansion, and the s-derivative expansion with
// the oscillatory phase phi(s,v).

#include <string>
#include <utility>
#include <vector>

#include "sinegas/config.hpp"

namespace sinegas {

struct AsymptoticResult {
  double total;  // exact sum of the stored terms
  std::vector<std::pair<std::string, double>> terms;
  std::string regime;    // gap | fixed_v | extended_v | transition | fh_toeplitz
  double error_budget;   // the regime's bound with configured constants
  std::string warning;   // empty when the regime hypotheses hold

  double term(const std::string& name) const;
};

// -s^2/2 - (1/4) ln s + ln c0,  ln c0 = (1/12) ln 2 + 3 zeta'(-1).
AsymptoticResult gap_expansion(double s, const Config& cfg = Config{});

// -(4v/pi) s + (2v^2/pi^2) ln(4s) + 2 ln G(1+iv/pi)G(1-iv/pi);
// hypotheses s >= s0, 0 <= v < s^{1/3} (warning outside).
AsymptoticResult extended_expansion(double s, double v,
                                    const Config& cfg = Config{});

// A(v) = 2 ln G(1+iv/pi)G(1-iv/pi) - (v^2/pi^2)(3 + 2 ln(pi/v)), A(0) = 0.
double a_of_v(double v);

// -(s^2/2)(1-a^2) + v s V + ln theta_3(sV|tau) + A(v) + tail, built at
// kappa = v/s; the theta_3 argument is reduced mod 1 with an extended-
// precision multiply before evaluation.
AsymptoticResult transition_expansion(double s, double v, double tail,
                                      const Config& cfg = Config{});

// d/ds ln det ~ -4v/pi + 2v^2/(pi^2 s) + (v^2/(2 pi^2 s^2)) sin phi(s,v),
// phi = 4s - (4v/pi) ln(4s) + 2 arg(Gamma(nu)/Gamma(-nu)), nu = iv/pi.
double dlogdet_expansion(double s, double v, const Config& cfg = Config{});
double phase_phi(double s, double v);

// ln D_n ~ -(4v/pi) s + (2v^2/pi^2) ln(2n sin(2s/n)) + Barnes pair;
// the log factor tends to ln(4s) as n -> infinity.
AsymptoticResult fh_toeplitz_expansion(int n, double s, double v,
                                       const Config& cfg = Config{});

}  // namespace sinegas
