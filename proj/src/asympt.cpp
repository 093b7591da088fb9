#include "sinegas/asympt.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sinegas/kappa_map.hpp"
#include "sinegas/specfun.hpp"

namespace sinegas {

namespace {
constexpr double kPi = std::numbers::pi;

double sum_terms(const std::vector<std::pair<std::string, double>>& terms) {
  double s = 0.0;
  for (const auto& [name, val] : terms) s += val;
  return s;
}
}  // namespace

double AsymptoticResult::term(const std::string& name) const {
  for (const auto& [n, v] : terms)
    if (n == name) return v;
  throw std::out_of_range("AsymptoticResult: no term named " + name);
}

AsymptoticResult gap_expansion(double s, const Config& cfg) {
  if (!(s > 0.0)) throw std::domain_error("gap_expansion: s must be positive");
  AsymptoticResult r;
  r.regime = "gap";
  r.terms = {{"quadratic", -0.5 * s * s},
             {"log", -0.25 * std::log(s)},
             {"constant", ln_c0}};
  r.total = sum_terms(r.terms);
  r.error_budget = cfg.c_gap / s;
  return r;
}

AsymptoticResult extended_expansion(double s, double v, const Config& cfg) {
  if (!(s > 0.0) || !(v >= 0.0))
    throw std::domain_error("extended_expansion: need s > 0, v >= 0");
  AsymptoticResult r;
  r.regime = "extended_v";
  r.terms = {{"linear", -4.0 * v / kPi * s},
             {"log", 2.0 * v * v / (kPi * kPi) * std::log(4.0 * s)},
             {"barnes", log_barnes_pair(v)}};
  r.total = sum_terms(r.terms);
  r.error_budget = cfg.c1 * v / s + cfg.c2 * v * v * v / s;
  if (v >= std::cbrt(s))
    r.warning = "v >= s^(1/3): outside the extended-regime hypothesis";
  else if (s < cfg.s0)
    r.warning = "s below configured s0";
  return r;
}

double a_of_v(double v) {
  if (v < 0.0) throw std::domain_error("a_of_v: v must be >= 0");
  if (v == 0.0) return 0.0;  // v^2 ln(pi/v) -> 0
  return log_barnes_pair(v) - v * v / (kPi * kPi) * (3.0 + 2.0 * std::log(kPi / v));
}

namespace {
// fractional part of s*V to the period of theta_3, with the product split
// through an fma so the reduction does not eat the low bits
double reduce_mod1(double s, double V) {
  double p = s * V;
  double e = std::fma(s, V, -p);
  double r = p - std::nearbyint(p);
  return r + e;
}
}  // namespace

AsymptoticResult transition_expansion(double s, double v, double tail,
                                      const Config& cfg) {
  if (!(s > 0.0) || !(v > 0.0) || v > s * (1.0 - cfg.delta))
    throw std::domain_error("transition_expansion: need 0 < v <= s(1-delta)");
  double kappa = v / s;
  EllipticData d = build_elliptic_data(kappa, cfg.delta);
  ThetaContext tc(d.tau);
  double arg = reduce_mod1(s, d.V);
  double th = theta(3, arg, tc).real();
  if (!(th > 0.0))
    throw std::runtime_error("transition_expansion: theta_3 not positive");
  AsymptoticResult r;
  r.regime = "transition";
  double a = d.pair.a;
  r.terms = {{"quadratic", -0.5 * s * s * (1.0 - a) * (1.0 + a)},
             {"linear", v * s * d.V},
             {"theta", std::log(th)},
             {"barnes", a_of_v(v)},
             {"tail", tail}};
  r.total = sum_terms(r.terms);
  r.error_budget = cfg.C0 + cfg.cJ * std::pow(s, -0.25) * std::log(s);
  if (s < cfg.s0) r.warning = "s below configured s0";
  return r;
}

double phase_phi(double s, double v) {
  return 4.0 * s - 4.0 * v / kPi * std::log(4.0 * s) + 2.0 * arg_gamma_ratio(v);
}

double dlogdet_expansion(double s, double v, const Config& cfg) {
  (void)cfg;
  if (!(s > 0.0) || v < 0.0)
    throw std::domain_error("dlogdet_expansion: need s > 0, v >= 0");
  if (v == 0.0) return 0.0;
  double base = -4.0 * v / kPi + 2.0 * v * v / (kPi * kPi * s);
  return base + v * v / (2.0 * kPi * kPi * s * s) * std::sin(phase_phi(s, v));
}

AsymptoticResult fh_toeplitz_expansion(int n, double s, double v,
                                       const Config& cfg) {
  if (n < 1 || !(s > 0.0) || !(v >= 0.0))
    throw std::domain_error("fh_toeplitz_expansion: bad arguments");
  double t = 2.0 * s / n;
  if (!(t > 0.0 && t < kPi))
    throw std::domain_error("fh_toeplitz_expansion: 2s/n out of range");
  AsymptoticResult r;
  r.regime = "fh_toeplitz";
  r.terms = {{"linear", -4.0 * v / kPi * s},
             {"log", 2.0 * v * v / (kPi * kPi) * std::log(2.0 * n * std::sin(t))},
             {"barnes", log_barnes_pair(v)}};
  r.total = sum_terms(r.terms);
  r.error_budget = cfg.c1 * v / s + cfg.c2 * v * v * v / s;
  if (t >= cfg.t0)
    r.warning = "2s/n >= t0: outside the small-arc hypothesis";
  return r;
}

}  // namespace sinegas
