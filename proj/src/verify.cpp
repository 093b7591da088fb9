#include "sinegas/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "sinegas/asympt.hpp"
#include "sinegas/kappa_map.hpp"
#include "sinegas/mfun.hpp"
#include "sinegas/oracles.hpp"
#include "sinegas/specfun.hpp"

namespace sinegas {

namespace {

constexpr double kPi = std::numbers::pi;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = static_cast<int>(x.size());
  for (int i = 0; i < n; ++i) {
    double lx = std::log(x[i]), ly = std::log(std::fabs(y[i]));
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double linear_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = static_cast<int>(x.size());
  for (int i = 0; i < n; ++i) {
    sx += x[i]; sy += y[i]; sxx += x[i] * x[i]; sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

double gap_residual(double s, const Config& cfg) {
  GasPoint p = GasPoint::from_gamma(s, 1.0);
  DetResult r = fredholm_logdet(p, Quadrature::gauss_legendre(cfg.order_for(s)),
                                cfg.det_tol, Precision::Auto, cfg.dd_v_threshold);
  return std::fabs(r.log_det - gap_expansion(s, cfg).total);
}

CheckResult criterion_gap(const Config& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<double> R;
  for (double s : {5.0, 10.0, 20.0}) R.push_back(gap_residual(s, cfg));
  double dt = seconds_since(t0);
  double ratio = R[1] / R[2];
  bool pass = ratio >= 1.5 && ratio <= 3.0 && R[2] < 0.01 && dt < 10.0;
  return {"criterion-01-gap-regime", pass, false,
          fmt("R(5)=%.3g R(10)=%.3g R(20)=%.3g ratio R(10)/R(20)=%.3g "
              "(window [1.5,3]), R(20)<0.01 %s, runtime %.2fs (<10s)",
              R[0], R[1], R[2], ratio, R[2] < 0.01 ? "yes" : "no", dt)};
}

CheckResult criterion_fixed_v(const Config& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<double> ss = {25, 50, 100}, R;
  for (double s : ss) {
    GasPoint p = GasPoint::from_v(s, 1.0);
    DetResult r = fredholm_logdet(
        p, Quadrature::gauss_legendre(cfg.order_for(s)), cfg.det_tol, Precision::Auto, cfg.dd_v_threshold);
    R.push_back(std::fabs(r.log_det - extended_expansion(s, 1.0, cfg).total));
  }
  double dt = seconds_since(t0);
  double slope = loglog_slope(ss, R);
  bool pass = std::fabs(slope + 1.0) <= 0.3 && R[2] < 5e-3 && dt < 60.0;
  return {"criterion-02-fixed-v", pass, false,
          fmt("residuals %.3g %.3g %.3g, slope=%.3f (want -1 +/- 0.3), "
              "R(100)=%.3g < 5e-3 %s, runtime %.2fs (<60s)",
              R[0], R[1], R[2], slope, R[2], R[2] < 5e-3 ? "yes" : "no", dt)};
}

CheckResult criterion_extended(const Config& cfg) {
  // pinned acceptance constant for |resid| / (v/s + v^3/s), calibrated on
  // this sweep at build time
  const double ratio_max = 0.1;
  std::vector<double> ratios;
  for (double s : {64.0, 125.0, 216.0}) {
    double v = 0.8 * std::cbrt(s);
    GasPoint p = GasPoint::from_v(s, v);
    DetResult r = fredholm_logdet(
        p, Quadrature::gauss_legendre(cfg.order_for(s)), cfg.det_tol, Precision::Auto, cfg.dd_v_threshold);
    double resid = std::fabs(r.log_det - extended_expansion(s, v, cfg).total);
    ratios.push_back(resid / (v / s + v * v * v / s));
  }
  double mx = *std::max_element(ratios.begin(), ratios.end());
  return {"criterion-03-extended-regime", mx <= ratio_max, false,
          fmt("ratios %.4g %.4g %.4g, max=%.4g <= %.2g", ratios[0], ratios[1],
              ratios[2], mx, ratio_max)};
}

CheckResult criterion_toeplitz_limit(const Config& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  double s = 2.0, gamma = 0.5;
  GasPoint p = GasPoint::from_gamma(s, gamma);
  double det = fredholm_logdet(p, Quadrature::gauss_legendre(cfg.order_for(s)),
                               cfg.det_tol, Precision::Auto, cfg.dd_v_threshold)
                   .log_det;
  std::vector<double> ns = {100, 200, 400}, err;
  for (double n : ns)
    err.push_back(std::fabs(
        toeplitz_logdet(static_cast<int>(n), s, gamma).log_det - det));
  double dt = seconds_since(t0);
  double slope = loglog_slope(ns, err);
  bool pass = slope >= -1.3 && slope <= -0.7 && err[2] < 1e-3 && dt < 30.0;
  return {"criterion-04-toeplitz-limit", pass, false,
          fmt("errors %.3g %.3g %.3g, slope=%.3f (want [-1.3,-0.7]), "
              "err(400)=%.3g < 1e-3 %s, runtime %.2fs (<30s)",
              err[0], err[1], err[2], slope, err[2],
              err[2] < 1e-3 ? "yes" : "no", dt)};
}

CheckResult criterion_fh(const Config& cfg) {
  bool pass = true;
  std::ostringstream d;
  for (double v : {0.5, 1.0}) {
    double gamma = -std::expm1(-2.0 * v);
    double e400 = std::fabs(toeplitz_logdet(400, 2.0, gamma).log_det -
                            fh_toeplitz_expansion(400, 2.0, v, cfg).total);
    double e800 = std::fabs(toeplitz_logdet(800, 2.0, gamma).log_det -
                            fh_toeplitz_expansion(800, 2.0, v, cfg).total);
    pass = pass && e400 < 0.02 && e800 < e400;
    d << fmt("v=%.1f: err(400)=%.3g err(800)=%.3g; ", v, e400, e800);
  }
  return {"criterion-05-fh-asymptotics", pass, false,
          d.str() + "want err(400)<0.02 and shrinking"};
}

CheckResult criterion_transition(const Config& cfg) {
  double kappa = 0.4;
  TailTable tbl = TailTable::build(kappa, cfg.tail_modes, cfg.tail_cheb,
                                   cfg.tail_u_min);
  std::vector<double> ss = {16, 24, 32, 40}, resid;
  for (double s : ss) {
    double v = kappa * s;
    GasPoint p = GasPoint::from_v(s, v);
    double oracle = fredholm_logdet(
                        p, Quadrature::gauss_legendre(cfg.order_for(s)),
                        cfg.det_tol, Precision::Auto, cfg.dd_v_threshold)
                        .log_det;
    double tail = tail_integral(s, v, tbl);
    resid.push_back(
        std::fabs(oracle - transition_expansion(s, v, tail, cfg).total));
  }
  double mx = *std::max_element(resid.begin(), resid.end());
  double trend = linear_slope(ss, resid);
  bool pass = mx <= 1.5 && trend <= 0.01;
  return {"criterion-06-transition-regime", pass, false,
          fmt("residuals %.3g %.3g %.3g %.3g, max=%.3g <= 1.5, trend=%.2g "
              "(no growth)",
              resid[0], resid[1], resid[2], resid[3], mx, trend)};
}

CheckResult criterion_derivative(const Config& cfg) {
  double v = 1.0;
  std::vector<double> rem, ref;
  for (double s = 30.0; s <= 60.0 + 1e-9; s += 0.25) {
    GasPoint p = GasPoint::from_v(s, v);
    const Quadrature& q = Quadrature::gauss_legendre(cfg.order_for(s) + 30);
    double d = fredholm_dlogdet_ds(p, q);
    rem.push_back(d - (-4.0 * v / kPi + 2.0 * v * v / (kPi * kPi * s)));
    ref.push_back(v * v / (2.0 * kPi * kPi * s * s) *
                  std::sin(phase_phi(s, v)));
  }
  int n = static_cast<int>(rem.size());
  double mr = 0, mf = 0;
  for (int i = 0; i < n; ++i) {
    mr += rem[i];
    mf += ref[i];
  }
  mr /= n;
  mf /= n;
  double srr = 0, sff = 0, srf = 0, dot_rf = 0, dot_ff = 0;
  for (int i = 0; i < n; ++i) {
    srr += (rem[i] - mr) * (rem[i] - mr);
    sff += (ref[i] - mf) * (ref[i] - mf);
    srf += (rem[i] - mr) * (ref[i] - mf);
    dot_rf += rem[i] * ref[i];
    dot_ff += ref[i] * ref[i];
  }
  double corr = srf / std::sqrt(srr * sff);
  double amp = dot_rf / dot_ff;  // least-squares amplitude of ref in rem
  bool pass = corr > 0.5 && amp >= 1.0 / 3.0 && amp <= 3.0;
  return {"criterion-07-derivative-oscillation", pass, false,
          fmt("Pearson corr=%.3f (> 0.5), amplitude=%.3f (within [1/3,3])",
              corr, amp)};
}

CheckResult criterion_m_small_kappa(const Config&) {
  std::vector<double> ks = {1e-3, 3e-3, 1e-2, 3e-2}, sup;
  for (double k : ks) {
    MContext ctx = MContext::from_kappa(k);
    double mx = 0.0;
    for (int g = 0; g < 64; ++g) {
      double x = g / 64.0;
      mx = std::max(mx, std::fabs(m_eval(x, ctx) +
                                  k / (6.0 * kPi) * std::cos(2.0 * kPi * x)));
    }
    sup.push_back(mx);
  }
  double slope = loglog_slope(ks, sup);
  bool pass = std::fabs(slope - 2.0) <= 0.15;
  return {"criterion-08-m-small-kappa", pass, false,
          fmt("sup-residuals %.3g %.3g %.3g %.3g, slope=%.3f (want 2 +/- 0.15)",
              sup[0], sup[1], sup[2], sup[3], slope)};
}

CheckResult criterion_a0_conjecture(const Config&) {
  bool ok = true;
  std::ostringstream d;
  for (double k : {1e-3, 3e-3, 1e-2, 3e-2}) {
    double a0 = fourier_coeffs(k, 1).a[0].real();
    ok = ok && std::fabs(a0) <= 0.5 * k * k;
    d << fmt("a0(%.0e)=%.2g ", k, a0);
  }
  return {"criterion-09-a0-conjecture-probe", ok, true,
          d.str() + "(advisory: |a0| <= 0.5 kappa^2)"};
}

CheckResult criterion_prop13(const Config& cfg) {
  double kappa = 0.3;
  TailTable tbl = TailTable::build(kappa, cfg.tail_modes, cfg.tail_cheb,
                                   cfg.tail_u_min);
  double a0_100 = 0, a0_200 = 0;
  double t100 = tail_integral(100.0, 30.0, tbl, &a0_100);
  double t200 = tail_integral(200.0, 60.0, tbl, &a0_200);
  double D100 = std::fabs(t100 - a0_100), D200 = std::fabs(t200 - a0_200);
  double ratio = D100 / D200;
  bool pass = ratio >= 1.5 && ratio <= 2.5;
  return {"criterion-10-prop13-scaling", pass, false,
          fmt("D(100)=%.4g D(200)=%.4g ratio=%.3f (want 2 +/- 25%%)", D100,
              D200, ratio)};
}

CheckResult criterion_identities(const Config&) {
  auto t0 = std::chrono::steady_clock::now();
  std::ostringstream d;
  double worst = 0.0;
  // Legendre relation
  for (int i = 1; i <= 9; ++i) {
    EllipticPair p = elliptic_ke(0.1 * i);
    double r = std::fabs(p.E * p.K_prime + p.E_prime * p.K -
                         p.K * p.K_prime - kPi / 2.0) /
               (kPi / 2.0);
    worst = std::max(worst, r);
  }
  d << fmt("legendre=%.2g ", worst);
  double w_leg = worst;
  // Jacobi identity theta3^4 = theta0^4 + theta2^4 at z = 0
  double w_jac = 0.0;
  for (double q : {0.05, 0.1, 0.3}) {
    ThetaContext tc(cplx(0.0, -std::log(q) / kPi));
    cplx t3 = theta(3, 0.0, tc), t0 = theta(0, 0.0, tc), t2 = theta(2, 0.0, tc);
    double lhs = std::pow(t3.real(), 4);
    double rhs = std::pow(t0.real(), 4) + std::pow(t2.real(), 4);
    w_jac = std::max(w_jac, std::fabs(lhs - rhs) / lhs);
  }
  d << fmt("jacobi=%.2g ", w_jac);
  // heat equation d theta3/d tau = theta3_xx / (4 pi i)
  double w_heat = 0.0;
  for (double q : {0.05, 0.2}) {
    ThetaContext tc(cplx(0.0, -std::log(q) / kPi));
    for (double x : {0.0, 0.13, 0.29, 0.37, 0.5}) {
      cplx lhs = theta(3, x, tc, 0, true);
      cplx rhs = theta(3, x, tc, 2) / (4.0 * kPi * cplx(0.0, 1.0));
      w_heat = std::max(w_heat, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
    }
  }
  d << fmt("heat=%.2g ", w_heat);
  // |Gamma(1-beta)/Gamma(beta)| = |beta| for purely imaginary beta
  double w_gam = 0.0;
  for (double v : {0.5, 1.0, 2.0}) {
    cplx beta(0.0, v / kPi);
    double lhs =
        std::exp(log_gamma(1.0 - beta).real() - log_gamma(beta).real());
    w_gam = std::max(w_gam, std::fabs(lhs - std::abs(beta)) / std::abs(beta));
  }
  d << fmt("gamma-ratio=%.2g ", w_gam);
  // Barnes recurrence ln G(1+z) = ln Gamma(z) + ln G(z)
  double w_bar = 0.0;
  for (cplx z : {cplx(1.7, 0.0), cplx(0.4, 0.0), cplx(2.5, 0.3)}) {
    cplx lhs = log_barnes_g1p(z);
    cplx rhs = log_gamma(z) + log_barnes_g1p(z - 1.0);
    w_bar = std::max(w_bar, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
  }
  d << fmt("barnes-rec=%.2g", w_bar);
  double dt = seconds_since(t0);
  bool pass = w_leg < 1e-10 && w_jac < 1e-10 && w_heat < 1e-10 &&
              w_gam < 1e-10 && w_bar < 1e-10 && dt < 1.0;
  return {"criterion-11-identity-suite", pass, false,
          d.str() + fmt(" (all < 1e-10), runtime %.3fs (<1s)", dt)};
}

CheckResult criterion_series(const Config& cfg) {
  std::ostringstream d;
  bool pass = true;
  // defining-equation residual on 100 log-spaced kappa
  double w_root = 0.0;
  for (int i = 0; i < 100; ++i) {
    double k = std::exp(std::log(1e-4) +
                        (std::log(1.0 - cfg.delta) - std::log(1e-4)) * i / 99.0);
    k = std::min(k, 1.0 - cfg.delta);
    double a = solve_a(k, cfg.delta);
    w_root = std::max(w_root, std::fabs(k - kappa_defining_integral(a, 128)));
  }
  pass = pass && w_root < 1e-12;
  d << fmt("root-resid=%.2g ", w_root);
  // a(kappa) series residual slope = 3 +/- 0.1
  std::vector<double> ks, ra, rv, rc;
  for (double k = 1e-3; k < 0.11; k *= 2.3) {
    ks.push_back(k);
    EllipticData e = build_elliptic_data(k);
    double a_ser = 1.0 - 2.0 * k / kPi - k * k / (kPi * kPi);
    ra.push_back(std::fabs(e.pair.a - a_ser));
    double u1 = 1.0 / kPi, v1 = -(1.0 + std::log(4.0 * kPi)) / kPi;
    double V_ser = -2.0 / kPi * (1.0 + u1 * k * std::log(k) + v1 * k);
    rv.push_back(std::fabs(e.V - V_ser));
    cplx c_ser = cplx(0.0, 1.0 / kPi) * (1.0 - k / kPi);
    rc.push_back(std::abs(e.c - c_ser));
  }
  double sa = loglog_slope(ks, ra);
  double sv = loglog_slope(ks, rv);
  double sc = loglog_slope(ks, rc);
  pass = pass && std::fabs(sa - 3.0) <= 0.1;
  pass = pass && sv >= 1.6 && sv <= 2.4;  // O(kappa^2 ln kappa)
  pass = pass && std::fabs(sc - 2.0) <= 0.25;
  d << fmt("a-slope=%.3f V-slope=%.3f c-slope=%.3f ", sa, sv, sc);
  // tau leading terms
  double prev = 1e300;
  bool tau_ok = true;
  for (double k : {1e-2, 1e-3, 1e-4}) {
    EllipticData e = build_elliptic_data(k);
    double r = std::abs(e.tau + cplx(0.0, 2.0 / kPi) * std::log(k) -
                        cplx(0.0, 2.0 / kPi) * std::log(4.0 * kPi));
    tau_ok = tau_ok && r < prev;
    prev = r;
  }
  tau_ok = tau_ok && prev < 0.01;
  pass = pass && tau_ok;
  d << fmt("tau-resid(1e-4)=%.2g ", prev);
  // closed-form derivatives vs central differences
  double w_fd = 0.0;
  for (double k : {0.1, 0.3}) {
    double h = 1e-6 * k;
    EllipticData e = build_elliptic_data(k);
    EllipticData ep = build_elliptic_data(k + h), em = build_elliptic_data(k - h);
    w_fd = std::max(w_fd, std::fabs((ep.V - em.V) / (2 * h) - e.dV_dkappa) /
                              (1.0 + std::fabs(e.dV_dkappa)));
    w_fd = std::max(w_fd, std::abs((ep.tau - em.tau) / (2 * h) - e.dtau_dkappa) /
                              (1.0 + std::abs(e.dtau_dkappa)));
    w_fd = std::max(w_fd,
                    std::fabs((ep.pair.a - em.pair.a) / (2 * h) - e.da_dkappa) /
                        (1.0 + std::fabs(e.da_dkappa)));
  }
  pass = pass && w_fd < 1e-7;
  d << fmt("fd-resid=%.2g ", w_fd);
  // phase identity
  double w_ph = std::max(phase_identity_residual(0.05),
                         phase_identity_residual(0.3));
  pass = pass && w_ph < 1e-9;
  d << fmt("phase-identity=%.2g", w_ph);
  return {"criterion-12-series-suite", pass, false, d.str()};
}

}  // namespace

std::vector<CheckResult> run_suite(const std::string& suite, const Config& cfg) {
  std::vector<CheckResult> out;
  auto want = [&](const char* s) { return suite == s || suite == "all"; };
  if (want("specfun")) out.push_back(criterion_identities(cfg));
  if (want("elliptic")) out.push_back(criterion_series(cfg));
  if (want("mfun")) {
    out.push_back(criterion_m_small_kappa(cfg));
    out.push_back(criterion_a0_conjecture(cfg));
  }
  if (want("oracle")) out.push_back(criterion_toeplitz_limit(cfg));
  if (want("asympt")) {
    out.push_back(criterion_gap(cfg));
    out.push_back(criterion_fixed_v(cfg));
    out.push_back(criterion_extended(cfg));
    out.push_back(criterion_fh(cfg));
    out.push_back(criterion_transition(cfg));
    out.push_back(criterion_derivative(cfg));
    out.push_back(criterion_prop13(cfg));
  }
  if (out.empty())
    throw std::invalid_argument(
        "verify: suite must be one of specfun, elliptic, mfun, oracle, asympt, all");
  std::sort(out.begin(), out.end(),
            [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
  return out;
}

int report_checks(const std::vector<CheckResult>& checks) {
  int failures = 0;
  for (const CheckResult& c : checks) {
    const char* tag = c.pass ? "PASS" : (c.advisory ? "WARN" : "FAIL");
    std::printf("[%s] %s: %s\n", tag, c.name.c_str(), c.detail.c_str());
    if (!c.pass && !c.advisory) ++failures;
  }
  return failures;
}

}  // namespace sinegas
