#include "sinegas/mfun.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sinegas/oracles.hpp"

namespace sinegas {

namespace {
constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

double require_real(cplx z, const char* what) {
  if (!(std::fabs(z.imag()) < 1e-9 * (1.0 + std::abs(z))))
    throw std::runtime_error(std::string(what) + ": lost realness");
  return z.real();
}
}  // namespace

MContext::MContext(EllipticData ed, double theta_eps)
    : data(ed), theta_ctx(ed.tau, theta_eps), d(-ed.tau / 4.0) {
  // denominators of the Xi_j ratios must not vanish
  if (std::abs(theta(0, d, theta_ctx)) < 1e-12 ||
      std::abs(theta(2, d, theta_ctx)) < 1e-12)
    throw std::runtime_error("MContext: theta_0(d) or theta_2(d) vanished");
}

MContext MContext::from_kappa(double kappa) {
  return MContext(build_elliptic_data(kappa));
}

namespace detail {

cplx xi_complex(int j, double x, const MContext& ctx) {
  if (j != 0 && j != 2) throw std::invalid_argument("xi: j must be 0 or 2");
  const ThetaContext& tc = ctx.theta_ctx;
  cplx t30 = theta(3, 0.0, tc);
  cplx t3x = theta(3, x, tc);
  assert(std::abs(t3x) > 0.0);
  cplx num = theta(j, x + ctx.d, tc) * theta(j, x - ctx.d, tc);
  cplx den = theta(j, ctx.d, tc);
  return 2.0 * (t30 * t30) / (t3x * t3x) * num / (den * den);
}

cplx theta0_big_complex(double x, const MContext& ctx) {
  const ThetaContext& tc = ctx.theta_ctx;
  const double a = ctx.data.pair.a;
  const cplx c = ctx.data.c;
  auto L = [&](cplx z) { return theta(0, z, tc, 1) / theta(0, z, tc); };
  auto L2 = [&](cplx z) { return theta(0, z, tc, 2) / theta(0, z, tc); };
  cplx Lp = L(x + ctx.d), Lm = L(x - ctx.d), Ld = L(ctx.d);
  cplx dLd = L2(ctx.d) - Ld * Ld;  // (theta0'(d)/theta0(d))'
  return 5.0 * c * c * (L2(x + ctx.d) - 2.0 * dLd + L2(x - ctx.d)) +
         14.0 * c * c * Lm * Lp -
         4.0 * c * c * (Lm + Ld - Lp) * Ld -
         2.0 * c * (1.0 + a) * (Lp - 2.0 * Ld - Lm) -
         2.0 * (2.0 + a);
}

cplx m_eval_complex(double x, const MContext& ctx) {
  const ThetaContext& tc = ctx.theta_ctx;
  const double a = ctx.data.pair.a;
  cplx first = (xi_complex(0, x, ctx) * theta0_big_complex(x, ctx) +
                6.0 * a * xi_complex(2, x, ctx)) /
               (48.0 * a * (1.0 + a));
  cplx ratio = theta(3, x, tc, 2) / theta(3, x, tc);
  cplx second = kI / (4.0 * kPi) * ctx.data.kappa * ratio * ctx.data.dtau_dkappa;
  return first + second;
}

}  // namespace detail

double xi(int j, double x, const MContext& ctx) {
  return require_real(detail::xi_complex(j, x, ctx), "xi");
}

double theta0_big(double x, const MContext& ctx) {
  return require_real(detail::theta0_big_complex(x, ctx), "theta0_big");
}

double m_eval(double x, const MContext& ctx) {
  return require_real(detail::m_eval_complex(x, ctx), "m_eval");
}

double m_eval(double x, double kappa) {
  return m_eval(x, MContext::from_kappa(kappa));
}

FourierTable fourier_coeffs(double kappa, int n_modes, int grid) {
  if (n_modes < 1) throw std::domain_error("fourier_coeffs: need n_modes >= 1");
  int G = grid > 0 ? grid : std::max(256, 8 * n_modes);
  MContext ctx = MContext::from_kappa(kappa);
  std::vector<double> mv(G);
  for (int g = 0; g < G; ++g) mv[g] = m_eval(double(g) / G, ctx);
  FourierTable t;
  t.kappa = kappa;
  t.n_modes = n_modes;
  t.a.resize(n_modes + 1);
  for (int n = 0; n <= n_modes; ++n) {
    cplx s = 0.0;
    for (int g = 0; g < G; ++g) {
      double ph = -2.0 * kPi * n * g / double(G);
      s += mv[g] * cplx(std::cos(ph), std::sin(ph));
    }
    t.a[n] = s / double(G);
  }
  return t;
}

// ---------------------------------------------------------------------------
// Chebyshev helpers (Lobatto grid) in t = ln u.

namespace {

std::vector<double> cheb_fit(const std::vector<double>& vals) {
  // values at t_j = cos(pi j / (N-1)), j = 0..N-1  ->  coefficients
  int N = static_cast<int>(vals.size());
  std::vector<double> c(N, 0.0);
  for (int k = 0; k < N; ++k) {
    double s = 0.0;
    for (int j = 0; j < N; ++j) {
      double w = (j == 0 || j == N - 1) ? 0.5 : 1.0;
      s += w * vals[j] * std::cos(kPi * k * j / (N - 1));
    }
    c[k] = 2.0 * s / (N - 1);
  }
  c[0] *= 0.5;
  c[N - 1] *= 0.5;
  return c;
}

double cheb_eval(const std::vector<double>& c, double xi) {
  // Clenshaw on [-1,1]
  double b1 = 0.0, b2 = 0.0;
  for (int k = static_cast<int>(c.size()) - 1; k >= 1; --k) {
    double b0 = 2.0 * xi * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return xi * b1 - b2 + c[0];
}

}  // namespace

TailTable TailTable::build(double kappa_max, int n_modes, int n_cheb,
                           double u_min) {
  if (!(kappa_max > u_min))
    throw std::domain_error("TailTable: kappa_max must exceed u_min");
  TailTable t;
  t.u_min = u_min;
  t.u_max = kappa_max;
  t.n_modes = n_modes;
  t.n_cheb = n_cheb;
  double t0 = std::log(u_min), t1 = std::log(kappa_max);
  std::vector<std::vector<double>> a_vals(n_modes + 1,
                                          std::vector<double>(n_cheb));
  std::vector<double> v_vals(n_cheb), d_vals(n_cheb);
  int G = std::max(256, 8 * n_modes);
  for (int j = 0; j < n_cheb; ++j) {
    double xi_j = std::cos(kPi * j / (n_cheb - 1));
    double u = std::exp(0.5 * (t0 + t1) + 0.5 * (t1 - t0) * xi_j);
    u = std::min(std::max(u, u_min), kappa_max);  // exp/log edge roundoff
    MContext ctx = MContext::from_kappa(u);
    v_vals[j] = ctx.data.V;
    d_vals[j] = 1.0 / ctx.data.pair.K_prime;  // = -(V - u V') by Legendre
    std::vector<double> mv(G);
    for (int g = 0; g < G; ++g) mv[g] = m_eval(double(g) / G, ctx);
    for (int n = 0; n <= n_modes; ++n) {
      double s = 0.0;  // M is real and even in x: modes are real cosine means
      for (int g = 0; g < G; ++g)
        s += mv[g] * std::cos(2.0 * kPi * n * g / double(G));
      a_vals[n][j] = s / double(G);
    }
  }
  t.a_coef.resize(n_modes + 1);
  for (int n = 0; n <= n_modes; ++n) t.a_coef[n] = cheb_fit(a_vals[n]);
  t.v_coef = cheb_fit(v_vals);
  t.d_coef = cheb_fit(d_vals);
  return t;
}

namespace {
double to_xi(const TailTable& t, double u) {
  double t0 = std::log(t.u_min), t1 = std::log(t.u_max);
  return (2.0 * std::log(u) - (t0 + t1)) / (t1 - t0);
}
}  // namespace

double TailTable::a_mode(int n, double u) const {
  return cheb_eval(a_coef[n], to_xi(*this, u));
}
double TailTable::V(double u) const { return cheb_eval(v_coef, to_xi(*this, u)); }
double TailTable::D(double u) const { return cheb_eval(d_coef, to_xi(*this, u)); }

double tail_a0_integral(double kappa, const TailTable& table) {
  if (!(kappa > 0.0)) throw std::domain_error("tail_a0_integral: kappa <= 0");
  if (kappa > table.u_max * (1.0 + 1e-12))
    throw std::domain_error("tail_a0_integral: kappa beyond table range");
  // left tail below u_min from the quadratic model a_0(u) ~ a_0(u_min)(u/u_min)^2
  if (kappa <= table.u_min) {
    double a0k = table.a_mode(0, std::max(kappa, table.u_min));
    return 0.5 * a0k * (kappa * kappa) / (table.u_min * table.u_min);
  }
  double left = 0.5 * table.a_mode(0, table.u_min);
  // int_{u_min}^{kappa} a_0(u) du/u = int a_0(e^t) dt, Gauss-Legendre in t
  const Quadrature& q = Quadrature::gauss_legendre(64);
  double t0 = std::log(table.u_min), t1 = std::log(kappa);
  double s = 0.0;
  for (int i = 0; i < q.order; ++i) {
    double tt = 0.5 * (t0 + t1) + 0.5 * (t1 - t0) * q.x[i];
    s += q.w[i] * table.a_mode(0, std::exp(tt));
  }
  return left + 0.5 * (t1 - t0) * s;
}

namespace {

// One n != 0 mode: 2 Re int_{u_min}^{kappa} a_n(u) e^{i psi(u)} du/u in
// t = ln u, psi(t) = 2 pi n v V(u)/u, psi'(t) = 2 pi n v D(u)/u > 0.
// Linear-phase/linear-amplitude Filon panels sized by phase curvature.
double filon_mode(const TailTable& tbl, int n, double v, double kappa) {
  double t0 = std::log(tbl.u_min), t1 = std::log(kappa);
  auto psi = [&](double t) {
    double u = std::exp(t);
    return 2.0 * kPi * n * v * tbl.V(u) / u;
  };
  auto dpsi = [&](double t) {
    double u = std::exp(t);
    return 2.0 * kPi * n * v * tbl.D(u) / u;
  };
  auto amp = [&](double t) { return tbl.a_mode(n, std::exp(t)); };

  cplx acc = 0.0;
  double tb = t1;
  double Ab = amp(tb), pb = psi(tb);
  while (tb > t0) {
    double rate = dpsi(tb);
    // left-tail cutoff: the remaining contribution is bounded by the
    // integration-by-parts boundary term
    if (std::fabs(Ab) / rate < 1e-14 && std::fabs(amp((t0 + tb) / 2)) / rate < 1e-14)
      break;
    double h = std::min({0.25, std::sqrt(0.15 / rate), tb - t0});
    h = std::max(h, 1e-6);
    double ta = std::max(t0, tb - h);
    double Aa = amp(ta), pa = psi(ta);
    double w = pb - pa;
    cplx ea = std::polar(1.0, pa), eb = std::polar(1.0, pb);
    double hh = tb - ta;
    if (std::fabs(w) < 1e-8) {
      acc += 0.5 * (Aa * ea + Ab * eb) * hh;
    } else {
      // int_0^1 (Aa + (Ab-Aa) y) e^{i(pa + w y)} dy * hh
      cplx iw(0.0, w);
      cplx c1 = (eb - ea) / iw;
      cplx c2 = (eb - c1) / iw;
      acc += hh * (Aa * c1 + (Ab - Aa) * c2);
    }
    tb = ta;
    Ab = Aa;
    pb = pa;
  }
  return 2.0 * acc.real();
}

}  // namespace

double tail_integral(double s, double v, const TailTable& table,
                     double* a0_part) {
  if (!(s > 0.0) || !(v > 0.0))
    throw std::domain_error("tail_integral: need s > 0, v > 0");
  double kappa = v / s;
  if (kappa > table.u_max * (1.0 + 1e-12))
    throw std::domain_error("tail_integral: kappa beyond table range");
  double a0 = tail_a0_integral(kappa, table);
  if (a0_part) *a0_part = a0;
  if (kappa <= table.u_min) return a0;  // all modes are O(u_min^2/v)
  double total = a0;
  for (int n = 1; n <= table.n_modes; ++n) total += filon_mode(table, n, v, kappa);
  return total;
}

double tail_integral(double s, double v) {
  double kappa = v / s;
  TailTable t = TailTable::build(std::max(kappa, 2e-4));
  return tail_integral(s, v, t);
}

}  // namespace sinegas
