#include "sinegas/specfun.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace sinegas {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2Pi = 1.8378770664093454835606594728112353;

// B_2, B_4, ..., B_24
constexpr double kBernoulli[] = {
    1.0 / 6,           -1.0 / 30,         1.0 / 42,
    -1.0 / 30,         5.0 / 66,          -691.0 / 2730,
    7.0 / 6,           -3617.0 / 510,     43867.0 / 798,
    -174611.0 / 330,   854513.0 / 138,    -236364091.0 / 2730};

}  // namespace

double zeta_int(int n) {
  if (n < 2) throw std::domain_error("zeta_int: argument must be >= 2");
  static std::vector<double> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  if (n - 2 < static_cast<int>(cache.size())) return cache[n - 2];
  for (int m = static_cast<int>(cache.size()) + 2; m <= n; ++m) {
    const int J = 64;
    double s = 0.0;
    for (int j = J; j >= 1; --j) s += std::pow(double(j), -m);
    // Euler-Maclaurin tail beyond J
    double t = std::pow(double(J), 1.0 - m) / (m - 1) -
               0.5 * std::pow(double(J), double(-m));
    double fac = double(m);
    double Jp = std::pow(double(J), -m - 1.0);
    t += kBernoulli[0] / 2.0 * fac * Jp;
    fac *= (m + 1.0) * (m + 2.0);
    Jp /= double(J) * double(J);
    t += kBernoulli[1] / 24.0 * fac * Jp;
    fac *= (m + 3.0) * (m + 4.0);
    Jp /= double(J) * double(J);
    t += kBernoulli[2] / 720.0 * fac * Jp;
    cache.push_back(s + t);
  }
  return cache[n - 2];
}

namespace {

// Stirling series; requires Re(w) >= 10.
cplx log_gamma_stirling(cplx w) {
  cplx lw = std::log(w);
  cplx sum = (w - 0.5) * lw - w + 0.5 * kLn2Pi;
  cplx w2 = w * w;
  cplx wp = w;
  for (int k = 1; k <= 12; ++k) {
    sum += kBernoulli[k - 1] / ((2.0 * k) * (2.0 * k - 1.0)) / wp;
    wp *= w2;
  }
  return sum;
}

}  // namespace

cplx log_gamma(cplx z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
    throw std::domain_error("log_gamma: pole at nonpositive integer");
  cplx shift = 0.0;
  cplx w = z;
  while (w.real() < 10.0) {
    shift += std::log(w);
    w += 1.0;
  }
  return log_gamma_stirling(w) - shift;
}

namespace {

// ln G(1+z) Taylor series on |z| <= 0.5:
//   (z/2) ln 2pi - z(z+1)/2 - gamma z^2/2 + sum_{n>=3} (-1)^{n-1} zeta(n-1) z^n / n
cplx log_barnes_taylor(cplx z) {
  cplx sum = 0.5 * z * kLn2Pi - 0.5 * z * (z + 1.0) -
             0.5 * euler_gamma_const * z * z;
  cplx zp = z * z;
  double sgn = 1.0;
  for (int n = 3; n <= 80; ++n) {
    zp *= z;
    cplx term = sgn * zeta_int(n - 1) / double(n) * zp;
    sum += term;
    if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) break;
    sgn = -sgn;
  }
  return sum;
}

// Large-argument expansion of ln G(1+w), |w| >= 10, |arg w| < pi, obtained
// by integrating d/dz ln G(1+z) = (1/2) ln 2pi + 1/2 - z + z psi(z) against
// the Stirling series of psi:
//   w^2 (ln w / 2 - 3/4) + (w/2) ln 2pi - (1/12) ln w + zeta'(-1)
//   + sum_{k>=1} B_{2k+2} / (2k (2k+2) w^{2k})
cplx log_barnes_asymptotic(cplx w) {
  cplx lw = std::log(w);
  cplx sum = w * w * (0.5 * lw - 0.75) + 0.5 * w * kLn2Pi - lw / 12.0 +
             zeta_prime_minus_one;
  cplx w2 = w * w;
  cplx wp = w2;
  for (int k = 1; k <= 10; ++k) {
    double tk = 2.0 * k;
    sum += kBernoulli[k] / (tk * (tk + 2.0)) / wp;
    wp *= w2;
  }
  return sum;
}

}  // namespace

cplx log_barnes_g1p(cplx z) {
  if (std::abs(z) <= 0.5) return log_barnes_taylor(z);
  int m = static_cast<int>(std::ceil(std::max(0.0, 10.0 - z.real())));
  while (std::abs(z + double(m)) < 10.0) ++m;
  cplx sum = 0.0;
  for (int j = 1; j <= m; ++j) sum += log_gamma(z + double(j));
  return log_barnes_asymptotic(z + double(m)) - sum;
}

double log_barnes_pair(double v) {
  if (v < 0.0) throw std::domain_error("log_barnes_pair: v must be >= 0");
  if (v == 0.0) return 0.0;
  // G(1+conj z) = conj G(1+z), so the pair is |G(1+iy)|^2.
  return 4.0 * log_barnes_g1p(cplx(0.0, v / kPi)).real();
}

double arg_gamma_ratio(double v) {
  if (v <= 0.0)
    throw std::domain_error("arg_gamma_ratio: undefined at v <= 0");
  return 2.0 * log_gamma(cplx(0.0, v / kPi)).imag();
}

EllipticPair elliptic_ke(double a) {
  if (!(a > 0.0 && a < 1.0))
    throw std::domain_error("elliptic_ke: modulus must lie in (0,1)");
  auto agm_ke = [](double k, double kc, double& K, double& E) {
    double an = 1.0, bn = kc, cn = k;
    double sum = 0.5 * cn * cn;
    double pw = 0.5;
    for (int it = 0; it < 40 && std::fabs(cn) > 1e-18 * an; ++it) {
      double an1 = 0.5 * (an + bn);
      double bn1 = std::sqrt(an * bn);
      cn = 0.5 * (an - bn);
      an = an1;
      bn = bn1;
      pw *= 2.0;
      sum += pw * cn * cn;
    }
    K = kPi / (2.0 * an);
    E = K * (1.0 - sum);
  };
  EllipticPair p;
  p.a = a;
  p.a_prime = std::sqrt((1.0 - a) * (1.0 + a));
  agm_ke(a, p.a_prime, p.K, p.E);
  agm_ke(p.a_prime, a, p.K_prime, p.E_prime);
  return p;
}

EllipticDerivs elliptic_derivatives(const EllipticPair& p) {
  EllipticDerivs d;
  double m1 = (1.0 - p.a) * (1.0 + p.a);
  d.dK_da = (p.E - m1 * p.K) / (p.a * m1);
  d.dE_da = (p.E - p.K) / p.a;
  return d;
}

ThetaContext::ThetaContext(cplx tau_, double eps_) : tau(tau_), eps(eps_) {
  if (tau.real() != 0.0 || !(tau.imag() > 0.0))
    throw std::domain_error("ThetaContext: tau must be purely imaginary with Im > 0");
  q = std::exp(-kPi * tau.imag());
  m_max = static_cast<int>(
              std::ceil(std::sqrt(std::log(1.0 / eps) / (kPi * tau.imag())))) +
          2;
}

namespace {

int theta_trunc(double T, double abs_im_z, double eps) {
  double b = kPi * abs_im_z;
  double L = std::log(1.0 / eps);
  double m = (b + std::sqrt(b * b + kPi * T * L)) / (kPi * T);
  if (!(m < 1e6))
    throw std::runtime_error("theta: truncation bound unattainable (q too close to 1)");
  return static_cast<int>(std::ceil(m)) + 2;
}

// d^dx/dz^dx [d/dtau]^{dtau} theta_3(z|tau), dx <= 3, via the q-series.
// Terms are assembled from exp(ln q^{k^2} +/- 2 pi k Im z) so that no
// intermediate overflows even when the shifted arguments carry Im z ~ T/2.
cplx theta3_core(cplx z, double T, int dx, bool dtau, double eps) {
  int m = theta_trunc(T, std::fabs(z.imag()), eps);
  cplx sum = (dx == 0 && !dtau) ? 1.0 : 0.0;
  for (int k = 1; k <= m; ++k) {
    double lnq = -kPi * T * k * k;
    double re2 = 2.0 * kPi * k * z.real();
    double eplus = std::exp(lnq - 2.0 * kPi * k * z.imag());
    double eminus = std::exp(lnq + 2.0 * kPi * k * z.imag());
    cplx ep(eplus * std::cos(re2), eplus * std::sin(re2));    // q^{k^2} e^{2 pi i k z}
    cplx em(eminus * std::cos(re2), -eminus * std::sin(re2)); // q^{k^2} e^{-2 pi i k z}
    cplx c = ep + em;                // 2 q^{k^2} cos(2 pi k z)
    cplx s = cplx(0, -1) * (ep - em);  // 2 q^{k^2} sin(2 pi k z)
    double w = 2.0 * kPi * k;
    cplx term;
    switch (dx) {
      case 0: term = c; break;
      case 1: term = -w * s; break;
      case 2: term = -w * w * c; break;
      default: term = w * w * w * s; break;
    }
    if (dtau) term *= cplx(0, kPi * k * k);
    sum += term;
  }
  return sum;
}

}  // namespace

cplx theta(int j, cplx z, const ThetaContext& ctx, int dx_order, bool dtau) {
  if (j < 0 || j > 3) throw std::invalid_argument("theta: index must be 0..3");
  if (dx_order < 0 || dx_order > 2)
    throw std::invalid_argument("theta: dx_order must be 0, 1 or 2");
  double T = ctx.tau.imag();
  if (j == 3) return theta3_core(z, T, dx_order, dtau, ctx.eps);
  if (j == 0) return theta3_core(z + 0.5, T, dx_order, dtau, ctx.eps);

  // theta_2(z) =    e^{i pi tau/4 + i pi z} theta_3(z + tau/2)
  // theta_1(z) = -i e^{i pi tau/4 + i pi z} theta_3(z + 1/2 + tau/2)
  const cplx I(0.0, 1.0);
  cplx w = z + ctx.tau / 2.0 + (j == 1 ? 0.5 : 0.0);
  cplx pref = std::exp(I * kPi * ctx.tau / 4.0 + I * kPi * z);
  if (j == 1) pref *= -I;
  auto th = [&](int dx, bool dt) { return theta3_core(w, T, dx, dt, ctx.eps); };

  const cplx ip = I * kPi;
  cplx val;
  if (!dtau) {
    switch (dx_order) {
      case 0: val = th(0, false); break;
      case 1: val = ip * th(0, false) + th(1, false); break;
      default:
        val = ip * ip * th(0, false) + 2.0 * ip * th(1, false) + th(2, false);
    }
    return pref * val;
  }
  // tau-derivative: prefactor contributes i pi/4, the shifted argument
  // contributes theta_3'(w)/2 on top of the explicit tau-dependence.
  auto dtau_of = [&](int dx) {
    return ip / 4.0 * th(dx, false) + 0.5 * theta3_core(w, T, dx + 1, false, ctx.eps) +
           th(dx, true);
  };
  switch (dx_order) {
    case 0: val = dtau_of(0); break;
    case 1: val = ip * dtau_of(0) + dtau_of(1); break;
    default: val = ip * ip * dtau_of(0) + 2.0 * ip * dtau_of(1) + dtau_of(2);
  }
  return pref * val;
}

}  // namespace sinegas
