#include "sinegas/kappa_map.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sinegas/oracles.hpp"

namespace sinegas {

namespace {
constexpr double kPi = std::numbers::pi;
}

double kappa_defining_integral(double a, int order) {
  // mu = a + (1-a) sin^2(theta):
  //   integrand dtheta = 2 (1-a) sin^2(theta) sqrt((mu + a)/(1 + mu))
  const Quadrature& q = Quadrature::gauss_legendre(order);
  double sum = 0.0;
  for (int i = 0; i < order; ++i) {
    double theta = 0.25 * kPi * (q.x[i] + 1.0);  // map (-1,1) -> (0, pi/2)
    double st = std::sin(theta);
    double mu = a + (1.0 - a) * st * st;
    sum += q.w[i] * 2.0 * (1.0 - a) * st * st * std::sqrt((mu + a) / (1.0 + mu));
  }
  return 0.25 * kPi * sum;
}

double solve_a(double kappa, double delta) {
  if (!(kappa > 0.0 && kappa <= 1.0 - delta))
    throw std::domain_error("solve_a: kappa outside (0, 1-delta]");
  // F(a) = kappa - I(a) is increasing in a: I(0+) = 1, I(1-) = 0.
  double lo = 1e-12, hi = 1.0 - 1e-12;
  double flo = kappa - kappa_defining_integral(lo);
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = kappa - kappa_defining_integral(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-9) break;
  }
  // secant polish
  double a0 = lo, a1 = hi;
  double f0 = kappa - kappa_defining_integral(a0);
  double f1 = kappa - kappa_defining_integral(a1);
  for (int it = 0; it < 60 && std::fabs(f1) > 1e-15; ++it) {
    if (f1 == f0) break;
    double a2 = a1 - f1 * (a1 - a0) / (f1 - f0);
    if (!(a2 > 0.0 && a2 < 1.0)) break;
    a0 = a1; f0 = f1;
    a1 = a2; f1 = kappa - kappa_defining_integral(a1);
  }
  // doubled-node self-check doubles as the residual gate
  if (std::fabs(kappa - kappa_defining_integral(a1, 128)) > 1e-12)
    throw std::runtime_error("solve_a: residual tolerance unmet");
  return a1;
}

EllipticData build_elliptic_data(double kappa, double delta) {
  EllipticData d;
  d.kappa = kappa;
  double a = solve_a(kappa, delta);
  d.pair = elliptic_ke(a);
  const EllipticPair& p = d.pair;
  double m1 = (1.0 - a) * (1.0 + a);
  d.V = -2.0 / kPi * (p.E - m1 * p.K);
  d.tau = cplx(0.0, 2.0 * p.K / p.K_prime);
  d.c = cplx(0.0, 0.5 / p.K_prime);
  d.da_dkappa = -1.0 / (a * p.K_prime);

  EllipticDerivs ed = elliptic_derivatives(p);
  double dV_da = -2.0 / kPi * (ed.dE_da + 2.0 * a * p.K - m1 * ed.dK_da);
  d.dV_dkappa = dV_da * d.da_dkappa;
  // d/da K(a') = -(E' - a^2 K') / (a a'^2)
  double dKp_da = -(p.E_prime - a * a * p.K_prime) / (a * p.a_prime * p.a_prime);
  cplx dtau_da = cplx(0.0, 2.0) *
                 (ed.dK_da * p.K_prime - p.K * dKp_da) / (p.K_prime * p.K_prime);
  d.dtau_dkappa = dtau_da * d.da_dkappa;
  return d;
}

double phase_identity_residual(double kappa) {
  EllipticData d = build_elliptic_data(kappa);
  double lhs = d.V - kappa * d.dV_dkappa;
  double rhs = (cplx(0.0, 2.0) * d.c).real();
  return std::fabs(lhs - rhs);
}

}  // namespace sinegas
