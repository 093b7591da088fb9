#pragma once

// Self-contained special-function kernel: complex log-Gamma, Barnes G on the
// lines 1 +/- iy, complete elliptic integrals via the AGM, and the four
// Jacobi theta functions with x- and tau-derivatives for purely imaginary
// nome.

#include <complex>

namespace sinegas {

using cplx = std::complex<double>;

// zeta'(-1) = 1/12 - ln A with A the Glaisher-Kinkelin constant.
inline constexpr double zeta_prime_minus_one =
    -0.16542114370045092921391966024278064;

inline constexpr double euler_gamma_const =
    0.57721566490153286060651209008240243;

// ln c0 = (1/12) ln 2 + 3 zeta'(-1): the constant term of the gap expansion.
inline constexpr double ln_c0 = -0.43850116605469067852365630394016055;

// Riemann zeta at integer argument n >= 2 (Euler-Maclaurin, cached).
double zeta_int(int n);

// Principal branch of ln Gamma(z); throws std::domain_error at the poles.
cplx log_gamma(cplx z);

// ln G(1+z) for the Barnes G-function.  Taylor series inside |z| <= 0.5,
// otherwise upward recurrence G(1+z) = Gamma(z) G(z) into the region where
// the large-argument expansion applies.
cplx log_barnes_g1p(cplx z);

// 2 ln[ G(1 + iv/pi) G(1 - iv/pi) ]; real, even in v, zero at v = 0.
double log_barnes_pair(double v);

// arg( Gamma(nu) / Gamma(-nu) ) for nu = iv/pi, v > 0, as a continuous
// branch: equals 2 Im ln Gamma(iv/pi).  Throws at v = 0 (both Gammas blow
// up); callers multiply the result's sine by v^2 first.
double arg_gamma_ratio(double v);

struct EllipticPair {
  double a;        // modulus in (0,1)
  double a_prime;  // sqrt(1 - a^2)
  double K, K_prime, E, E_prime;
};

// Complete elliptic integrals K(a), E(a), K(a'), E(a') by the
// arithmetic-geometric mean; K(a') is computed directly from a'.
EllipticPair elliptic_ke(double a);

struct EllipticDerivs {
  double dK_da;  // (E - (1-a^2) K) / (a (1-a^2))
  double dE_da;  // (E - K) / a
};

EllipticDerivs elliptic_derivatives(const EllipticPair& p);

// Truncation context for the theta q-series at purely imaginary tau.
struct ThetaContext {
  cplx tau;    // Re tau = 0, Im tau > 0
  double q;    // exp(-pi Im tau), in (0,1)
  int m_max;   // truncation for real arguments: q^{m_max^2} < eps
  double eps;

  explicit ThetaContext(cplx tau_, double eps_ = 1e-17);
};

// theta_j(z|tau) and derivatives, j in {0,1,2,3} with theta_0 = theta_3
// shifted by 1/2 (often written theta_4).  dx_order in {0,1,2} selects the
// x-derivative; dtau applies d/dtau on top.  theta_1, theta_2 are assembled
// from theta_3 through the half-period shifts with exponential prefactors,
// differentiated analytically.
cplx theta(int j, cplx z, const ThetaContext& ctx, int dx_order = 0,
           bool dtau = false);

}  // namespace sinegas
