#pragma once

// The elliptic parameter map: for kappa = v/s in (0, 1-delta], solve for the
// branch point a(kappa) in (0,1) from
//     kappa = int_a^1 sqrt((mu^2 - a^2)/(1 - mu^2)) dmu,
// then assemble the frequency V, nome tau, normalization c and their
// kappa-derivatives in closed form.

#include <complex>

#include "sinegas/specfun.hpp"

namespace sinegas {

struct EllipticData {
  double kappa;
  EllipticPair pair;
  double V;                 // -(2/pi)(E - (1-a^2)K), negative on (0,1)
  cplx tau;                 // 2i K(a)/K(a'), purely imaginary
  cplx c;                   // i/(2 K(a')), purely imaginary
  double dV_dkappa;
  cplx dtau_dkappa;
  double da_dkappa;         // -1/(a K(a'))
};

// The defining integral evaluated by Gauss-Legendre after the substitution
// mu = a + (1-a) sin^2(theta), which removes both endpoint square-root
// singularities (the integrand in theta is analytic on [0, pi/2]).
double kappa_defining_integral(double a, int order = 64);

// Unique root a(kappa) in (0,1); bracketed bisection with secant polish.
// Throws std::domain_error outside (0, 1-delta], std::runtime_error on a
// residual above 1e-12 under node doubling.
double solve_a(double kappa, double delta = 0.01);

EllipticData build_elliptic_data(double kappa, double delta = 0.01);

// Residual of the phase-derivative identity
//     d/dt [ t V(v/t) ] = V(kappa) - kappa V'(kappa) = 2 i c(kappa),
// evaluated with the closed-form derivatives; expected below 1e-9.
double phase_identity_residual(double kappa);

}  // namespace sinegas
