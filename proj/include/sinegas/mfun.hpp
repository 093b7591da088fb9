#pragma once

// The oscillatory correction M(x,kappa): theta-combination building blocks
// Xi_0, Xi_2, Theta_0, the assembled M, its Fourier coefficients a_n(kappa),
// and the tail integral int_s^inf M(t V(v/t), v/t) dt/t evaluated mode by
// mode after the substitution u = v/t.

#include <complex>
#include <vector>

#include "sinegas/kappa_map.hpp"
#include "sinegas/specfun.hpp"

namespace sinegas {

struct MContext {
  EllipticData data;
  ThetaContext theta_ctx;
  cplx d;  // -tau/4

  explicit MContext(EllipticData ed, double theta_eps = 1e-17);
  static MContext from_kappa(double kappa);
};

namespace detail {
// Complex-assembled values before the realness projection; the imaginary
// parts are pure roundoff and are what the realness invariant measures.
cplx xi_complex(int j, double x, const MContext& ctx);
cplx theta0_big_complex(double x, const MContext& ctx);
cplx m_eval_complex(double x, const MContext& ctx);
}  // namespace detail

// Xi_j(x) = 2 theta_3^2(0)/theta_3^2(x) *
//           theta_j(x+d) theta_j(x-d) / theta_j^2(d),  j in {0,2}.
double xi(int j, double x, const MContext& ctx);

// The Theta_0 combination of log-derivative ratios of theta_0 at x+-d and d
// with coefficients 5c^2, 14c^2, -4c^2, -2c(1+a), -2(2+a); the derivative-
// of-ratio term is theta0''(d)/theta0(d) - (theta0'(d)/theta0(d))^2.
double theta0_big(double x, const MContext& ctx);

// M(x,kappa) = [Xi_0 Theta_0 + 6a Xi_2] / (48 a (1+a))
//            + (i/4pi) kappa (theta_3''(x)/theta_3(x)) dtau/dkappa
double m_eval(double x, const MContext& ctx);
double m_eval(double x, double kappa);

struct FourierTable {
  double kappa;
  int n_modes;              // coefficients stored for 0..n_modes
  std::vector<cplx> a;      // a[n]; a_{-n} = conj(a_n) since M is real

  cplx coeff(int n) const {
    return n >= 0 ? a[n] : std::conj(a[-n]);
  }
};

// a_n = int_0^1 M(x,kappa) e^{-2 pi i n x} dx by the trapezoidal rule on an
// equispaced grid (spectrally accurate for smooth periodic integrands).
FourierTable fourier_coeffs(double kappa, int n_modes, int grid = 0);

// Chebyshev tables (in ln u) of a_n(u), V(u) and the phase-derivative factor
// D(u) = 1/K(a'(u)) = -(V - u V'), shared by tail evaluations: each a_n(u)
// costs a full period quadrature, so they are tabulated once and
// interpolated.
struct TailTable {
  double u_min, u_max;
  int n_modes, n_cheb;
  std::vector<std::vector<double>> a_coef;  // [mode 0..n_modes][cheb coef]
  std::vector<double> v_coef, d_coef;

  static TailTable build(double kappa_max, int n_modes = 32, int n_cheb = 96,
                         double u_min = 1e-4);

  double a_mode(int n, double u) const;
  double V(double u) const;
  double D(double u) const;
};

// int_s^inf M(t V(v/t), v/t) dt/t  =  int_0^kappa M((v/u) V(u), u) du/u,
// kappa = v/s: the n = 0 Fourier mode integrates directly, each n != 0 mode
// by Filon-type panels with the closed-form phase derivative.  If a0_part is
// non-null it receives int_0^kappa a_0(u) du/u.
double tail_integral(double s, double v, const TailTable& table,
                     double* a0_part = nullptr);
double tail_integral(double s, double v);

// int_0^kappa a_0(u) du/u alone (the averaged integral).
double tail_a0_integral(double kappa, const TailTable& table);

}  // namespace sinegas
