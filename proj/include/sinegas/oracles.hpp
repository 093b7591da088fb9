#pragma once

// Ground-truth evaluators for det(I - gamma K_s) with the sine kernel
// K_s(x,y) = sin(s(x-y))/(pi(x-y)) on L^2(-1,1): symmetrized Nystrom
// discretization with pivoted-LU log-determinant, the exact trace formula
// for the s-derivative, and the finite Toeplitz determinant of the
// piecewise constant symbol whose n -> infinity limit is the same
// determinant.
//
// The Nystrom core is templated on the scalar so the gap regime (gamma = 1,
// or v large enough that 1-gamma sits near double roundoff) can run in
// double-double arithmetic; in that regime the smallest eigenvalue of
// I - gamma K_s falls below 1e-14 and a double LU loses the determinant.

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "sinegas/dd.hpp"

namespace sinegas {

struct GasPoint {
  double s;
  double gamma;   // in [0,1]
  double v;       // -0.5 ln(1-gamma), +inf at gamma = 1
  double kappa;   // v/s
  bool v_stored;  // v > 18: 1-gamma underflows relative to 1; v is primary

  static GasPoint from_gamma(double s, double gamma);
  static GasPoint from_v(double s, double v);
};

struct Quadrature {
  Eigen::VectorXd x;  // nodes, strictly increasing in (-1,1)
  Eigen::VectorXd w;  // positive weights, sum = 2
  int order;

  // Cached Gauss-Legendre rule (Newton on P_n).
  static const Quadrature& gauss_legendre(int n);
};

struct DetResult {
  double log_det;
  std::string method;
  double accuracy_estimate;  // |logdet(n) - logdet(2n)| for nystrom, else 0
};

// Oscillation-resolving order rule: n >= ceil(1.3 * 2s/pi) + 40.
int suggested_order(double s);

enum class Precision { Auto, Double, DoubleDouble };

// log det(I - gamma sqrt(w) K sqrt(w)) at order q.order, with the
// order-doubled run providing the accuracy estimate.  Throws on
// non-convergence (estimate > tol) and on a negative LU determinant
// (under-resolution: the operator is positive definite).  Auto precision
// runs in double-double once 1-gamma approaches the double roundoff floor
// (gamma = 1 or v above dd_v_threshold).
DetResult fredholm_logdet(const GasPoint& p, const Quadrature& q,
                          double tol = 1e-6,
                          Precision prec = Precision::Auto,
                          double dd_v_threshold = 8.0);

// d/ds ln det(I - gamma K_s) = -gamma tr[(I - gamma K_s)^{-1} dK_s/ds],
// dK_s/ds(x,y) = cos(s(x-y))/pi.
double fredholm_dlogdet_ds(const GasPoint& p, const Quadrature& q);

// log det of the n x n Toeplitz matrix [f_{j-k}] of the symbol f^{2s/n}:
// f_0 = 1 - 2 gamma s/(n pi), f_k = -gamma sin(2ks/n)/(pi k).
DetResult toeplitz_logdet(int n, double s, double gamma);

// The piecewise symbol itself: e^{-2v} on [0,t) u [2pi-t, 2pi), else 1.
double symbol_eval(double theta, double t, double v);

namespace detail {

// Gauss-Legendre nodes/weights refined in the requested scalar type.
template <class Scalar>
struct QuadT {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x, w;
  int order{};
};

template <class Scalar>
void legendre_pd(int n, const Scalar& x, Scalar& p, Scalar& dp) {
  Scalar p0(1.0), p1 = x;
  for (int k = 2; k <= n; ++k) {
    Scalar p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / Scalar(double(k));
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = Scalar(double(n)) * (x * p1 - p0) / (x * x - Scalar(1.0));
}

template <class Scalar>
QuadT<Scalar> gauss_legendre_t(int n) {
  QuadT<Scalar> q;
  q.order = n;
  q.x.resize(n);
  q.w.resize(n);
  for (int idx = 0; idx < n; ++idx) {
    int i = n - 1 - idx;  // nodes stored in increasing order
    // Tricomi initial guess, then Newton
    double x0 = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 60; ++it) {
      double p, dp;
      legendre_pd(n, x0, p, dp);
      double dx = p / dp;
      x0 -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    Scalar x(x0), p, dp;
    if constexpr (!std::is_same_v<Scalar, double>) {
      for (int it = 0; it < 3; ++it) {
        legendre_pd(n, x, p, dp);
        x = x - p / dp;
      }
    }
    legendre_pd(n, x, p, dp);
    q.x[idx] = x;
    q.w[idx] = Scalar(2.0) / ((Scalar(1.0) - x * x) * dp * dp);
  }
  return q;
}

inline double to_log_scalar(double x) { return x; }
inline double to_log_scalar(const dd& x) { return to_double(x); }
inline bool is_negative(double x) { return x < 0.0; }
inline bool is_negative(const dd& x) { return to_double(x) < 0.0; }

// In-place partial-pivot LU log-determinant with log-magnitude
// accumulation; sign returned separately.
template <class Scalar>
double logdet_lu(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& A,
                 int& sign) {
  using std::abs;
  const int n = static_cast<int>(A.rows());
  sign = 1;
  double logdet = 0.0;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    Scalar amax = abs(A(k, k));
    for (int i = k + 1; i < n; ++i) {
      Scalar ai = abs(A(i, k));
      if (amax < ai) {
        amax = ai;
        piv = i;
      }
    }
    if (piv != k) {
      A.row(piv).swap(A.row(k));
      sign = -sign;
    }
    Scalar d = A(k, k);
    if (to_log_scalar(d) == 0.0) return -std::numeric_limits<double>::infinity();
    if (is_negative(d)) sign = -sign;
    logdet += std::log(std::fabs(to_log_scalar(d)));
    for (int i = k + 1; i < n; ++i) {
      Scalar f = A(i, k) / d;
      A(i, k) = f;
      for (int j = k + 1; j < n; ++j) A(i, j) -= f * A(k, j);
    }
  }
  return logdet;
}

}  // namespace detail

}  // namespace sinegas
