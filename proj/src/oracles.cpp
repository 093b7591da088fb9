#include "sinegas/oracles.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace sinegas {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kVStoredThreshold = 18.0;
}

GasPoint GasPoint::from_gamma(double s, double gamma) {
  if (!(s > 0.0)) throw std::domain_error("GasPoint: s must be positive");
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw std::domain_error("GasPoint: gamma must lie in [0,1]");
  GasPoint p;
  p.s = s;
  p.gamma = gamma;
  p.v = (gamma == 1.0) ? std::numeric_limits<double>::infinity()
                       : -0.5 * std::log1p(-gamma);
  p.kappa = p.v / s;
  p.v_stored = false;
  return p;
}

GasPoint GasPoint::from_v(double s, double v) {
  if (!(s > 0.0)) throw std::domain_error("GasPoint: s must be positive");
  if (!(v >= 0.0)) throw std::domain_error("GasPoint: v must be >= 0");
  GasPoint p;
  p.s = s;
  p.v = v;
  p.gamma = -std::expm1(-2.0 * v);
  p.kappa = v / s;
  // beyond v ~ 18 the value 1-gamma underflows relative to 1; keep v primary
  p.v_stored = v > kVStoredThreshold;
  return p;
}

const Quadrature& Quadrature::gauss_legendre(int n) {
  if (n < 1) throw std::domain_error("gauss_legendre: order must be >= 1");
  static std::map<int, Quadrature> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  detail::QuadT<double> qt = detail::gauss_legendre_t<double>(n);
  Quadrature q;
  q.x = qt.x;
  q.w = qt.w;
  q.order = n;
  return cache.emplace(n, std::move(q)).first->second;
}

int suggested_order(double s) {
  return static_cast<int>(std::ceil(1.3 * (2.0 * s / kPi))) + 40;
}

namespace {

template <class Scalar>
double nystrom_logdet_at(double s, double v, double gamma, bool gap, int n,
                         int& sign) {
  using std::sin;
  using std::sqrt;
  detail::QuadT<Scalar> q = detail::gauss_legendre_t<Scalar>(n);
  Scalar g;
  if (gap) {
    g = Scalar(1.0);
  } else if constexpr (std::is_same_v<Scalar, dd>) {
    // form 1 - e^{-2v} in extended precision: the floor eigenvalue of the
    // discretized operator is exactly this gap
    g = dd(1.0) - exp(dd(-2.0) * dd(v));
  } else {
    g = gamma;
  }
  Scalar pi_s;
  if constexpr (std::is_same_v<Scalar, dd>) {
    pi_s = dd_pi();  // both words: the kernel needs pi beyond double
  } else {
    pi_s = kPi;
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> A(n, n);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> sw(n);
  for (int i = 0; i < n; ++i) sw[i] = sqrt(q.w[i]);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      Scalar K;
      if (i == j) {
        K = Scalar(s) / pi_s;
      } else {
        Scalar d = q.x[i] - q.x[j];
        K = sin(Scalar(s) * d) / (pi_s * d);
      }
      Scalar a = -g * sw[i] * K * sw[j];
      A(i, j) = a;
      A(j, i) = a;
    }
    A(i, i) += Scalar(1.0);
  }
  if constexpr (std::is_same_v<Scalar, double>) {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    double logdet = 0.0;
    sign = lu.permutationP().determinant();
    for (int i = 0; i < n; ++i) {
      double d = lu.matrixLU()(i, i);
      if (d < 0.0) sign = -sign;
      logdet += std::log(std::fabs(d));
    }
    return logdet;
  } else {
    return detail::logdet_lu(A, sign);
  }
}

template <class Scalar>
DetResult nystrom_logdet(const GasPoint& p, int n, double tol) {
  bool gap = (p.gamma == 1.0) && !p.v_stored;
  int sign1 = 1, sign2 = 1;
  double ld1 = nystrom_logdet_at<Scalar>(p.s, p.v, p.gamma, gap, n, sign1);
  double ld2 = nystrom_logdet_at<Scalar>(p.s, p.v, p.gamma, gap, 2 * n, sign2);
  if (sign1 <= 0 || sign2 <= 0)
    throw std::runtime_error(
        "fredholm_logdet: negative determinant (under-resolved; I - gamma K is positive definite)");
  DetResult r;
  r.log_det = ld1;
  r.method = "nystrom";
  r.accuracy_estimate = std::fabs(ld1 - ld2);
  if (!(r.accuracy_estimate <= tol))
    throw std::runtime_error("fredholm_logdet: order-doubling estimate exceeds tolerance");
  return r;
}

}  // namespace

DetResult fredholm_logdet(const GasPoint& p, const Quadrature& q, double tol,
                          Precision prec, double dd_v_threshold) {
  if (q.order < suggested_order(p.s))
    throw std::domain_error("fredholm_logdet: quadrature order below the oscillation rule");
  if (p.gamma == 0.0) return DetResult{0.0, "nystrom", 0.0};
  bool use_dd;
  switch (prec) {
    case Precision::Double: use_dd = false; break;
    case Precision::DoubleDouble: use_dd = true; break;
    default: use_dd = (p.gamma == 1.0) || p.v > dd_v_threshold;
  }
  return use_dd ? nystrom_logdet<dd>(p, q.order, tol)
                : nystrom_logdet<double>(p, q.order, tol);
}

double fredholm_dlogdet_ds(const GasPoint& p, const Quadrature& q) {
  if (q.order < suggested_order(p.s))
    throw std::domain_error("fredholm_dlogdet_ds: quadrature order below the oscillation rule");
  if (p.gamma == 0.0) return 0.0;
  const int n = q.order;
  Eigen::MatrixXd A(n, n), B(n, n);
  Eigen::VectorXd sw = q.w.array().sqrt();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double d = q.x[i] - q.x[j];
      double K = (i == j) ? p.s / kPi : std::sin(p.s * d) / (kPi * d);
      double dK = std::cos(p.s * d) / kPi;
      A(i, j) = (i == j ? 1.0 : 0.0) - p.gamma * sw[i] * K * sw[j];
      B(i, j) = sw[i] * dK * sw[j];
    }
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  return -p.gamma * lu.solve(B).trace();
}

DetResult toeplitz_logdet(int n, double s, double gamma) {
  if (n < 1) throw std::domain_error("toeplitz_logdet: n must be >= 1");
  double t = 2.0 * s / n;
  if (!(t > 0.0 && t < 2.0 * kPi))
    throw std::domain_error("toeplitz_logdet: 2s/n must lie in (0, 2pi)");
  Eigen::VectorXd f(n);
  f[0] = 1.0 - gamma * t / kPi;
  for (int k = 1; k < n; ++k) f[k] = -gamma * std::sin(k * t) / (kPi * k);
  Eigen::MatrixXd T(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) T(i, j) = f[std::abs(i - j)];
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(T);
  int sign = lu.permutationP().determinant();
  double logdet = 0.0;
  for (int i = 0; i < n; ++i) {
    double d = lu.matrixLU()(i, i);
    if (d < 0.0) sign = -sign;
    logdet += std::log(std::fabs(d));
  }
  if (sign <= 0)
    throw std::runtime_error("toeplitz_logdet: negative determinant");
  return DetResult{logdet, "toeplitz", 0.0};
}

double symbol_eval(double theta, double t, double v) {
  if (!(t > 0.0 && t < 2.0 * kPi))
    throw std::domain_error("symbol_eval: t must lie in (0, 2pi)");
  theta = std::fmod(theta, 2.0 * kPi);
  if (theta < 0.0) theta += 2.0 * kPi;
  bool jump_arc = (theta < t) || (theta >= 2.0 * kPi - t);
  return jump_arc ? std::exp(-2.0 * v) : 1.0;
}

}  // namespace sinegas
