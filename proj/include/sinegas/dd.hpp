#pragma once

// Double-double scalar: an unevaluated sum hi + lo of two doubles giving
// roughly 32 significant digits.  Used by the Nystrom oracle in the gap
// regime, where the smallest eigenvalue of I - gamma*K_s sits near or below
// double roundoff and a plain double LU loses the determinant.
//
// Algorithms are the classic error-free transformations (Dekker/Knuth) plus
// the usual renormalized add/mul/div; two_prod relies on std::fma being a
// fused operation, which the standard guarantees.

#include <cmath>
#include <cstdint>
#include <limits>

#include <Eigen/Core>

namespace sinegas {

struct dd {
  double hi{0.0};
  double lo{0.0};

  constexpr dd() = default;
  constexpr dd(double h) : hi(h), lo(0.0) {}
  constexpr dd(double h, double l) : hi(h), lo(l) {}

  explicit operator double() const { return hi + lo; }
};

namespace detail {

inline dd quick_two_sum(double a, double b) {
  double s = a + b;
  return dd(s, b - (s - a));
}

inline dd two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  return dd(s, (a - (s - bb)) + (b - bb));
}

inline dd two_prod(double a, double b) {
  double p = a * b;
  return dd(p, std::fma(a, b, -p));
}

}  // namespace detail

inline dd operator+(const dd& a, const dd& b) {
  dd s = detail::two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  return detail::quick_two_sum(s.hi, s.lo);
}

inline dd operator-(const dd& a) { return dd(-a.hi, -a.lo); }
inline dd operator-(const dd& a, const dd& b) { return a + (-b); }

inline dd operator*(const dd& a, const dd& b) {
  dd p = detail::two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return detail::quick_two_sum(p.hi, p.lo);
}

inline dd operator/(const dd& a, const dd& b) {
  double q1 = a.hi / b.hi;
  dd r = a - b * dd(q1);
  double q2 = r.hi / b.hi;
  r = r - b * dd(q2);
  double q3 = r.hi / b.hi;
  dd q = detail::quick_two_sum(q1, q2);
  return q + dd(q3);
}

inline dd& operator+=(dd& a, const dd& b) { return a = a + b; }
inline dd& operator-=(dd& a, const dd& b) { return a = a - b; }
inline dd& operator*=(dd& a, const dd& b) { return a = a * b; }
inline dd& operator/=(dd& a, const dd& b) { return a = a / b; }

inline dd operator+(const dd& a, double b) { return a + dd(b); }
inline dd operator+(double a, const dd& b) { return dd(a) + b; }
inline dd operator-(const dd& a, double b) { return a - dd(b); }
inline dd operator-(double a, const dd& b) { return dd(a) - b; }
inline dd operator*(const dd& a, double b) { return a * dd(b); }
inline dd operator*(double a, const dd& b) { return dd(a) * b; }
inline dd operator/(const dd& a, double b) { return a / dd(b); }
inline dd operator/(double a, const dd& b) { return dd(a) / b; }

inline bool operator==(const dd& a, const dd& b) { return a.hi == b.hi && a.lo == b.lo; }
inline bool operator!=(const dd& a, const dd& b) { return !(a == b); }
inline bool operator<(const dd& a, const dd& b) {
  return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(const dd& a, const dd& b) { return b < a; }
inline bool operator<=(const dd& a, const dd& b) { return !(b < a); }
inline bool operator>=(const dd& a, const dd& b) { return !(a < b); }

inline double to_double(const dd& a) { return a.hi + a.lo; }

inline dd abs(const dd& a) { return a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0) ? -a : a; }

inline dd sqrt(const dd& a) {
  if (a.hi == 0.0 && a.lo == 0.0) return dd(0.0);
  double s = std::sqrt(a.hi);
  dd r = a - dd(s) * dd(s);
  double e = r.hi / (2.0 * s);
  return detail::quick_two_sum(s, e);
}

// Natural log of a dd value, accurate to double roundoff (not dd roundoff);
// the callers only need double-accurate logs of dd-accurate pivots.
inline double log_approx(const dd& a) {
  return std::log(a.hi) + std::log1p(a.lo / a.hi);
}

namespace detail {
inline constexpr double kPi2Hi = 1.5707963267948966;
inline constexpr double kPi2Lo = 6.123233995736766e-17;
}  // namespace detail

inline constexpr dd dd_pi() { return dd(3.141592653589793, 1.2246467991473532e-16); }

// sin/cos with dd accuracy for |x| up to a few hundred: reduce modulo pi/2
// with the split constant, then Taylor on [-pi/4, pi/4].
inline void sincos(const dd& x, dd& s, dd& c) {
  const dd pi2(detail::kPi2Hi, detail::kPi2Lo);
  double kd = std::nearbyint(x.hi / detail::kPi2Hi);
  dd y = x - pi2 * dd(kd);
  // one correction step in case the first reduction landed outside the band
  if (std::fabs(y.hi) > detail::kPi2Hi / 2 + 1e-10) {
    double k2 = std::nearbyint(y.hi / detail::kPi2Hi);
    kd += k2;
    y = x - pi2 * dd(kd);
  }
  dd y2 = y * y;
  // sin(y)
  dd term = y, sy = y;
  for (int k = 1; k < 20; ++k) {
    term = term * y2 / dd(-(2.0 * k) * (2.0 * k + 1.0));
    sy += term;
    if (std::fabs(term.hi) < 1e-36) break;
  }
  // cos(y)
  dd cterm(1.0), cy(1.0);
  for (int k = 1; k < 20; ++k) {
    cterm = cterm * y2 / dd(-(2.0 * k) * (2.0 * k - 1.0));
    cy += cterm;
    if (std::fabs(cterm.hi) < 1e-36) break;
  }
  int q = static_cast<int>(kd - 4.0 * std::floor(kd / 4.0));
  switch (q) {
    case 0: s = sy;  c = cy;  break;
    case 1: s = cy;  c = -sy; break;
    case 2: s = -sy; c = -cy; break;
    default: s = -cy; c = sy; break;
  }
}

inline dd sin(const dd& x) {
  dd s, c;
  sincos(x, s, c);
  return s;
}

inline dd cos(const dd& x) {
  dd s, c;
  sincos(x, s, c);
  return c;
}

inline dd exp(const dd& x) {
  // exp(hi)*exp(lo) with a dd-corrected exp(hi); enough for the few spots
  // that form gamma = 1 - exp(-2v) in extended precision.
  double eh = std::exp(x.hi);
  dd r(eh);
  // residual of the double exp: exp(x) = eh * exp(x - log(eh))
  dd corr = x - dd(std::log(eh));
  dd e(1.0), term(1.0);
  for (int k = 1; k < 8; ++k) {
    term = term * corr / dd(double(k));
    e += term;
  }
  return r * e;
}

}  // namespace sinegas

namespace Eigen {
template <>
struct NumTraits<sinegas::dd> : GenericNumTraits<sinegas::dd> {
  typedef sinegas::dd Real;
  typedef sinegas::dd NonInteger;
  typedef sinegas::dd Nested;
  typedef sinegas::dd Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 8,
    MulCost = 16
  };
  static inline Real epsilon() { return sinegas::dd(1.232595164407831e-32); }
  static inline Real dummy_precision() { return sinegas::dd(1e-28); }
  static inline Real highest() { return sinegas::dd(std::numeric_limits<double>::max()); }
  static inline Real lowest() { return sinegas::dd(-std::numeric_limits<double>::max()); }
  static inline int digits10() { return 31; }
};
}  // namespace Eigen
