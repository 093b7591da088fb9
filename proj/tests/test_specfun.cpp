#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "sinegas/specfun.hpp"

using namespace sinegas;
using std::numbers::pi;

namespace {

// Independent log-Gamma oracle: Spouge's formula with a = 20 (relative error
// well below 1e-14 on the right half-plane).
cplx spouge_log_gamma(cplx z) {
  const int a = 20;
  cplx zm = z - 1.0;
  cplx acc = std::sqrt(2.0 * pi);
  double fact = 1.0;
  for (int k = 1; k < a; ++k) {
    if (k > 1) fact *= -(k - 1.0);
    double ck = std::pow(a - k, k - 0.5) * std::exp(double(a - k)) / fact;
    acc += ck / (zm + double(k));
  }
  return (zm + 0.5) * std::log(zm + double(a)) - (zm + double(a)) +
         std::log(acc);
}

// Alexeiewsky-formula oracle for ln G(1+z):
//   ln G(1+z) = z(1-z)/2 + (z/2) ln 2pi + z ln Gamma(z)
//              - int_0^z ln Gamma(1+t) dt + z ln z - z
// with the integral on the straight segment by 64-node Gauss-Legendre.
// Spouge assembles principal logs, so the imaginary part is unwound node to
// node along the segment (starting from ln Gamma(1) = 0) to stay on the
// continued branch.
cplx barnes_integral_oracle(cplx z) {
  const int n = 64;
  // nodes/weights from Newton on P_n, kept local so the oracle stays
  // independent of the library quadrature
  static double xs[n], ws[n];
  static bool init = false;
  if (!init) {
    for (int i = 0; i < n; ++i) {
      double x = std::cos(pi * (i + 0.75) / (n + 0.5));
      for (int it = 0; it < 50; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1.0);
        double dx = p1 / dp;
        x -= dx;
        if (std::fabs(dx) < 1e-15) break;
      }
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (x * p1 - p0) / (x * x - 1.0);
      xs[i] = x;
      ws[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    init = true;
  }
  cplx integral = 0.0;
  double prev_im = 0.0;  // ln Gamma(1+0) = 0
  cplx g_end = 0.0;
  for (int i = n - 1; i >= 0; --i) {  // nodes in increasing t toward z
    double t = 0.5 * (xs[i] + 1.0);
    cplx g = spouge_log_gamma(1.0 + z * t);
    double im = g.imag();
    im -= 2.0 * pi * std::round((im - prev_im) / (2.0 * pi));
    g = cplx(g.real(), im);
    prev_im = im;
    integral += ws[i] * g;
    g_end = g;
  }
  integral *= 0.5 * z;
  // ln Gamma(z) on the same branch: continue from the last node
  cplx g1z = spouge_log_gamma(1.0 + z);
  double im = g1z.imag();
  im -= 2.0 * pi * std::round((im - g_end.imag()) / (2.0 * pi));
  cplx lgz = cplx(g1z.real(), im) - std::log(z);
  return 0.5 * z * (1.0 - z) + 0.5 * z * std::log(2.0 * pi) + z * lgz -
         integral + z * std::log(z) - z;
}

}  // namespace

TEST_CASE("zeta_int against closed forms") {
  CHECK(zeta_int(2) == doctest::Approx(pi * pi / 6.0).epsilon(1e-14));
  CHECK(zeta_int(4) == doctest::Approx(pi * pi * pi * pi / 90.0).epsilon(1e-14));
  CHECK(zeta_int(40) == doctest::Approx(1.0 + std::pow(2.0, -40.0)).epsilon(1e-14));
}

TEST_CASE("log_gamma at classical points") {
  CHECK(std::abs(log_gamma(cplx(1.0, 0.0))) < 1e-14);
  CHECK(log_gamma(cplx(0.5, 0.0)).real() ==
        doctest::Approx(0.5 * std::log(pi)).epsilon(1e-14));
  // exponentiating reproduces Gamma on a real test set (std::tgamma oracle)
  for (double x : {0.5, 1.0, 2.5, 4.2, 7.7}) {
    double g = std::exp(log_gamma(cplx(x, 0.0)).real());
    CHECK(g == doctest::Approx(std::tgamma(x)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(log_gamma(cplx(0.0, 0.0)), std::domain_error);
  CHECK_THROWS_AS(log_gamma(cplx(-3.0, 0.0)), std::domain_error);
}

TEST_CASE("log_gamma(1+2i): recurrence and Spouge oracles") {
  cplx z(1.0, 2.0);
  cplx lg = log_gamma(z);
  // frozen from the Spouge oracle below
  CHECK(lg.real() == doctest::Approx(-1.876078786430929341).epsilon(1e-13));
  CHECK(lg.imag() == doctest::Approx(0.1296463163097883114).epsilon(1e-12));
  // Spouge assembles principal logs, so compare modulo 2 pi in the phase
  cplx ds = lg - spouge_log_gamma(z);
  CHECK(std::fabs(ds.real()) < 1e-10);
  CHECK(std::fabs(std::remainder(ds.imag(), 2.0 * pi)) < 1e-10);
  // ln Gamma(z) = ln Gamma(z+n) - sum ln(z+k), n = 8
  cplx acc = 0.0;
  for (int k = 0; k < 8; ++k) acc += std::log(z + double(k));
  CHECK(std::abs(lg - (log_gamma(z + 8.0) - acc)) < 1e-12);
}

TEST_CASE("|Gamma(1-beta)/Gamma(beta)| = |beta| on the imaginary axis") {
  for (double v : {0.5, 1.0, 2.0}) {
    cplx beta(0.0, v / pi);
    double lhs = std::exp(log_gamma(1.0 - beta).real() - log_gamma(beta).real());
    CHECK(lhs == doctest::Approx(std::abs(beta)).epsilon(1e-12));
  }
}

TEST_CASE("log_barnes_pair values and structure") {
  CHECK(log_barnes_pair(0.0) == 0.0);
  // two-method agreement at v = 1 via the integral-formula oracle
  double v = 1.0;
  cplx z(0.0, v / pi);
  double lib = log_barnes_pair(v);
  double oracle = 4.0 * barnes_integral_oracle(z).real();
  CHECK(lib == doctest::Approx(oracle).epsilon(1e-10));
  // frozen from the same oracle
  CHECK(lib == doctest::Approx(0.3079402820992069428).epsilon(1e-12));
  // v = pi: the recurrence chain G(1+i) = Gamma(i) G(i)
  cplx lhs = log_barnes_g1p(cplx(0.0, 1.0));
  cplx rhs = log_gamma(cplx(0.0, 1.0)) + log_barnes_g1p(cplx(-1.0, 1.0));
  CHECK(std::abs(lhs - rhs) < 1e-12);
  // realness by conjugate-pair construction
  cplx both = log_barnes_g1p(z) + log_barnes_g1p(std::conj(z));
  CHECK(std::fabs(both.imag()) < 1e-13);
  CHECK(2.0 * both.real() == doctest::Approx(lib).epsilon(1e-14));
}

TEST_CASE("Barnes G at 1/2 ties to zeta'(-1)") {
  // ln G(1/2) = (1/24) ln 2 - (1/4) ln pi + (3/2) zeta'(-1)
  double expect = std::log(2.0) / 24.0 - 0.25 * std::log(pi) +
                  1.5 * zeta_prime_minus_one;
  CHECK(log_barnes_g1p(cplx(-0.5, 0.0)).real() ==
        doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("log_barnes_g1p on the imaginary axis vs integral oracle") {
  for (double y : {2.0, 5.0}) {
    cplx z(0.0, y);
    CHECK(std::abs(log_barnes_g1p(z) - barnes_integral_oracle(z)) < 1e-9);
  }
}

TEST_CASE("arg_gamma_ratio continuity and consistency") {
  CHECK_THROWS_AS(arg_gamma_ratio(0.0), std::domain_error);
  CHECK(arg_gamma_ratio(pi) ==
        doctest::Approx(2.0 * log_gamma(cplx(0.0, 1.0)).imag()).epsilon(1e-14));
  double prev = arg_gamma_ratio(0.1);
  for (double v = 0.15; v < 8.0; v += 0.05) {
    double cur = arg_gamma_ratio(v);
    CHECK(std::fabs(cur - prev) < 0.5);  // no branch jumps
    prev = cur;
  }
}

TEST_CASE("elliptic_ke limits and AGM oracle") {
  CHECK_THROWS_AS(elliptic_ke(0.0), std::domain_error);
  CHECK_THROWS_AS(elliptic_ke(1.0), std::domain_error);
  EllipticPair small = elliptic_ke(1e-6);
  CHECK(small.K == doctest::Approx(pi / 2).epsilon(1e-10));
  CHECK(small.E == doctest::Approx(pi / 2).epsilon(1e-10));
  EllipticPair big = elliptic_ke(1.0 - 1e-8);
  CHECK(big.E == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::fabs((1.0 - big.a * big.a) * big.K) < 1e-5);

  // independent AGM: three iterations from (1, sqrt(0.75)) already converge
  double an = 1.0, bn = std::sqrt(0.75);
  for (int i = 0; i < 3; ++i) {
    double a1 = 0.5 * (an + bn);
    bn = std::sqrt(an * bn);
    an = a1;
  }
  double K_oracle = pi / (2.0 * an);
  EllipticPair p = elliptic_ke(0.5);
  CHECK(p.K == doctest::Approx(K_oracle).epsilon(1e-12));
  CHECK(p.K == doctest::Approx(1.6857503548125960).epsilon(1e-13));
  CHECK(p.E == doctest::Approx(1.4674622093394272).epsilon(1e-13));
  CHECK(p.a * p.a + p.a_prime * p.a_prime == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("Legendre relation across moduli") {
  for (int i = 1; i <= 9; ++i) {
    EllipticPair p = elliptic_ke(0.1 * i);
    double res = p.E * p.K_prime + p.E_prime * p.K - p.K * p.K_prime - pi / 2;
    CHECK(std::fabs(res) < 1e-12);
  }
}

TEST_CASE("elliptic_derivatives against central differences") {
  for (double a : {0.3, 0.5}) {
    EllipticPair p = elliptic_ke(a);
    EllipticDerivs d = elliptic_derivatives(p);
    double h = 1e-5;
    EllipticPair pp = elliptic_ke(a + h), pm = elliptic_ke(a - h);
    CHECK(d.dK_da == doctest::Approx((pp.K - pm.K) / (2 * h)).epsilon(1e-8));
    CHECK(d.dE_da == doctest::Approx((pp.E - pm.E) / (2 * h)).epsilon(1e-8));
  }
  // a -> 0: dE/da -> 0 by the series in a^2
  EllipticDerivs d0 = elliptic_derivatives(elliptic_ke(1e-5));
  CHECK(std::fabs(d0.dE_da) < 1e-4);
}

TEST_CASE("theta context and basic values") {
  CHECK_THROWS_AS(ThetaContext(cplx(0.1, 1.0)), std::domain_error);
  CHECK_THROWS_AS(ThetaContext(cplx(0.0, -1.0)), std::domain_error);
  // q -> 0: empty sum
  ThetaContext tiny(cplx(0.0, 20.0));
  CHECK(theta(3, 0.0, tiny).real() == doctest::Approx(1.0).epsilon(1e-15));

  // q = 0.1: theta3^4(0) = theta0^4(0) + theta2^4(0), both sides near 2.0748
  ThetaContext tc(cplx(0.0, -std::log(0.1) / pi));
  double t3 = theta(3, 0.0, tc).real();
  double t0 = theta(0, 0.0, tc).real();
  double t2 = theta(2, 0.0, tc).real();
  CHECK(std::pow(t3, 4) == doctest::Approx(2.0748).epsilon(1e-3));
  CHECK(std::pow(t3, 4) ==
        doctest::Approx(std::pow(t0, 4) + std::pow(t2, 4)).epsilon(1e-13));

  // 1-periodicity at x = 0.37, q = 0.2
  ThetaContext tc2(cplx(0.0, -std::log(0.2) / pi));
  CHECK(std::abs(theta(3, 0.37, tc2) - theta(3, 1.37, tc2)) < 1e-13);
}

TEST_CASE("theta conjugate symmetry: real values on the real line") {
  ThetaContext tc(cplx(0.0, 1.3));
  for (double x : {0.0, 0.21, 0.5, 0.83}) {
    for (int j : {0, 2, 3}) {
      cplx t = theta(j, x, tc);
      CHECK(std::fabs(t.imag()) < 1e-14 * (1.0 + std::abs(t)));  // theta_2(1/2) = 0 exactly
    }
  }
  // theta_1 is odd
  CHECK(std::abs(theta(1, 0.0, tc)) < 1e-14);
  CHECK(std::abs(theta(1, 0.3, tc) + theta(1, -0.3, tc)) < 1e-14);
}

TEST_CASE("theta heat equation") {
  for (double q : {0.05, 0.2}) {
    ThetaContext tc(cplx(0.0, -std::log(q) / pi));
    for (double x : {0.0, 0.13, 0.29, 0.37, 0.5}) {
      cplx lhs = theta(3, x, tc, 0, true);
      cplx rhs = theta(3, x, tc, 2) / (4.0 * pi * cplx(0.0, 1.0));
      CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(rhs)));
    }
  }
}

TEST_CASE("theta x-derivatives against central differences") {
  ThetaContext tc(cplx(0.0, 1.1));
  double h = 1e-6;
  for (int j : {0, 1, 2, 3}) {
    for (double x : {0.17, 0.62}) {
      cplx fd1 = (theta(j, x + h, tc) - theta(j, x - h, tc)) / (2.0 * h);
      CHECK(std::abs(theta(j, x, tc, 1) - fd1) < 1e-7);
      cplx fd2 = (theta(j, x + h, tc) - 2.0 * theta(j, x, tc) +
                  theta(j, x - h, tc)) /
                 (h * h);
      CHECK(std::abs(theta(j, x, tc, 2) - fd2) < 1e-3);
    }
  }
}

TEST_CASE("theta tau-derivative of shifted functions (chain rule)") {
  double h = 1e-6;
  for (int j : {1, 2}) {
    ThetaContext tp(cplx(0.0, 1.1 + h)), tm(cplx(0.0, 1.1 - h)),
        tc(cplx(0.0, 1.1));
    double x = 0.23;
    cplx fd = (theta(j, x, tp) - theta(j, x, tm)) / cplx(0.0, 2.0 * h);
    CHECK(std::abs(theta(j, x, tc, 0, true) - fd) < 1e-6);
  }
}
