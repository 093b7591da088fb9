#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sinegas/mfun.hpp"

using namespace sinegas;
using std::numbers::pi;

TEST_CASE("Xi building blocks") {
  MContext near_zero = MContext::from_kappa(1e-4);
  // every theta factor tends to 1, the prefactor is 2
  CHECK(xi(0, 0.3, near_zero) == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(xi(2, 0.3, near_zero) == doctest::Approx(2.0).epsilon(1e-3));

  MContext ctx = MContext::from_kappa(0.2);
  CHECK(xi(0, 1.3, ctx) == doctest::Approx(xi(0, 0.3, ctx)).epsilon(1e-12));
  CHECK(xi(2, 1.3, ctx) == doctest::Approx(xi(2, 0.3, ctx)).epsilon(1e-12));
  CHECK_THROWS_AS(xi(1, 0.0, ctx), std::invalid_argument);

  // truncation-refinement: tighter series tolerance does not move the value
  MContext fine(build_elliptic_data(0.2), 1e-30);
  CHECK(xi(0, 0.25, ctx) == doctest::Approx(xi(0, 0.25, fine)).epsilon(1e-12));
}

TEST_CASE("Theta_0 combination") {
  // kappa -> 0: log-derivative ratios die off, leaving -2(2+a) -> -6
  MContext near_zero = MContext::from_kappa(1e-4);
  CHECK(theta0_big(0.4, near_zero) == doctest::Approx(-6.0).epsilon(1e-3));

  MContext ctx = MContext::from_kappa(0.3);
  CHECK(theta0_big(1.4, ctx) == doctest::Approx(theta0_big(0.4, ctx)).epsilon(1e-12));

  MContext fine(build_elliptic_data(0.15), 1e-30);
  MContext base = MContext::from_kappa(0.15);
  CHECK(theta0_big(0.4, base) == doctest::Approx(theta0_big(0.4, fine)).epsilon(1e-12));
}

TEST_CASE("M: small-kappa law, periodicity, realness, boundedness") {
  // leading form -(kappa/6pi) cos(2pi x)
  MContext c01 = MContext::from_kappa(0.01);
  CHECK(std::fabs(m_eval(0.0, c01) + 0.01 / (6.0 * pi)) < 1e-4);
  CHECK(std::fabs(m_eval(0.25, c01)) < 1e-4);

  MContext ctx = MContext::from_kappa(0.3);
  CHECK(m_eval(1.25, ctx) == doctest::Approx(m_eval(0.25, ctx)).epsilon(1e-12));

  for (double kappa : {0.05, 0.3, 0.7, 0.99}) {
    MContext c = MContext::from_kappa(kappa);
    for (int g = 0; g < 16; ++g) {
      double x = g / 16.0;
      cplx m = detail::m_eval_complex(x, c);
      CHECK(std::fabs(m.imag()) < 1e-12 * (1.0 + std::abs(m)));
      CHECK(std::fabs(m.real()) < 50.0);  // uniform bound at desk scale
      CHECK(std::fabs(detail::m_eval_complex(x + 1.0, c).real() - m.real()) <
            1e-12);
    }
  }
}

TEST_CASE("Fourier coefficients") {
  FourierTable t = fourier_coeffs(0.05, 4);
  // leading cosine splits into modes +-1 with weight -kappa/(12 pi)
  CHECK(std::fabs(t.a[1].real() + 0.05 / (12.0 * pi)) < 5e-4);
  CHECK(std::abs(t.coeff(-1) - std::conj(t.coeff(1))) == 0.0);
  CHECK(std::fabs(t.a[1].imag()) < 1e-14);
  // a_0(kappa)/kappa -> 0
  CHECK(std::fabs(t.a[0].real()) / 0.05 < 1e-4);

  // mode decay: above the roundoff floor the log-log slope is at most -2
  // (the decay is in fact geometric, roughly one factor of the nome per
  // mode, so kappa = 0.9 is used to keep several modes above 1e-12)
  FourierTable big = fourier_coeffs(0.9, 12);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (int k = 4; k <= 12; ++k) {
    double ak = std::abs(big.coeff(k));
    if (ak < 1e-12) break;
    double lx = std::log(double(k)), ly = std::log(ak);
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    ++n;
  }
  REQUIRE(n >= 3);
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(slope <= -2.0);
}

TEST_CASE("tail table interpolation matches direct evaluation") {
  TailTable tbl = TailTable::build(0.35, 8, 64);
  for (double u : {2e-4, 1e-3, 0.02, 0.18, 0.33}) {
    FourierTable direct = fourier_coeffs(u, 8);
    for (int m : {0, 1, 3}) {
      CHECK(std::fabs(tbl.a_mode(m, u) - direct.a[m].real()) < 1e-9);
    }
    EllipticData d = build_elliptic_data(u);
    CHECK(tbl.V(u) == doctest::Approx(d.V).epsilon(1e-10));
    CHECK(tbl.D(u) == doctest::Approx(1.0 / d.pair.K_prime).epsilon(1e-10));
  }
}

TEST_CASE("tail integral: limits, bound, a0 split") {
  TailTable tbl = TailTable::build(0.35, 16, 64);
  // kappa -> 0 at fixed s: M = O(kappa) uniformly, the tail vanishes
  CHECK(std::fabs(tail_integral(1000.0, 0.05, tbl)) < 1e-6);
  double a0 = 0.0;
  double t = tail_integral(100.0, 30.0, tbl, &a0);
  CHECK(std::fabs(t) < 0.5);  // way inside any sensible C0 budget
  CHECK(std::fabs(a0) < 0.1);
  // below u_min only the analytic left tail remains
  CHECK(std::fabs(tail_integral(1e4, 0.5, tbl)) < 1e-7);
}

TEST_CASE("tail integral: Prop-style s-scaling of the oscillatory part") {
  TailTable tbl = TailTable::build(0.3, 16, 64);
  double a100 = 0, a200 = 0;
  double t100 = tail_integral(100.0, 30.0, tbl, &a100);
  double t200 = tail_integral(200.0, 60.0, tbl, &a200);
  // the a0 part depends on kappa only
  CHECK(a100 == doctest::Approx(a200).epsilon(1e-12));
  double D100 = std::fabs(t100 - a100), D200 = std::fabs(t200 - a200);
  CHECK(D100 / D200 == doctest::Approx(2.0).epsilon(0.5));
}

TEST_CASE("tail integral: Filon refinement stability") {
  // the same value through a finer table: quadrature pieces are converged
  TailTable coarse = TailTable::build(0.3, 12, 64);
  TailTable fine = TailTable::build(0.3, 20, 128);
  double tc = tail_integral(64.0, 19.2, coarse);
  double tf = tail_integral(64.0, 19.2, fine);
  CHECK(std::fabs(tc - tf) < 1e-8);
}
