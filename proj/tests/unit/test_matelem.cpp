#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "gkritz/matelem.hpp"
#include "quadrature.hpp"
#include "random.hpp"

using namespace gkritz;
using gkritz::testing::element_by_quadrature;
using gkritz::testing::OracleBasis;
using gkritz::testing::Rng;

namespace {

double rel(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

OracleBasis oracle_of(const ModelParams& p) { return {p.A(), p.B(), p.N(), p.l()}; }

// A with gamma_N = g for N = 3, l = 0.
double A_for_gamma(double g) { return (g - 1.0) * (g - 1.0) - 0.25; }

}  // namespace

TEST_CASE("diagonal closed forms") {
  const ModelParams p(3.3, 2.2);
  const double g = p.gamma_n();
  const double b = p.beta();
  for (int n = 0; n < 6; ++n) {
    CHECK(rel(inv_power_element(p, n, n, 2.0), b / (g - 1.0)) < 1e-13);
    CHECK(rel(inv_power_element(p, n, n, 4.0), b * b * (g + 2 * n) / (g * (g - 1.0) * (g - 2.0))) < 1e-13);
    CHECK(rel(power_element(p, n, n, 2), (g + 2 * n) / b) < 1e-13);
    CHECK(rel(power_element(p, n, n, 4), (g + 6.0 * n * n + 6.0 * g * n + g * g) / (b * b)) < 1e-13);
  }
  SUBCASE("alpha = 6 at beta = 1") {
    const ModelParams q(A_for_gamma(4.7), 1.0);
    const double h = q.gamma_n();
    for (int n = 0; n < 6; ++n) {
      const double want = (h + h * h + 6.0 * h * n + 6.0 * n * n) / ((h + 1.0) * h * (h - 1.0) * (h - 2.0) * (h - 3.0));
      CHECK(rel(inv_power_element_closed(q, n, n, 6), want) < 1e-13);
    }
  }
}

TEST_CASE("off-diagonal alpha = 2") {
  const ModelParams p(1.7, 0.8);
  const double g = p.gamma_n();
  const double want = -p.beta() / ((g - 1.0) * std::sqrt(g));
  CHECK(rel(inv_power_element_closed(p, 0, 1, 2), want) < 1e-13);
  CHECK(rel(inv_power_element_closed(p, 0, 1, 2), inv_power_element(p, 0, 1, 2.0)) < 1e-13);
}

TEST_CASE("alpha = 4 at gamma of A = 6.076") {
  const ModelParams p(6.076, 1.0);
  CHECK(rel(inv_power_element_closed(p, 3, 3, 4), inv_power_element(p, 3, 3, 4.0)) < 1e-12);
}

TEST_CASE("closed versus general forms") {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const double B = rng.uniform(0.2, 20.0);
    for (int alpha : {2, 4, 6, 8, 10}) {
      const double g = 0.5 * alpha + 0.1 + rng.uniform(0.0, 6.0);
      const ModelParams p(std::max(0.0, A_for_gamma(g)), B);
      const BasisLogTable t(p, 31);
      double worst = 0.0;
      for (int m = 0; m <= 30; ++m) {
        for (int n = 0; n <= 30; ++n) {
          worst = std::max(worst, rel(inv_power_element_closed(t, m, n, alpha), inv_power_element(t, m, n, alpha)));
        }
      }
      CHECK_MESSAGE(worst < 1e-11, "alpha=", alpha, " gamma=", p.gamma_n(), " B=", B);
    }
    const ModelParams p(rng.uniform(0.0, 30.0), B);
    const BasisLogTable t(p, 33);
    for (int q : {2, 4}) {
      for (int m = 0; m <= 30; ++m) {
        for (int n = 0; n <= 30; ++n) {
          const double a = power_element_closed(t, m, n, q);
          const double b = power_element(t, m, n, q);
          CHECK(std::abs(a - b) <= 1e-11 * std::max(std::abs(b), 1e-300));
        }
      }
    }
  }
}

TEST_CASE("symmetry") {
  Rng rng(32);
  for (int trial = 0; trial < 30; ++trial) {
    const ModelParams p(rng.uniform(0.0, 20.0), rng.uniform(0.1, 10.0), rng.integer(1, 8), rng.integer(0, 3));
    const int m = rng.integer(0, 25);
    const int n = rng.integer(0, 25);
    const double alpha = rng.uniform(0.1, 2.0 * p.gamma_n() - 0.1);
    CHECK(inv_power_element(p, m, n, alpha) == inv_power_element(p, n, m, alpha));
    for (int q : {2, 4, 6, 8}) CHECK(power_element(p, m, n, q) == power_element(p, n, m, q));
    if (p.gamma_n() > 3.0) CHECK(inv_power_element_closed(p, m, n, 6) == inv_power_element_closed(p, n, m, 6));
  }
}

TEST_CASE("bandedness") {
  for (const ModelParams& p : {ModelParams(0.0, 1.0), ModelParams(7.5, 3.2, 5, 2)}) {
    const BasisLogTable t(p, 54);
    for (int q : {2, 4, 6}) {
      for (int m = 0; m <= 50; ++m) {
        for (int n = 0; n <= 50; ++n) {
          const double x = power_element(t, m, n, q);
          if (std::abs(m - n) > q / 2) {
            CHECK(x == 0.0);
          } else {
            CHECK(x != 0.0);
          }
        }
      }
    }
  }
}

TEST_CASE("completeness sum rule") {
  Rng rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    const ModelParams p(rng.uniform(0.0, 10.0), rng.uniform(0.3, 5.0));
    const BasisLogTable t(p, 80);
    for (int m = 0; m <= 20; ++m) {
      for (int n = 0; n <= 20; ++n) {
        double s = 0.0;
        for (int k = 0; k <= m + n + 2; ++k) s += power_element(t, m, k, 2) * power_element(t, k, n, 2);
        const double want = power_element(t, m, n, 4);
        CHECK(std::abs(s - want) <= 1e-10 * std::max(std::abs(want), 1.0));
      }
    }
  }
}

TEST_CASE("quadrature examples") {
  SUBCASE("alpha = 3.5") {
    const ModelParams p(2.0, 1.0);
    const double q = element_by_quadrature(oracle_of(p), 2, 5, -3.5);
    CHECK(std::abs(inv_power_element(p, 2, 5, 3.5) - q) < 1e-9);
  }
  SUBCASE("q = 6 off the diagonal") {
    const ModelParams p(1.0, 2.0);
    const double q = element_by_quadrature(oracle_of(p), 4, 2, 6.0);
    CHECK(rel(power_element(p, 4, 2, 6), q) < 1e-9);
  }
  SUBCASE("n = m + q/2 branch") {
    for (int q : {2, 4, 6, 8}) {
      const ModelParams p(0.8, 1.7, 4, 0);
      for (int m = 0; m < 5; ++m) {
        const double want = element_by_quadrature(oracle_of(p), m, m + q / 2, q);
        CHECK(rel(power_element(p, m, m + q / 2, q), want) < 1e-9);
      }
    }
  }
}

TEST_CASE("random quadrature suite") {
  Rng rng(34);
  for (int trial = 0; trial < 50; ++trial) {
    const ModelParams p(rng.uniform(0.0, 12.0), rng.uniform(0.3, 6.0), rng.integer(2, 6), rng.integer(0, 2));
    const int m = rng.integer(0, 8);
    const int n = rng.integer(0, 8);
    double got = 0.0;
    double power = 0.0;
    if (trial % 5 == 4) {
      const int q = 2 * rng.integer(1, 3);
      power = q;
      got = power_element(p, m, n, q);
    } else {
      const double alpha = rng.uniform(0.05, 2.0 * p.gamma_n() - 0.3);
      power = -alpha;
      got = inv_power_element(p, m, n, alpha);
    }
    const double want = element_by_quadrature(oracle_of(p), m, n, power);
    CHECK_MESSAGE(std::abs(got - want) <= 1e-8 * std::max(1.0, std::abs(want)), "power=", power, " m=", m, " n=", n);
  }
}

TEST_CASE("domain errors") {
  const ModelParams p(0.0, 1.0);  // gamma = 1.5
  CHECK_THROWS_AS(inv_power_element(p, 0, 0, 3.0), std::domain_error);
  CHECK_THROWS_AS(inv_power_element(p, 1, 2, 4.0), std::domain_error);
  CHECK_NOTHROW(inv_power_element(p, 1, 2, 2.9));
  CHECK_THROWS_AS(power_element(p, 0, 0, 3), std::invalid_argument);
  CHECK_THROWS_AS(power_element(p, 0, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(power_element(p, 0, 0, -2), std::invalid_argument);
  CHECK(is_even_power(4.0));
  CHECK_FALSE(is_even_power(3.5));
  CHECK_FALSE(is_even_power(0.0));
}
