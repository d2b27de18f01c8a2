#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>

#include "gkritz/eigensolver.hpp"
#include "gkritz/hamiltonian.hpp"
#include "gkritz/matelem.hpp"
#include "quadrature.hpp"
#include "random.hpp"

using namespace gkritz;

TEST_CASE("PotentialSpec validation") {
  CHECK_NOTHROW((PotentialSpec{1.0, {{0.1, 4.0}}, 3, 0}.validate()));
  CHECK_NOTHROW((PotentialSpec{1.0, {{-7.0, 4.0}, {49.0, 6.0}}, 3, 0}.validate()));
  CHECK_THROWS_AS((PotentialSpec{0.0, {}, 3, 0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((PotentialSpec{-1.0, {}, 3, 0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((PotentialSpec{1.0, {{1.0, 0.0}}, 3, 0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((PotentialSpec{1.0, {{-7.0, 6.0}, {49.0, 4.0}}, 3, 0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((PotentialSpec{1.0, {{-1.0, 4.0}}, 3, 0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((PotentialSpec{1.0, {}, 0, 0}.validate()), std::invalid_argument);
  CHECK(PotentialSpec{1.0, {{1.0, 4.0}, {1.0, 6.0}}, 3, 0}.max_alpha() == 6.0);
  CHECK(PotentialSpec{}.max_alpha() == 0.0);
  CHECK(describe(PotentialSpec{1.0, {{0.1, 4.0}}, 3, 0}).find("r^-4") != std::string::npos);
}

TEST_CASE("SymMatrix") {
  SymMatrix m(3);
  m(0, 2) = 5.0;
  CHECK(m(2, 0) == 5.0);
  m(1, 1) = -7.0;
  CHECK(m.max_abs() == 7.0);
  const auto lead = m.leading(2);
  CHECK(lead.dim() == 2);
  CHECK(lead(1, 1) == -7.0);
}

TEST_CASE("D = 1 matrix equals the first-order expression") {
  gkritz::testing::Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const double lambda = rng.uniform(0.01, 1000.0);
    const ModelParams p(rng.uniform(1.0, 50.0), rng.uniform(0.2, 10.0));
    const double g = p.gamma_n();
    const double b = p.beta();
    const double want = g / b + b + lambda * b * b / ((g - 1.0) * (g - 2.0)) + b / (4.0 * (g - 1.0));
    const auto H = assemble(p, PotentialSpec{1.0, {{lambda, 4.0}}, 3, 0}, 1);
    CHECK(H(0, 0) == doctest::Approx(want).epsilon(1e-13));
  }
}

TEST_CASE("exact model gives the exact spectrum") {
  for (const ModelParams& p : {ModelParams(2.5, 1.7), ModelParams(0.4, 3.0, 5, 1)}) {
    const PotentialSpec v{p.B(), {{p.A(), 2.0}}, p.N(), p.l()};
    const auto H = assemble(p, v, 12);
    for (std::size_t m = 0; m < 12; ++m) {
      for (std::size_t n = 0; n < 12; ++n) {
        if (m == n) {
          CHECK(H(m, n) == doctest::Approx(gk_energy(p, static_cast<int>(n))).epsilon(1e-14));
        } else {
          CHECK(std::abs(H(m, n)) < 1e-13);
        }
      }
    }
  }
}

TEST_CASE("explicit alpha = 2 term merges with -A") {
  const ModelParams p(3.0, 1.0);
  const PotentialSpec merged{1.0, {{0.1, 4.0}, {2.0, 2.0}}, 3, 0};
  const auto H = assemble(p, merged, 6);
  const BasisLogTable t(p, 7);
  for (int m = 0; m < 6; ++m) {
    for (int n = 0; n < 6; ++n) {
      double want = (m == n ? gk_energy(p, n) : 0.0) + 0.1 * inv_power_element(t, m, n, 4.0) +
                    (2.0 - 3.0) * inv_power_element(t, m, n, 2.0);
      CHECK(H(static_cast<std::size_t>(m), static_cast<std::size_t>(n)) ==
            doctest::Approx(want).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("entries match the compactified quadrature") {
  const ModelParams p(1.92, 1.62);
  const PotentialSpec v{1.0, {{0.1, 4.0}}, 3, 0};
  const auto H = assemble(p, v, 3);
  const gkritz::testing::OracleBasis o{p.A(), p.B(), p.N(), p.l()};
  for (int m = 0; m < 3; ++m) {
    for (int n = 0; n < 3; ++n) {
      const double q = gkritz::testing::hamiltonian_by_quadrature(o, v, m, n);
      CHECK(std::abs(H(static_cast<std::size_t>(m), static_cast<std::size_t>(n)) - q) < 1e-8);
    }
  }
  SUBCASE("several terms, higher dimension") {
    const ModelParams p2(5.0, 2.3, 5, 1);
    const PotentialSpec v2{1.4, {{0.7, 3.3}, {2.0, 6.0}, {0.3, 2.0}}, 5, 1};
    const auto H2 = assemble(p2, v2, 5);
    const gkritz::testing::OracleBasis o2{p2.A(), p2.B(), p2.N(), p2.l()};
    for (int m = 0; m < 5; ++m) {
      for (int n = 0; n <= m; ++n) {
        const double q = gkritz::testing::hamiltonian_by_quadrature(o2, v2, m, n);
        CHECK(std::abs(H2(static_cast<std::size_t>(m), static_cast<std::size_t>(n)) - q) <=
              1e-8 * std::max(1.0, std::abs(q)));
      }
    }
  }
}

TEST_CASE("basis sign invariance") {
  gkritz::testing::Rng rng(42);
  for (int trial = 0; trial < 10; ++trial) {
    const ModelParams p(rng.uniform(4.0, 30.0), rng.uniform(0.5, 20.0));
    const PotentialSpec v{1.0, {{rng.uniform(0.01, 100.0), 4.0}, {rng.uniform(0.0, 10.0), 3.1}}, 3, 0};
    const auto a = eigenvalues(assemble(p, v, 20));
    const auto b = eigenvalues(assemble(p, v, 20, BasisPhase::Flipped));
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-12 * std::max(1.0, std::abs(a[i])));
  }
}

TEST_CASE("pure oscillator bound") {
  // v = c^2 r^2 has exact ground state 3c in three dimensions
  for (double c : {0.5, 1.0, 2.0}) {
    const PotentialSpec v{c * c, {}, 3, 0};
    const double e = eigen_symmetric(assemble(ModelParams(0.0, 1.3), v, 40), 1).values[0];
    CHECK(e >= 3.0 * c - 1e-10);
    CHECK(e < 3.0 * c + 1e-2);
    CHECK(eigen_symmetric(assemble(ModelParams(0.0, c * c), v, 1), 1).values[0] == doctest::Approx(3.0 * c).epsilon(1e-14));
  }
}

TEST_CASE("assembly errors") {
  const PotentialSpec v{1.0, {{1.0, 6.0}}, 3, 0};
  CHECK_THROWS_AS(assemble(ModelParams(1.0, 1.0), v, 0), std::invalid_argument);
  CHECK_THROWS_AS(assemble(ModelParams(1.0, 1.0, 4, 0), v, 3), std::invalid_argument);
  try {
    (void)assemble(ModelParams(1.0, 1.0), v, 3);  // gamma = 2.118 < 3
    FAIL("expected a domain error");
  } catch (const std::domain_error& e) {
    CHECK(std::string(e.what()).find("r^-6") != std::string::npos);
  }
  // the -A counter-term needs gamma > 1, which A > 0 guarantees in N = 3
  CHECK_NOTHROW((assemble(ModelParams(0.0, 1.0, 2, 0), PotentialSpec{1.0, {}, 2, 0}, 3)));
}
