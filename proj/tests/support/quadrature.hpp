#pragma once

#include <functional>
#include <vector>

#include "gkritz/hamiltonian.hpp"

namespace gkritz::testing {

// Basis functions rebuilt from Boost's 1F1 and gamma functions so that the
// quadrature oracle shares no code with the library under test.
struct OracleBasis {
  double A, B;
  int N, l;
  double beta() const;
  double gamma() const;
  double Lambda() const;
  // psi_n(r) = lead(r) * poly(r); lead carries r^(gamma-1/2) e^(-beta r^2/2)
  // in log form so tiny r never underflows before the power is applied.
  double log_norm(int n) const;
  double poly(int n, double r) const;
  double dpoly_dr(int n, double r) const;
  double psi(int n, double r) const;
  double dpsi(int n, double r) const;
};

// Integral of f over (a, b) by tanh-sinh; throws on failure.
double integrate(const std::function<double(double)>& f, double a, double b);

// Radius beyond which psi_m psi_n r^power is below 1e-18 of its scale.
double tail_radius(const OracleBasis& b, int m, int n, double power);

// <psi_m| r^power |psi_n> by quadrature; power may be negative.
double element_by_quadrature(const OracleBasis& b, int m, int n, double power);

// <psi_m| -d2/dr2 + Lambda(Lambda+1)/r^2 + V |psi_n> in the compactified
// form  int psi_m' psi_n' + (Lambda(Lambda+1)/r^2 + V) psi_m psi_n dr.
double hamiltonian_by_quadrature(const OracleBasis& b, const PotentialSpec& v, int m, int n);

}  // namespace gkritz::testing
