#pragma once

namespace gkritz {

/// Parameters of the solvable model  -d^2/dr^2 + (Lambda(Lambda+1) + A)/r^2 + B r^2
/// in N dimensions with angular momentum l.
///
/// Immutable value; the derived quantities are computed once at construction.
class ModelParams {
 public:
  /// Throws std::invalid_argument unless A >= 0, B > 0, N >= 1, l >= 0.
  ModelParams(double A, double B, int N = 3, int l = 0);

  double A() const { return A_; }
  double B() const { return B_; }
  int N() const { return N_; }
  int l() const { return l_; }

  /// sqrt(B)
  double beta() const { return beta_; }
  /// (N + 2l - 3) / 2
  double Lambda() const { return Lambda_; }
  /// 1 + sqrt(A + (Lambda + 1/2)^2)
  double gamma_n() const { return gamma_; }
  /// N + 2l; parameters sharing (A, B, M) have the same spectrum.
  int M() const { return N_ + 2 * l_; }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  double A_;
  double B_;
  int N_;
  int l_;
  double beta_;
  double Lambda_;
  double gamma_;
};

/// Exact level n: 2 beta (2n + gamma_N).
double gk_energy(const ModelParams& p, int n);

/// Normalized eigenfunction psi_n(r), r > 0, including the (-1)^n phase.
double gk_wavefunction(const ModelParams& p, int n, double r);

/// d psi_n / dr.
double gk_wavefunction_derivative(const ModelParams& p, int n, double r);

}  // namespace gkritz
