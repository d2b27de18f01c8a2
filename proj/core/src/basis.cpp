#include "gkritz/basis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "gkritz/detail/math.hpp"
#include "gkritz/specfun.hpp"

namespace gkritz {

ModelParams::ModelParams(double A, double B, int N, int l) : A_(A), B_(B), N_(N), l_(l) {
  if (!(A >= 0.0) || !std::isfinite(A)) throw std::invalid_argument("ModelParams: A must be >= 0, got " + std::to_string(A));
  if (!(B > 0.0) || !std::isfinite(B)) throw std::invalid_argument("ModelParams: B must be > 0, got " + std::to_string(B));
  if (N < 1) throw std::invalid_argument("ModelParams: N must be >= 1");
  if (l < 0) throw std::invalid_argument("ModelParams: l must be >= 0");
  beta_ = std::sqrt(B);
  Lambda_ = 0.5 * (N + 2 * l - 3);
  const double shifted = Lambda_ + 0.5;
  gamma_ = 1.0 + std::sqrt(A + shifted * shifted);
}

double gk_energy(const ModelParams& p, int n) {
  return 2.0 * p.beta() * (2.0 * n + p.gamma_n());
}

namespace {

// ln sqrt(2 beta^gamma (gamma)_n / (n! Gamma(gamma)))
double log_norm(const ModelParams& p, int n) {
  const double g = p.gamma_n();
  const double lg = std::numbers::ln2 + g * std::log(p.beta()) + ln_pochhammer(g, n).log_magnitude -
                    ln_factorial(n) - detail::log_gamma(g);
  return 0.5 * lg;
}

}  // namespace

double gk_wavefunction(const ModelParams& p, int n, double r) {
  if (!(r > 0.0)) throw std::domain_error("gk_wavefunction: r must be > 0");
  const double g = p.gamma_n();
  const double z = p.beta() * r * r;
  const double log_envelope = log_norm(p, n) + (g - 0.5) * std::log(r) - 0.5 * z;
  return detail::parity_sign(n) * std::exp(log_envelope) * hyp1f1_terminating(n, g, z);
}

double gk_wavefunction_derivative(const ModelParams& p, int n, double r) {
  if (!(r > 0.0)) throw std::domain_error("gk_wavefunction_derivative: r must be > 0");
  const double g = p.gamma_n();
  const double beta = p.beta();
  const double z = beta * r * r;
  const double log_envelope = log_norm(p, n) + (g - 0.5) * std::log(r) - 0.5 * z;
  const double f = hyp1f1_terminating(n, g, z);
  // d/dz 1F1(-n; g; z) = (-n/g) 1F1(-n+1; g+1; z)
  const double df = n == 0 ? 0.0 : (-static_cast<double>(n) / g) * hyp1f1_terminating(n - 1, g + 1.0, z);
  const double bracket = ((g - 0.5) / r - beta * r) * f + 2.0 * beta * r * df;
  return detail::parity_sign(n) * std::exp(log_envelope) * bracket;
}

}  // namespace gkritz
