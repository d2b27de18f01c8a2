#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gkritz/basis.hpp"

namespace gkritz {

/// One singular term lambda * r^-alpha.
struct SingularTerm {
  double lambda = 0.0;
  double alpha = 0.0;

  friend bool operator==(const SingularTerm&, const SingularTerm&) = default;
};

/// Target potential a1 r^2 + sum_k lambda_k r^-alpha_k in N dimensions with
/// angular momentum l. The centrifugal term is implied by (N, l).
struct PotentialSpec {
  double a1 = 1.0;
  std::vector<SingularTerm> terms;
  int N = 3;
  int l = 0;

  /// Largest alpha among the singular terms, or 0 if there are none.
  double max_alpha() const;

  /// Throws std::invalid_argument if the potential is not confining or is
  /// unbounded below at the origin.
  void validate() const;

  friend bool operator==(const PotentialSpec&, const PotentialSpec&) = default;
};

/// Human-readable form, e.g. "1*r^2 + 0.1*r^-4 (N=3, l=0)".
std::string describe(const PotentialSpec& v);

/// Dense symmetric matrix with packed lower-triangle storage.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t dim) : dim_(dim), data_(dim * (dim + 1) / 2, 0.0) {}

  std::size_t dim() const { return dim_; }

  double operator()(std::size_t i, std::size_t j) const { return data_[index(i, j)]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[index(i, j)]; }

  /// Leading principal submatrix of size k.
  SymMatrix leading(std::size_t k) const;

  /// Largest absolute entry.
  double max_abs() const;

  std::span<const double> packed() const { return data_; }

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  static std::size_t index(std::size_t i, std::size_t j) {
    if (i < j) std::swap(i, j);
    return i * (i + 1) / 2 + j;
  }

  std::size_t dim_ = 0;
  std::vector<double> data_;
};

/// Phase convention for the basis functions. Flipped drops the (-1)^n factor,
/// which multiplies every off-diagonal element by (-1)^(m+n).
enum class BasisPhase { Standard, Flipped };

/// H_mn = 2 beta (2n + gamma_N) delta_mn + (a1 - B) r^2_mn
///        + sum_k lambda_k r^-alpha_k_mn - A r^-2_mn
/// for 0 <= m, n < D. An explicit alpha = 2 term merges with -A.
///
/// Throws std::invalid_argument if (N, l) differ or D < 1, and
/// std::domain_error naming the term if some element diverges.
SymMatrix assemble(const ModelParams& p, const PotentialSpec& v, int D, BasisPhase phase = BasisPhase::Standard);

}  // namespace gkritz
