#pragma once

#include <optional>
#include <vector>

#include "gkritz/hamiltonian.hpp"

namespace gkritz {

/// Lowest eigenvalues in ascending order, with unit eigenvectors when requested.
struct Spectrum {
  std::vector<double> values;
  std::optional<std::vector<std::vector<double>>> vectors;  // vectors->at(i) pairs with values[i]
};

/// Working precision of the reduction. Extended runs in long double, which
/// matters when ||H|| dwarfs the wanted eigenvalue (near-singular bases).
enum class EigenPrecision { Double, Extended };

/// The k algebraically smallest eigenvalues of H.
///
/// Householder tridiagonalization followed by implicit-shift QL. Throws
/// std::invalid_argument for k outside [1, D] or non-finite entries, and
/// std::runtime_error if QL fails to converge.
Spectrum eigen_symmetric(const SymMatrix& H, int k, bool want_vectors = false,
                         EigenPrecision precision = EigenPrecision::Double);

/// Eigenvalues only; same as eigen_symmetric(H, D).values.
std::vector<double> eigenvalues(const SymMatrix& H);

}  // namespace gkritz
