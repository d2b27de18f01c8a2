#pragma once

#include <optional>

#include "gkritz/hamiltonian.hpp"

namespace gkritz {

struct OracleOptions {
  std::optional<double> r_min;  // default: where the small-r solution is negligible, >= 1e-4
  std::optional<double> r_max;  // default: deep in the outer forbidden region, <= 20
  int log_steps = 6000;         // RK4 steps on the log-uniform inner segment
  double uniform_step = 1e-3;   // RK4 step on the uniform outer segment
  double grid_scale = 1.0;      // multiplies every step; 0.5 halves them
  int max_iterations = 400;
};

struct OracleResult {
  double energy = 0.0;
  int nodes = 0;
  double bracket_width = 0.0;
  double r_min = 0.0;
  double r_max = 0.0;
};

/// The level-th Dirichlet eigenvalue of
///   -psi'' + [Lambda(Lambda+1)/r^2 + V(r)] psi = E psi
/// by outward RK4 shooting: bisection on the node count isolates the level,
/// then the Wronskian mismatch at the outer turning point is driven to zero.
///
/// Throws std::invalid_argument for non-confining or unbounded-below
/// potentials and std::runtime_error if tol is not reached.
OracleResult shoot_eigenvalue(const PotentialSpec& v, int level, double tol, const OracleOptions& options = {});

}  // namespace gkritz
