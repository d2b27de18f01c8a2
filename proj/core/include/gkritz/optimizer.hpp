#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gkritz/hamiltonian.hpp"

namespace gkritz {

struct NelderMeadOptions {
  double initial_step = 0.5;
  double x_tolerance = 1e-7;   // simplex diameter
  double f_tolerance = 1e-10;  // spread of vertex values
  int max_evaluations = 2000;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Nelder-Mead simplex minimization with coefficients (1, 2, 0.5, 0.5).
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> start,
                             const NelderMeadOptions& options = {});

/// Basis parameters (A, B).
struct BasisPoint {
  double A = 0.0;
  double B = 1.0;

  friend bool operator==(const BasisPoint&, const BasisPoint&) = default;
};

struct BoundResult {
  double A_star = 0.0;
  double B_star = 0.0;
  std::vector<double> bounds;  // all D eigenvalue bounds at (A_star, B_star)
  int target_level = 0;
  int evaluations = 0;
  bool converged = false;

  double bound() const { return bounds.at(static_cast<std::size_t>(target_level)); }
};

struct MinimizeOptions {
  std::optional<BasisPoint> init;   // warm start, tried after the two default starts
  int budget = 2000;                // objective evaluations per start
  std::optional<double> fixed_B;    // pin B and minimize over A only
  int grid_seeds = 3;               // best coarse-grid cells used as extra starts
};

/// Smallest A keeping 2 gamma_N(A) >= max alpha + 0.01 for every singular term.
double feasible_A_min(const PotentialSpec& v);

/// Target-level eigenvalue of the D x D matrix at fixed (A, B).
double bound_at(const PotentialSpec& v, int D, int target_level, BasisPoint point);

/// Minimize the target-level upper bound over (A, B) with multistart
/// Nelder-Mead in the coordinates A = A_min + e^u, B = e^w. Starts are two
/// fixed points, the best cells of a coarse log grid, then options.init.
BoundResult minimize_bound(const PotentialSpec& v, int D, int target_level, const MinimizeOptions& options = {});

struct ConvergenceResult {
  double final_bound = 0.0;
  int D_used = 0;
  std::vector<std::pair<int, BoundResult>> history;
  bool converged = false;
};

/// Run minimize_bound along an increasing D schedule, warm-starting each step
/// from the previous optimum, until two successive bounds differ by less than
/// half a unit in the requested decimal place.
ConvergenceResult converge_to_digits(const PotentialSpec& v, int target_level, int digits,
                                     std::span<const int> schedule, const MinimizeOptions& options = {});

enum class FirstOrderMode { AOnly, AAndB };

/// One-dimensional (D = 1) ground-state bound for r^2 + lambda r^-4 in three
/// dimensions. AOnly (B = 1) is the closed-form minimum over A; AAndB
/// minimizes numerically over both parameters.
/// Throws std::domain_error when lambda is outside the formula's range.
double ground_state_first_order(double lambda, FirstOrderMode mode);

}  // namespace gkritz
