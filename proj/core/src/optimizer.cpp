#include "gkritz/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "gkritz/eigensolver.hpp"

namespace gkritz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFeasibilityMargin = 1e-2;
constexpr int kMaxRestarts = 8;
// Points where rounding in the assembled entries (eps * max|H_ij|) exceeds
// this fraction of the bound are not trusted by the optimizer.
constexpr double kTrustedRoundoff = 1e-11;

struct Vertex {
  std::vector<double> x;
  double f;
};

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> start,
                             const NelderMeadOptions& options) {
  const std::size_t n = start.size();
  if (n == 0) throw std::invalid_argument("nelder_mead: empty start point");
  constexpr double kReflect = 1.0;
  constexpr double kExpand = 2.0;
  constexpr double kContract = 0.5;
  constexpr double kShrink = 0.5;

  int evaluations = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evaluations;
    const double y = f(x);
    return std::isfinite(y) ? y : kInf;
  };

  std::vector<Vertex> simplex;
  simplex.reserve(n + 1);
  simplex.push_back({start, eval(start)});
  for (std::size_t i = 0; i < n; ++i) {
    auto x = start;
    x[i] += options.initial_step;
    simplex.push_back({x, eval(x)});
  }

  auto affine = [n](const std::vector<double>& from, const std::vector<double>& to, double t) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = from[i] + t * (to[i] - from[i]);
    return out;
  };

  bool converged = false;
  while (true) {
    std::stable_sort(simplex.begin(), simplex.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });

    double diameter = 0.0;
    for (std::size_t v = 1; v <= n; ++v) {
      for (std::size_t i = 0; i < n; ++i) diameter = std::max(diameter, std::abs(simplex[v].x[i] - simplex[0].x[i]));
    }
    const double spread = simplex[n].f - simplex[0].f;
    if (diameter < options.x_tolerance && spread < options.f_tolerance) {
      converged = true;
      break;
    }
    if (evaluations >= options.max_evaluations) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[v].x[i];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    Vertex& worst = simplex[n];
    const auto xr = affine(centroid, worst.x, -kReflect);
    const double fr = eval(xr);

    if (fr < simplex[0].f) {
      const auto xe = affine(centroid, xr, kExpand);
      const double fe = eval(xe);
      worst = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
      continue;
    }
    if (fr < simplex[n - 1].f) {
      worst = {xr, fr};
      continue;
    }
    if (fr < worst.f) {
      const auto xc = affine(centroid, xr, kContract);
      const double fc = eval(xc);
      if (fc <= fr) {
        worst = {xc, fc};
        continue;
      }
    } else {
      const auto xc = affine(centroid, worst.x, kContract);
      const double fc = eval(xc);
      if (fc < worst.f) {
        worst = {xc, fc};
        continue;
      }
    }
    for (std::size_t v = 1; v <= n; ++v) {
      simplex[v].x = affine(simplex[0].x, simplex[v].x, kShrink);
      simplex[v].f = eval(simplex[v].x);
    }
  }

  std::stable_sort(simplex.begin(), simplex.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  return {simplex[0].x, simplex[0].f, evaluations, converged};
}

double feasible_A_min(const PotentialSpec& v) {
  double alpha_max = 0.0;
  for (const auto& t : v.terms) {
    if (t.lambda != 0.0) alpha_max = std::max(alpha_max, t.alpha);
  }
  const double gamma_min = 0.5 * (alpha_max + kFeasibilityMargin);
  if (gamma_min <= 1.0) return 0.0;
  const double shifted = 0.5 * (v.N + 2 * v.l - 3) + 0.5;
  const double a = (gamma_min - 1.0) * (gamma_min - 1.0) - shifted * shifted;
  return std::max(0.0, a);
}

double bound_at(const PotentialSpec& v, int D, int target_level, BasisPoint point) {
  const ModelParams p(point.A, point.B, v.N, v.l);
  return eigen_symmetric(assemble(p, v, D), target_level + 1).values.back();
}

BoundResult minimize_bound(const PotentialSpec& v, int D, int target_level, const MinimizeOptions& options) {
  v.validate();
  if (D < 1) throw std::invalid_argument("minimize_bound: D must be >= 1");
  if (target_level < 0 || target_level >= D) {
    throw std::invalid_argument("minimize_bound: target level " + std::to_string(target_level) +
                                " outside the " + std::to_string(D) + "-dimensional subspace");
  }
  if (options.fixed_B && !(*options.fixed_B > 0.0)) throw std::invalid_argument("minimize_bound: fixed B must be > 0");

  const double A_min = feasible_A_min(v);
  const bool fix_B = options.fixed_B.has_value();

  auto to_point = [&](std::span<const double> x) {
    return BasisPoint{A_min + std::exp(x[0]), fix_B ? *options.fixed_B : std::exp(x[1])};
  };
  bool guard = true;
  auto objective = [&](std::span<const double> x) {
    const BasisPoint pt = to_point(x);
    if (!std::isfinite(pt.A) || !std::isfinite(pt.B) || pt.B <= 0.0 || pt.A <= 0.0) return kInf;
    try {
      const SymMatrix H = assemble(ModelParams(pt.A, pt.B, v.N, v.l), v, D);
      const double e = eigen_symmetric(H, target_level + 1).values.back();
      if (guard && H.max_abs() * std::numeric_limits<double>::epsilon() > kTrustedRoundoff * (1.0 + std::abs(e))) {
        return kInf;
      }
      return e;
    } catch (const std::exception&) {
      return kInf;
    }
  };
  auto to_coords = [&](BasisPoint pt) {
    std::vector<double> x{std::log(std::max(pt.A - A_min, 1e-12))};
    if (!fix_B) x.push_back(std::log(pt.B));
    return x;
  };

  int total_evaluations = 0;
  auto search = [&]() {
    std::vector<BasisPoint> starts{{std::max(1.0, A_min + 1.0), v.a1}, {A_min + 10.0, 4.0 * v.a1}};
    if (options.grid_seeds > 0) {
      // Log grid over A - A_min in [0.1, 200] and B in [a1/4, 4 a1 D]; its
      // discrete local minima (best first) seed one start per basin.
      constexpr int kGrid = 9;
      const int nb = fix_B ? 1 : kGrid;
      const double b_hi = fix_B ? 0.0 : std::log(4.0 * v.a1 * D);
      const double b_lo = fix_B ? 0.0 : std::log(0.25 * v.a1);
      std::vector<double> value(static_cast<std::size_t>(kGrid * nb));
      std::vector<BasisPoint> point(value.size());
      for (int i = 0; i < kGrid; ++i) {
        for (int j = 0; j < nb; ++j) {
          std::vector<double> x{std::log(0.1) + (std::log(200.0) - std::log(0.1)) * i / (kGrid - 1)};
          if (!fix_B) x.push_back(b_lo + (b_hi - b_lo) * j / (kGrid - 1));
          ++total_evaluations;
          value[static_cast<std::size_t>(i * nb + j)] = objective(x);
          point[static_cast<std::size_t>(i * nb + j)] = to_point(x);
        }
      }
      std::vector<std::pair<double, BasisPoint>> minima;
      for (int i = 0; i < kGrid; ++i) {
        for (int j = 0; j < nb; ++j) {
          const double f = value[static_cast<std::size_t>(i * nb + j)];
          if (!std::isfinite(f)) continue;
          bool lowest = true;
          for (int di = -1; di <= 1 && lowest; ++di) {
            for (int dj = -1; dj <= 1; ++dj) {
              const int a = i + di;
              const int b = j + dj;
              if ((di == 0 && dj == 0) || a < 0 || a >= kGrid || b < 0 || b >= nb) continue;
              if (value[static_cast<std::size_t>(a * nb + b)] < f) {
                lowest = false;
                break;
              }
            }
          }
          if (lowest) minima.emplace_back(f, point[static_cast<std::size_t>(i * nb + j)]);
        }
      }
      std::stable_sort(minima.begin(), minima.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      const std::size_t seeds = std::min(minima.size(), static_cast<std::size_t>(options.grid_seeds));
      for (std::size_t k = 0; k < seeds; ++k) starts.push_back(minima[k].second);
    }
    if (options.init) starts.push_back(*options.init);

    NelderMeadOptions nm;
    std::optional<NelderMeadResult> best;
    for (const auto& start : starts) {
      int remaining = options.budget;
      NelderMeadResult chain;
      chain.x = to_coords(start);
      chain.value = kInf;
      // Restart from the incumbent until a fresh simplex no longer improves it.
      for (int restart = 0; restart <= kMaxRestarts && remaining > 0; ++restart) {
        nm.max_evaluations = remaining;
        auto run = nelder_mead(objective, chain.x, nm);
        remaining -= run.evaluations;
        total_evaluations += run.evaluations;
        const bool improved = run.value < chain.value - 1e-13;
        if (run.value <= chain.value) {
          chain.x = run.x;
          chain.value = run.value;
        }
        chain.converged = run.converged;
        if (!improved && run.converged) break;
      }
      if (!best || chain.value < best->value) best = chain;
    }
    return best;
  };
  auto best = search();
  if (!std::isfinite(best->value)) {
    // Nothing passed the round-off guard; fall back to the raw bound.
    guard = false;
    best = search();
  }

  const BasisPoint opt = to_point(best->x);
  const ModelParams p(opt.A, opt.B, v.N, v.l);
  BoundResult result;
  result.A_star = opt.A;
  result.B_star = opt.B;
  result.bounds = eigenvalues(assemble(p, v, D));
  result.target_level = target_level;
  result.evaluations = total_evaluations;
  result.converged = best->converged;
  return result;
}

ConvergenceResult converge_to_digits(const PotentialSpec& v, int target_level, int digits,
                                     std::span<const int> schedule, const MinimizeOptions& options) {
  if (schedule.empty()) throw std::invalid_argument("converge_to_digits: empty D schedule");
  if (digits < 1) throw std::invalid_argument("converge_to_digits: digits must be >= 1");
  if (!std::is_sorted(schedule.begin(), schedule.end()) ||
      std::adjacent_find(schedule.begin(), schedule.end()) != schedule.end()) {
    throw std::invalid_argument("converge_to_digits: D schedule must be strictly increasing");
  }
  const double threshold = 0.5 * std::pow(10.0, -digits);

  ConvergenceResult out;
  MinimizeOptions step = options;
  for (const int D : schedule) {
    BoundResult r = minimize_bound(v, D, target_level, step);
    step.init = BasisPoint{r.A_star, r.B_star};
    const double b = r.bound();
    const bool agree = !out.history.empty() && std::abs(b - out.final_bound) < threshold;
    out.history.emplace_back(D, std::move(r));
    out.final_bound = b;
    out.D_used = D;
    if (agree) {
      out.converged = true;
      break;
    }
  }
  return out;
}

double ground_state_first_order(double lambda, FirstOrderMode mode) {
  if (!(lambda > 0.0)) throw std::domain_error("ground_state_first_order: lambda must be > 0");
  // Energy of the D = 1 matrix at B = 1 as a function of gamma > 2.
  auto a_only = [lambda](double g) { return g + 1.0 + lambda / ((g - 1.0) * (g - 2.0)) + 1.0 / (4.0 * (g - 1.0)); };

  if (mode == FirstOrderMode::AOnly) {
    if (lambda <= 0.25) {
      throw std::domain_error("ground_state_first_order: closed form needs lambda > 1/4");
    }
    // Stationarity reduces to (g - 2)^2 (g - 1/2) = 2 lambda; Cardano's root.
    const double x = 8.0 * lambda - 1.0 + 4.0 * std::sqrt(4.0 * lambda * lambda - lambda);
    const double c = std::cbrt(x);
    const double g = 1.5 + 0.5 * (c + 1.0 / c);
    return a_only(g);
  }

  auto both = [lambda](std::span<const double> x) {
    const double g = 2.0 + std::exp(x[0]);
    const double b = std::exp(x[1]);
    return g / b + b + lambda * b * b / ((g - 1.0) * (g - 2.0)) + b / (4.0 * (g - 1.0));
  };
  NelderMeadOptions nm;
  nm.x_tolerance = 1e-10;
  nm.f_tolerance = 1e-13;
  nm.max_evaluations = 5000;
  std::vector<double> x{std::log(std::max(lambda, 1.0)), 0.0};
  double best = kInf;
  for (int restart = 0; restart <= kMaxRestarts; ++restart) {
    const auto run = nelder_mead(both, x, nm);
    if (!(run.value < best - 1e-14)) {
      best = std::min(best, run.value);
      break;
    }
    best = run.value;
    x = run.x;
  }
  return best;
}

}  // namespace gkritz
