#include "gkritz/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace gkritz {

namespace {

constexpr double kDecayExponent = 40.0;  // e^-40 amplitude at both ends of the domain
constexpr double kRMinFloor = 1e-4;
constexpr double kRMaxCap = 20.0;
constexpr int kMaxGridRefinements = 3;

// W(r) = Lambda(Lambda+1)/r^2 + a1 r^2 + sum lambda_k r^-alpha_k
class EffectivePotential {
 public:
  explicit EffectivePotential(const PotentialSpec& v) : a1_(v.a1) {
    const double Lambda = 0.5 * (v.N + 2 * v.l - 3);
    inverse_square_ = Lambda * (Lambda + 1.0);
    for (const auto& t : v.terms) {
      if (t.lambda == 0.0) continue;
      if (t.alpha == 2.0) {
        inverse_square_ += t.lambda;
      } else {
        terms_.push_back(t);
      }
    }
    for (const auto& t : terms_) {
      if (t.alpha > 2.0 && (!leading_ || t.alpha > leading_->alpha)) leading_ = t;
    }
    if (!leading_ && inverse_square_ < -0.25) {
      throw std::invalid_argument("oracle: r^-2 coefficient below -1/4 makes the potential unbounded below");
    }
    if (leading_ && leading_->lambda <= 0.0) {
      throw std::invalid_argument("oracle: leading singular term must be repulsive");
    }
  }

  double operator()(double r) const {
    double w = inverse_square_ / (r * r) + a1_ * r * r;
    for (const auto& t : terms_) w += t.lambda * std::pow(r, -t.alpha);
    return w;
  }

  double derivative(double r) const {
    double w = -2.0 * inverse_square_ / (r * r * r) + 2.0 * a1_ * r;
    for (const auto& t : terms_) w -= t.alpha * t.lambda * std::pow(r, -t.alpha - 1.0);
    return w;
  }

  double a1() const { return a1_; }
  const std::optional<SingularTerm>& leading() const { return leading_; }
  double inverse_square() const { return inverse_square_; }
  const std::vector<SingularTerm>& weak_terms() const { return terms_; }

 private:
  double a1_;
  double inverse_square_ = 0.0;
  std::vector<SingularTerm> terms_;
  std::optional<SingularTerm> leading_;
};

double default_r_min(const EffectivePotential& w) {
  if (const auto& lead = w.leading()) {
    // Solve sqrt(c) r^(1 - alpha/2) / (alpha/2 - 1) = kDecayExponent.
    const double k = 0.5 * lead->alpha - 1.0;
    const double r = std::pow(kDecayExponent * k / std::sqrt(lead->lambda), -1.0 / k);
    return std::max(r, kRMinFloor);
  }
  return kRMinFloor;
}

double default_r_max(const EffectivePotential& w, double energy) {
  double r = std::sqrt(std::max(energy, 0.0) / w.a1()) + 0.5;
  double action = 0.0;
  const double h = 1e-2;
  while (action < kDecayExponent && r < kRMaxCap) {
    const double excess = w(r) - energy;
    if (excess > 0.0) action += std::sqrt(excess) * h;
    r += h;
  }
  return std::min(r, kRMaxCap);
}

struct State {
  double y;
  double dy;
};

class Shooter {
 public:
  Shooter(const EffectivePotential& w, double r_min, double r_max, const OracleOptions& opt) : w_(w) {
    const double r_switch = std::max(std::min(1.0, 0.5 * r_max), r_min);
    nodes_.push_back(r_min);
    if (r_switch > r_min) {
      const int n_log = std::max(16, static_cast<int>(std::ceil(opt.log_steps / opt.grid_scale)));
      const double dx = std::log(r_switch / r_min) / n_log;
      for (int i = 1; i <= n_log; ++i) nodes_.push_back(r_min * std::exp(dx * i));
      nodes_.back() = r_switch;
    }
    const double h = opt.uniform_step * opt.grid_scale;
    const int n_uni = std::max(16, static_cast<int>(std::ceil((r_max - r_switch) / h)));
    const double step = (r_max - r_switch) / n_uni;
    for (int i = 1; i <= n_uni; ++i) nodes_.push_back(r_switch + step * i);
    nodes_.back() = r_max;

    w_node_.resize(nodes_.size());
    w_mid_.resize(nodes_.size() - 1);
    for (std::size_t i = 0; i < nodes_.size(); ++i) w_node_[i] = w(nodes_[i]);
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) w_mid_[i] = w(0.5 * (nodes_[i] + nodes_[i + 1]));
  }

  double r_min() const { return nodes_.front(); }
  double r_max() const { return nodes_.back(); }
  double potential_min() const { return *std::min_element(w_node_.begin(), w_node_.end()); }

  // Small-r start: WKB for a dominant r^-alpha (alpha > 2), Frobenius otherwise.
  State start(double energy) const {
    const double r = nodes_.front();
    if (w_.leading()) {
      const double excess = w_node_.front() - energy;
      const double k = std::sqrt(std::max(excess, 1e-300));
      return {1.0, k - 0.25 * w_.derivative(r) / std::max(excess, 1e-300)};
    }
    const double s = 0.5 + std::sqrt(0.25 + w_.inverse_square());
    double series = 1.0;
    double dseries = 0.0;
    const double b2 = -energy / (4.0 * s + 2.0);
    series += b2 * r * r;
    dseries += 2.0 * b2 * r;
    for (const auto& t : w_.weak_terms()) {
      const double p = 2.0 - t.alpha;
      const double b = t.lambda / (p * (2.0 * s + 1.0 - t.alpha));
      series += b * std::pow(r, p);
      dseries += b * p * std::pow(r, p - 1.0);
    }
    return {series, s / r * series + dseries};
  }

  // Outward integration from r_min to node `end`; counts sign changes.
  State outward(double energy, std::size_t end, int* sign_changes) const {
    State s = start(energy);
    int changes = 0;
    for (std::size_t i = 0; i < end; ++i) {
      const double prev = s.y;
      s = rk4(s, i, +1, energy);
      if ((prev < 0.0 && s.y >= 0.0) || (prev > 0.0 && s.y <= 0.0)) ++changes;
      renormalize(s);
    }
    if (sign_changes) *sign_changes = changes;
    return s;
  }

  // Inward integration from psi(r_max) = 0 down to node `end`.
  State inward(double energy, std::size_t end) const {
    State s{0.0, -1.0};
    for (std::size_t i = nodes_.size() - 1; i > end; --i) {
      s = rk4(s, i - 1, -1, energy);
      renormalize(s);
    }
    return s;
  }

  int count_nodes(double energy) const {
    int changes = 0;
    outward(energy, nodes_.size() - 1, &changes);
    return changes;
  }

  // Index of the outermost grid node with W(r) <= energy.
  std::size_t matching_index(double energy) const {
    std::size_t idx = nodes_.size() / 2;
    for (std::size_t i = nodes_.size() - 1; i > 0; --i) {
      if (w_node_[i] <= energy) {
        idx = i;
        break;
      }
    }
    return std::clamp<std::size_t>(idx, 1, nodes_.size() - 2);
  }

  // Normalized Wronskian of the outward and inward solutions at node idx.
  double mismatch(double energy, std::size_t idx) const {
    const State o = outward(energy, idx, nullptr);
    const State in = inward(energy, idx);
    const double no = std::hypot(o.y, o.dy);
    const double ni = std::hypot(in.y, in.dy);
    return (o.dy * in.y - in.dy * o.y) / (no * ni);
  }

 private:
  // One RK4 step for y'' = (W - E) y between nodes i and i + dir.
  State rk4(State s, std::size_t i, int dir, double energy) const {
    const double h_signed = dir > 0 ? nodes_[i + 1] - nodes_[i] : nodes_[i] - nodes_[i + 1];
    const double w0 = (dir > 0 ? w_node_[i] : w_node_[i + 1]) - energy;
    const double wm = w_mid_[i] - energy;
    const double w1 = (dir > 0 ? w_node_[i + 1] : w_node_[i]) - energy;
    const double hh = 0.5 * h_signed;
    const double k1y = s.dy;
    const double k1p = w0 * s.y;
    const double k2y = s.dy + hh * k1p;
    const double k2p = wm * (s.y + hh * k1y);
    const double k3y = s.dy + hh * k2p;
    const double k3p = wm * (s.y + hh * k2y);
    const double k4y = s.dy + h_signed * k3p;
    const double k4p = w1 * (s.y + h_signed * k3y);
    return {s.y + h_signed / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y),
            s.dy + h_signed / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)};
  }

  static void renormalize(State& s) {
    const double mag = std::max(std::abs(s.y), std::abs(s.dy));
    if (mag > 1e100 || (mag < 1e-100 && mag > 0.0)) {
      s.y /= mag;
      s.dy /= mag;
    }
  }

  const EffectivePotential& w_;
  std::vector<double> nodes_;
  std::vector<double> w_node_;
  std::vector<double> w_mid_;
};

struct MonotonicityViolation {};

OracleResult solve(const EffectivePotential& w, int level, double tol, const OracleOptions& opt) {
  const double r_min = opt.r_min.value_or(default_r_min(w));
  const double spacing = 4.0 * std::sqrt(w.a1());

  // Grow the upper energy until it sits above the level, rebuilding the
  // domain for each candidate so the outer tail stays resolved.
  double e_hi = 0.0;
  std::optional<Shooter> shooter;
  {
    const Shooter probe(w, r_min, opt.r_max.value_or(default_r_max(w, spacing)), opt);
    double e_lo = probe.potential_min();
    double step = spacing * (level + 1);
    for (int attempt = 0;; ++attempt) {
      e_hi = e_lo + step;
      shooter.emplace(w, r_min, opt.r_max.value_or(default_r_max(w, e_hi)), opt);
      if (shooter->count_nodes(e_hi) >= level + 1) break;
      if (attempt > 60) throw std::runtime_error("oracle: could not bracket the requested level");
      step *= 2.0;
    }
  }
  const Shooter& sh = *shooter;
  double lo = sh.potential_min();
  double hi = e_hi;
  int n_lo = sh.count_nodes(lo);
  int n_hi = sh.count_nodes(hi);
  if (n_lo > level) throw std::runtime_error("oracle: nodes below the potential minimum");

  int iterations = 0;
  // Bisection on the node count until exactly one level is enclosed.
  while (!(n_lo == level && n_hi == level + 1) || hi - lo > 1e-3 * (1.0 + std::abs(hi))) {
    if (++iterations > opt.max_iterations) throw std::runtime_error("oracle: iteration cap reached while bracketing");
    const double mid = 0.5 * (lo + hi);
    const int n_mid = sh.count_nodes(mid);
    if (n_mid < n_lo || n_mid > n_hi) throw MonotonicityViolation{};
    if (n_mid <= level) {
      lo = mid;
      n_lo = n_mid;
    } else {
      hi = mid;
      n_hi = n_mid;
    }
    if (hi - lo <= tol && n_lo == level && n_hi == level + 1) break;
  }

  // Illinois iteration on the matching Wronskian, keeping the bracket.
  const std::size_t idx = sh.matching_index(0.5 * (lo + hi));
  double f_lo = sh.mismatch(lo, idx);
  double f_hi = sh.mismatch(hi, idx);
  double g_lo = f_lo;  // unscaled values for the final interpolation
  double g_hi = f_hi;
  int side = 0;
  // Run past tol so the reported energy does not depend on where the
  // bracket happened to land.
  const double target = std::max(1e-3 * tol, 1e-14 * (1.0 + std::abs(hi)));
  while (hi - lo > target) {
    if (hi - lo <= tol && iterations > opt.max_iterations / 2) break;
    if (++iterations > opt.max_iterations) break;
    const double width = hi - lo;
    double trial = (f_lo * f_hi < 0.0) ? hi - f_hi * (hi - lo) / (f_hi - f_lo) : 0.5 * (lo + hi);
    if (!(trial > lo && trial < hi)) trial = 0.5 * (lo + hi);
    const double f_trial = sh.mismatch(trial, idx);
    const int n_trial = sh.count_nodes(trial);
    if (n_trial < n_lo || n_trial > n_hi) throw MonotonicityViolation{};
    if (f_trial == 0.0) {
      lo = hi = trial;
      break;
    }
    if (n_trial <= level) {
      lo = trial;
      f_lo = g_lo = f_trial;
      if (side == -1) f_hi *= 0.5;
      side = -1;
    } else {
      hi = trial;
      f_hi = g_hi = f_trial;
      if (side == +1) f_lo *= 0.5;
      side = +1;
    }
    // Fall back to a bisection step when the secant stalls.
    if (hi - lo > 0.5 * width && hi - lo > target) {
      const double mid = 0.5 * (lo + hi);
      const double f_mid = sh.mismatch(mid, idx);
      if (sh.count_nodes(mid) <= level) {
        lo = mid;
        f_lo = g_lo = f_mid;
      } else {
        hi = mid;
        f_hi = g_hi = f_mid;
      }
      side = 0;
    }
  }
  if (hi - lo > tol) {
    throw std::runtime_error("oracle: tolerance " + std::to_string(tol) + " not reached within iteration cap");
  }

  OracleResult out;
  out.energy = (g_lo * g_hi < 0.0) ? hi - g_hi * (hi - lo) / (g_hi - g_lo) : 0.5 * (lo + hi);
  out.nodes = n_lo;
  out.bracket_width = hi - lo;
  out.r_min = sh.r_min();
  out.r_max = sh.r_max();
  return out;
}

}  // namespace

OracleResult shoot_eigenvalue(const PotentialSpec& v, int level, double tol, const OracleOptions& options) {
  v.validate();
  if (level < 0) throw std::invalid_argument("oracle: level must be >= 0");
  if (!(tol > 0.0)) throw std::invalid_argument("oracle: tolerance must be > 0");
  const EffectivePotential w(v);
  OracleOptions opt = options;
  for (int refinement = 0;; ++refinement) {
    try {
      return solve(w, level, tol, opt);
    } catch (const MonotonicityViolation&) {
      if (refinement >= kMaxGridRefinements) {
        throw std::runtime_error("oracle: node count not monotone in E even after grid refinement");
      }
      opt.grid_scale *= 0.5;
    }
  }
}

}  // namespace gkritz
