#include "gkritz/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gkritz/detail/math.hpp"
#include "gkritz/matelem.hpp"

namespace gkritz {

double PotentialSpec::max_alpha() const {
  double top = 0.0;
  for (const auto& t : terms) top = std::max(top, t.alpha);
  return top;
}

void PotentialSpec::validate() const {
  if (!(a1 > 0.0) || !std::isfinite(a1)) throw std::invalid_argument("potential is not confining: a1 must be > 0");
  if (N < 1) throw std::invalid_argument("dimension N must be >= 1");
  if (l < 0) throw std::invalid_argument("angular momentum l must be >= 0");
  for (const auto& t : terms) {
    if (!(t.alpha > 0.0) || !std::isfinite(t.alpha)) {
      throw std::invalid_argument("singular term exponent must be > 0");
    }
    if (!std::isfinite(t.lambda)) throw std::invalid_argument("singular term coefficient must be finite");
  }
  for (const auto& t : terms) {
    if (t.lambda >= 0.0) continue;
    const bool shielded =
        std::any_of(terms.begin(), terms.end(), [&](const SingularTerm& s) { return s.alpha > t.alpha && s.lambda > 0.0; });
    if (!shielded) {
      std::ostringstream msg;
      msg << "potential unbounded below at the origin: term " << t.lambda << "*r^-" << t.alpha
          << " needs a positive term with a larger exponent";
      throw std::invalid_argument(msg.str());
    }
  }
}

std::string describe(const PotentialSpec& v) {
  std::ostringstream out;
  out << v.a1 << "*r^2";
  for (const auto& t : v.terms) out << (t.lambda < 0 ? " - " : " + ") << std::abs(t.lambda) << "*r^-" << t.alpha;
  out << " (N=" << v.N << ", l=" << v.l << ")";
  return out.str();
}

SymMatrix SymMatrix::leading(std::size_t k) const {
  if (k > dim_) throw std::out_of_range("SymMatrix::leading: size exceeds dimension");
  SymMatrix sub(k);
  std::copy_n(data_.begin(), k * (k + 1) / 2, sub.data_.begin());
  return sub;
}

double SymMatrix::max_abs() const {
  double top = 0.0;
  for (double x : data_) top = std::max(top, std::abs(x));
  return top;
}

namespace {

struct Contribution {
  double alpha;
  double coefficient;
};

std::vector<Contribution> singular_contributions(const ModelParams& p, const PotentialSpec& v) {
  std::vector<Contribution> out;
  auto add = [&](double alpha, double c) {
    for (auto& e : out) {
      if (e.alpha == alpha) {
        e.coefficient += c;
        return;
      }
    }
    out.push_back({alpha, c});
  };
  for (const auto& t : v.terms) add(t.alpha, t.lambda);
  add(2.0, -p.A());
  std::erase_if(out, [](const Contribution& c) { return c.coefficient == 0.0; });
  return out;
}

}  // namespace

SymMatrix assemble(const ModelParams& p, const PotentialSpec& v, int D, BasisPhase phase) {
  if (D < 1) throw std::invalid_argument("assemble: matrix dimension D must be >= 1");
  if (p.N() != v.N || p.l() != v.l) {
    throw std::invalid_argument("assemble: basis and potential disagree on (N, l)");
  }
  const auto singular = singular_contributions(p, v);
  for (const auto& c : singular) {
    if (!(2.0 * p.gamma_n() > c.alpha)) {
      std::ostringstream msg;
      msg << "assemble: term " << c.coefficient << "*r^-" << c.alpha << " diverges for A=" << p.A()
          << " (2*gamma_N=" << 2.0 * p.gamma_n() << ")";
      throw std::domain_error(msg.str());
    }
  }

  const BasisLogTable table(p, D + 1);
  const double quad = v.a1 - p.B();
  SymMatrix H(static_cast<std::size_t>(D));
  for (int m = 0; m < D; ++m) {
    for (int n = m; n < D; ++n) {
      double h = 0.0;
      if (m == n) h += gk_energy(p, n);
      if (quad != 0.0 && n - m <= 1) h += quad * power_element_closed(table, m, n, 2);
      for (const auto& c : singular) {
        const double element = is_even_power(c.alpha)
                                   ? inv_power_element_closed(table, m, n, static_cast<int>(c.alpha))
                                   : inv_power_element(table, m, n, c.alpha);
        h += c.coefficient * element;
      }
      if (phase == BasisPhase::Flipped) h *= detail::parity_sign(m + n);
      H(static_cast<std::size_t>(n), static_cast<std::size_t>(m)) = h;
    }
  }
  return H;
}

}  // namespace gkritz
