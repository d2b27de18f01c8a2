#include "gkritz/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace gkritz {

namespace {

constexpr int kMaxQlIterations = 60;

// Dense row-major square work matrix.
template <class T>
class Dense {
 public:
  explicit Dense(std::size_t n) : n_(n), a_(n * n, T(0)) {}
  T& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  T operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<T> a_;
};

// Householder reduction of the symmetric matrix held in V to tridiagonal form
// (diagonal d, subdiagonal e with e[0] = 0). With accumulate, V ends holding
// the orthogonal transformation.
template <class T>
void tridiagonalize(Dense<T>& V, std::vector<T>& d, std::vector<T>& e, bool accumulate) {
  const std::size_t n = d.size();
  for (std::size_t j = 0; j < n; ++j) d[j] = V(n - 1, j);

  for (std::size_t i = n - 1; i > 0; --i) {
    T scale = T(0);
    T h = T(0);
    for (std::size_t k = 0; k < i; ++k) scale += std::abs(d[k]);
    if (scale == T(0)) {
      e[i] = d[i - 1];
      for (std::size_t j = 0; j < i; ++j) {
        d[j] = V(i - 1, j);
        V(i, j) = T(0);
        V(j, i) = T(0);
      }
    } else {
      for (std::size_t k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      T f = d[i - 1];
      T g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (std::size_t j = 0; j < i; ++j) e[j] = T(0);

      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        V(j, i) = f;
        g = e[j] + V(j, j) * f;
        for (std::size_t k = j + 1; k < i; ++k) {
          g += V(k, j) * d[k];
          e[k] += V(k, j) * f;
        }
        e[j] = g;
      }
      f = T(0);
      for (std::size_t j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const T hh = f / (h + h);
      for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (std::size_t k = j; k < i; ++k) V(k, j) -= (f * e[k] + g * d[k]);
        d[j] = V(i - 1, j);
        V(i, j) = T(0);
      }
    }
    d[i] = h;
  }

  if (!accumulate) {
    for (std::size_t j = 0; j < n; ++j) d[j] = V(j, j);
    e[0] = T(0);
    return;
  }

  for (std::size_t i = 0; i + 1 < n; ++i) {
    V(n - 1, i) = V(i, i);
    V(i, i) = T(1);
    const T h = d[i + 1];
    if (h != T(0)) {
      for (std::size_t k = 0; k <= i; ++k) d[k] = V(k, i + 1) / h;
      for (std::size_t j = 0; j <= i; ++j) {
        T g = T(0);
        for (std::size_t k = 0; k <= i; ++k) g += V(k, i + 1) * V(k, j);
        for (std::size_t k = 0; k <= i; ++k) V(k, j) -= g * d[k];
      }
    }
    for (std::size_t k = 0; k <= i; ++k) V(k, i + 1) = T(0);
  }
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = V(n - 1, j);
    V(n - 1, j) = T(0);
  }
  V(n - 1, n - 1) = T(1);
  e[0] = T(0);
}

// Implicit-shift QL on the tridiagonal (d, e); rotations applied to V when
// accumulate is set.
template <class T>
void ql_implicit(Dense<T>& V, std::vector<T>& d, std::vector<T>& e, bool accumulate) {
  const std::size_t n = d.size();
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = T(0);

  T f = T(0);
  T tst1 = T(0);
  const T eps = std::numeric_limits<T>::epsilon();
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n - 1 && std::abs(e[m]) > eps * tst1) ++m;

    if (m > l) {
      int iter = 0;
      do {
        if (++iter > kMaxQlIterations) {
          throw std::runtime_error("eigen_symmetric: QL iteration failed to converge");
        }
        T g = d[l];
        T p = (d[l + 1] - g) / (T(2) * e[l]);
        T r = std::hypot(p, T(1));
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const T dl1 = d[l + 1];
        T h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        T c = T(1);
        T c2 = c;
        T c3 = c;
        const T el1 = e[l + 1];
        T s = T(0);
        T s2 = T(0);
        for (std::size_t ii = m; ii-- > l;) {
          const std::size_t i = ii;
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          if (accumulate) {
            for (std::size_t k = 0; k < n; ++k) {
              h = V(k, i + 1);
              V(k, i + 1) = s * V(k, i) + c * h;
              V(k, i) = c * V(k, i) - s * h;
            }
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = T(0);
  }
}

}  // namespace

namespace {

template <class T>
Spectrum solve(const SymMatrix& H, int k, bool want_vectors) {
  const std::size_t n = H.dim();
  Dense<T> V(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) V(i, j) = static_cast<T>(H(i, j));
  }
  std::vector<T> d(n);
  std::vector<T> e(n);
  if (n == 1) {
    d[0] = V(0, 0);
    V(0, 0) = T(1);
  } else {
    tridiagonalize(V, d, e, want_vectors);
    ql_implicit(V, d, e, want_vectors);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

  Spectrum out;
  out.values.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) out.values.push_back(static_cast<double>(d[order[static_cast<std::size_t>(i)]]));
  if (want_vectors) {
    std::vector<std::vector<double>> vecs;
    vecs.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      const std::size_t col = order[static_cast<std::size_t>(i)];
      T norm = T(0);
      for (std::size_t r = 0; r < n; ++r) norm += V(r, col) * V(r, col);
      norm = std::sqrt(norm);
      std::vector<double> v(n);
      for (std::size_t r = 0; r < n; ++r) v[r] = static_cast<double>(V(r, col) / norm);
      vecs.push_back(std::move(v));
    }
    out.vectors = std::move(vecs);
  }
  return out;
}

}  // namespace

Spectrum eigen_symmetric(const SymMatrix& H, int k, bool want_vectors, EigenPrecision precision) {
  const std::size_t n = H.dim();
  if (k < 1 || static_cast<std::size_t>(k) > n) {
    throw std::invalid_argument("eigen_symmetric: k must lie in [1, D]");
  }
  for (const double x : H.packed()) {
    if (!std::isfinite(x)) throw std::invalid_argument("eigen_symmetric: matrix has non-finite entries");
  }
  if (precision == EigenPrecision::Extended) return solve<long double>(H, k, want_vectors);
  return solve<double>(H, k, want_vectors);
}

std::vector<double> eigenvalues(const SymMatrix& H) {
  return eigen_symmetric(H, static_cast<int>(H.dim()), false).values;
}

}  // namespace gkritz
