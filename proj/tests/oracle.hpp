#pragma once

// Independent reference computations in plain GMP rationals, used to freeze
// expected values without going through the library's Scalar type.

#include <gmpxx.h>

#include <functional>
#include <set>
#include <vector>

#include "reflab/scalar.hpp"

namespace oracle {

using QVec = std::vector<mpq_class>;
using QMat = std::vector<QVec>;

/// Gram matrix of a universal Coxeter group: 1 on the diagonal, -1 elsewhere.
inline QMat universal_gram(int n) {
  QMat g(n, QVec(n, mpq_class(-1)));
  for (int i = 0; i < n; ++i) g[i][i] = 1;
  return g;
}

inline mpq_class form(const QMat& g, const QVec& u, const QVec& v) {
  mpq_class t = 0;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) t += u[i] * g[i][j] * v[j];
  return t;
}

inline QVec reflect(const QMat& g, QVec v, int s) {
  QVec e(v.size(), 0);
  e[s] = 1;
  const mpq_class b = form(g, v, e);
  v[s] -= 2 * b;
  return v;
}

inline bool positive(const QVec& v) {
  bool some = false;
  for (const auto& x : v) {
    if (sgn(x) < 0) return false;
    some = some || sgn(x) > 0;
  }
  return some;
}

/// Every positive w(alpha_j) with len(w) <= d, by enumerating all words.
inline std::set<QVec> brute_force_roots(const QMat& g, int d) {
  const int n = static_cast<int>(g.size());
  std::set<QVec> out;
  std::function<void(const QVec&, int)> walk = [&](const QVec& v, int left) {
    if (positive(v)) out.insert(v);
    if (left == 0) return;
    for (int s = 0; s < n; ++s) walk(reflect(g, v, s), left - 1);
  };
  for (int j = 0; j < n; ++j) {
    QVec e(n, 0);
    e[j] = 1;
    walk(e, d);
  }
  return out;
}

inline QVec to_q(std::span<const reflab::Scalar> v) {
  QVec out;
  for (const auto& x : v) out.push_back(x.to_mpq());
  return out;
}

/// x with M x = b, M given by columns; M is assumed invertible.
inline QVec solve(const QMat& columns, const QVec& b) {
  const std::size_t n = b.size();
  QMat a(n, QVec(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = columns[j][i];
    a[i][n] = b[i];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (sgn(a[p][c]) == 0) ++p;
    std::swap(a[p], a[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || sgn(a[i][c]) == 0) continue;
      const mpq_class f = a[i][c] / a[c][c];
      for (std::size_t j = c; j <= n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  QVec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
  return x;
}

/// Coordinates of v / sum(v) in the given basis.
inline QVec normalized_in_basis(const QMat& basis, QVec v) {
  mpq_class total = 0;
  for (const auto& x : v) total += x;
  for (auto& x : v) x /= total;
  return solve(basis, v);
}

/// Is g = x a + y b with x, y > 0 (a, b independent)?
inline bool strictly_in_cone(const QVec& a, const QVec& b, const QVec& g) {
  // Solve on the first invertible pair of coordinates, then check the rest.
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const mpq_class det = a[i] * b[j] - a[j] * b[i];
      if (sgn(det) == 0) continue;
      const mpq_class x = (g[i] * b[j] - g[j] * b[i]) / det;
      const mpq_class y = (a[i] * g[j] - a[j] * g[i]) / det;
      for (std::size_t k = 0; k < n; ++k) {
        if (x * a[k] + y * b[k] != g[k]) return false;
      }
      return sgn(x) > 0 && sgn(y) > 0;
    }
  }
  return false;
}

}  // namespace oracle
