#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/rational.hpp>

#include "isotropic/errors.hpp"

namespace iso {

using Rational = boost::rational<std::int64_t>;
using RVec = std::vector<Rational>;
using RMat = std::vector<RVec>;

// Sign of a rational. Comparing boost::rational against plain integers
// recurses forever under C++20 rewritten operators, so go through this.
inline int sgn(const Rational& r) { return (r.numerator() > 0) - (r.numerator() < 0); }

/// Inverse of a square rational matrix, or nullopt if singular.
inline std::optional<RMat> rat_inverse(RMat a) {
  const std::size_t n = a.size();
  RMat inv(n, RVec(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a[p][c]) == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    const Rational piv = a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] /= piv;
      inv[c][j] /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || sgn(a[i][c]) == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] -= f * a[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

inline RMat rat_mul(const RMat& a, const RMat& b) {
  const std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
  RMat c(n, RVec(m, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (sgn(a[i][l]) == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

inline RMat rat_transpose(const RMat& a) {
  if (a.empty()) return {};
  RMat t(a[0].size(), RVec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

/// Exact feasibility of A·λ = b, λ ≥ 0 (phase-one simplex, Bland's rule).
/// A is given column-wise: cols[j] is the j-th column, all of length b.size().
inline bool nonneg_feasible(const std::vector<RVec>& cols, RVec b) {
  const std::size_t m = b.size(), k = cols.size();
  // tableau rows: k structural columns, m artificial columns, rhs
  const std::size_t w = k + m + 1;
  RMat t(m, RVec(w, Rational(0)));
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = sgn(b[i]) < 0;
    for (std::size_t j = 0; j < k; ++j) t[i][j] = flip ? -cols[j][i] : cols[j][i];
    t[i][k + i] = 1;
    t[i][w - 1] = flip ? -b[i] : b[i];
  }
  std::vector<std::size_t> basic(m);
  for (std::size_t i = 0; i < m; ++i) basic[i] = k + i;
  RVec obj(w, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < k; ++j) obj[j] += t[i][j];
  for (std::size_t i = 0; i < m; ++i) obj[w - 1] += t[i][w - 1];

  for (;;) {
    std::size_t enter = w;
    for (std::size_t j = 0; j < k; ++j)
      if (sgn(obj[j]) > 0) {
        enter = j;
        break;
      }
    if (enter == w) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (sgn(t[i][enter]) <= 0) continue;
      Rational ratio = t[i][w - 1] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basic[i] < basic[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) throw InternalError("unbounded phase-one objective");
    const Rational piv = t[leave][enter];
    for (auto& v : t[leave]) v /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || sgn(t[i][enter]) == 0) continue;
      const Rational f = t[i][enter];
      for (std::size_t j = 0; j < w; ++j) t[i][j] -= f * t[leave][j];
    }
    if (sgn(obj[enter]) != 0) {
      const Rational f = obj[enter];
      for (std::size_t j = 0; j < w; ++j) obj[j] -= f * t[leave][j];
    }
    basic[leave] = enter;
  }
  return sgn(obj[w - 1]) == 0;
}

}  // namespace iso
