#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "isotropic/index.hpp"
#include "isotropic/ring.hpp"
#include "isotropic/roots.hpp"

namespace iso {

enum class GroupKind { SL, Sp, SO };

inline const char* group_kind_name(GroupKind k) {
  return k == GroupKind::SL ? "SL" : (k == GroupKind::Sp ? "Sp" : "SO");
}

using IntMatrix = std::vector<std::vector<long long>>;

/// One basis vector of a root space: an integer Lie algebra element together
/// with a position where its coefficient is ±1 (used to read coordinates).
struct LieBasisElem {
  IntMatrix m;
  int lead_p = 0, lead_q = 0;
  long long lead = 1;
};

/// Split matrix model of a classical isotropic structure over a finite ring.
class Realization {
 public:
  TitsIndex index;
  FiniteRing ring;
  std::string family;
  GroupKind kind = GroupKind::SL;
  int N = 0;
  IntMatrix form;                    // Gram matrix of the bilinear form (empty for SL)
  std::vector<IntVec> weight;        // per position, in the coordinates of `relative`
  std::vector<std::vector<int>> blocks;
  std::shared_ptr<const RootSystem> relative;
  std::vector<std::vector<LieBasisElem>> basis;  // per relative root

  // ordered-product quadratic terms of t: pair[a][k][l] = A_k A_l (k < l), half_sq[a][k] = A_k²/2
  std::vector<std::vector<std::vector<IntMatrix>>> pair;
  std::vector<std::vector<IntMatrix>> half_sq;

  // the same data reduced into the ring; pair_nz marks non-zero products
  std::vector<std::vector<RMatrix>> basis_r, half_r;
  std::vector<std::vector<std::vector<RMatrix>>> pair_r;
  std::vector<std::vector<std::vector<char>>> pair_nz;

  int rank() const { return relative->rank(); }
  std::optional<int> double_root(int a) const { return relative->find(relative->root(a).scaled(2)); }
  bool ultrashort(int a) const { return double_root(a).has_value(); }
  int lie_dim(int a) const { return static_cast<int>(basis[a].size()); }
  int param_count(int a) const {
    auto d = double_root(a);
    return lie_dim(a) + (d ? lie_dim(*d) : 0);
  }

  RMatrix identity() const { return RMatrix::identity(N, ring); }

  RMatrix embed(const IntMatrix& m, Elem s) const {
    RMatrix out(N);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        if (m[i][j]) out(i, j) = ring.mul(ring.from_int(m[i][j]), s);
    return out;
  }

  void add_scaled(RMatrix& g, const RMatrix& m, Elem s) const {
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        if (m(i, j).v) g(i, j) = ring.add(g(i, j), ring.mul(m(i, j), s));
  }

  /// Σ x_k A_k in 𝔤_α.
  RMatrix lie(int a, const std::vector<Elem>& x) const {
    RMatrix out(N);
    for (int k = 0; k < lie_dim(a); ++k)
      if (x[k].v) add_scaled(out, basis_r[a][k], x[k]);
    return out;
  }

  /// Coordinates of a matrix supported on 𝔤_α, nullopt if it is not in 𝔤_α.
  std::optional<std::vector<Elem>> lie_coords(int a, const RMatrix& x) const {
    std::vector<Elem> c(lie_dim(a));
    for (int k = 0; k < lie_dim(a); ++k) {
      const auto& b = basis[a][k];
      Elem v = x(b.lead_p, b.lead_q);
      c[k] = b.lead == 1 ? v : ring.neg(v);
    }
    if (lie(a, c) != x) return std::nullopt;
    return c;
  }

  /// t_α(x) (or t_α(x ∔ y) for ultrashort α, params = x then y).
  RMatrix t(int a, const std::vector<Elem>& params) const {
    if (static_cast<int>(params.size()) != param_count(a))
      throw PreconditionError("wrong number of root-space parameters");
    const int m = lie_dim(a);
    RMatrix g = identity();
    for (int k = 0; k < m; ++k) {
      if (!params[k].v) continue;
      add_scaled(g, basis_r[a][k], params[k]);
      add_scaled(g, half_r[a][k], ring.mul(params[k], params[k]));
      for (int l = k + 1; l < m; ++l)
        if (params[l].v && pair_nz[a][k][l]) add_scaled(g, pair_r[a][k][l], ring.mul(params[k], params[l]));
    }
    if (auto d = double_root(a))
      for (int k = 0; k < lie_dim(*d); ++k)
        if (params[m + k].v) add_scaled(g, basis_r[*d][k], params[m + k]);
    return g;
  }

  /// Inverse of t_α restricted to U_α(K); nullopt for matrices outside U_α(K).
  std::optional<std::vector<Elem>> log(int a, const RMatrix& g) const {
    const int m = lie_dim(a);
    std::vector<Elem> p(param_count(a));
    for (int k = 0; k < m; ++k) {
      const auto& b = basis[a][k];
      Elem v = g(b.lead_p, b.lead_q);
      p[k] = b.lead == 1 ? v : ring.neg(v);
    }
    if (auto d = double_root(a)) {
      std::vector<Elem> x(p.begin(), p.begin() + m);
      x.resize(param_count(a));
      RMatrix rest = mat_sub(ring, g, t(a, x));
      auto y = lie_coords(*d, rest);
      if (!y) return std::nullopt;
      std::copy(y->begin(), y->end(), p.begin() + m);
      return p;
    }
    if (t(a, p) != g) return std::nullopt;
    return p;
  }

  bool in_root_subgroup(int a, const RMatrix& g) const { return log(a, g).has_value(); }

  /// All points of U_α(K).
  std::vector<RMatrix> root_subgroup(int a) const {
    std::vector<RMatrix> out;
    for_each_param(param_count(a), [&](const std::vector<Elem>& p) { out.push_back(t(a, p)); });
    return out;
  }

  /// t_α of the unit parameter vectors: the default generating set X_α
  /// (together with X_{2α} for ultrashort α).
  std::vector<RMatrix> generators(int a) const {
    std::vector<RMatrix> out;
    for (int k = 0; k < param_count(a); ++k) {
      std::vector<Elem> p(param_count(a), ring.zero());
      p[k] = ring.one();
      out.push_back(t(a, p));
    }
    return out;
  }

  /// Unit coordinate vectors of 𝔤_α.
  std::vector<std::vector<Elem>> generators_param(int a) const {
    std::vector<std::vector<Elem>> out;
    for (int k = 0; k < lie_dim(a); ++k) {
      std::vector<Elem> p(lie_dim(a), ring.zero());
      p[k] = ring.one();
      out.push_back(p);
    }
    return out;
  }

  void for_each_param(int count, const std::function<void(const std::vector<Elem>&)>& f) const {
    const auto el = ring.elements();
    std::vector<int> idx(count, 0);
    std::vector<Elem> p(count, ring.zero());
    while (true) {
      f(p);
      int i = 0;
      while (i < count && ++idx[i] == static_cast<int>(el.size())) {
        idx[i] = 0;
        p[i] = el[0];
        ++i;
      }
      if (i == count) break;
      p[i] = el[idx[i]];
    }
  }

  RMatrix inverse(const RMatrix& g) const {
    if (kind == GroupKind::SL) return iso::inverse(ring, g);
    // g⁻¹ = F⁻¹ gᵀ F
    RMatrix out(N);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        // F is monomial: F[i][ī] = f_i
        const int ib = N - 1 - i, jb = N - 1 - j;
        Elem v = ring.mul(g(jb, ib), ring.from_int(form[jb][j]));
        v = ring.mul(v, *ring.inv(ring.from_int(form[ib][i])));
        out(i, j) = v;
      }
    return out;
  }

  RMatrix mul(const RMatrix& a, const RMatrix& b) const { return mat_mul(ring, a, b); }
  RMatrix conj(const RMatrix& g, const RMatrix& x) const { return mul(mul(g, x), inverse(g)); }
  RMatrix comm(const RMatrix& a, const RMatrix& b) const {
    return mul(mul(mul(a, b), inverse(a)), inverse(b));
  }

  bool preserves_form(const RMatrix& g) const {
    if (kind == GroupKind::SL) return true;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        Elem s = ring.zero();
        for (int p = 0; p < N; ++p) {
          if (!g(p, i).v) continue;
          const int q = N - 1 - p;
          if (!g(q, j).v) continue;
          s = ring.add(s, ring.mul(ring.mul(g(p, i), ring.from_int(form[p][q])), g(q, j)));
        }
        if (s != ring.from_int(form[i][j])) return false;
      }
    return true;
  }

  bool in_group(const RMatrix& g) const { return det(ring, g) == ring.one() && preserves_form(g); }

  bool block_diagonal(const RMatrix& g) const {
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        if (g(i, j).v && weight[i] != weight[j]) return false;
    return true;
  }

  bool in_L(const RMatrix& g) const { return block_diagonal(g) && in_group(g); }

  /// L(K), enumerated block by block (each block ranging over GL) and filtered.
  std::vector<RMatrix> L_points(std::size_t cap = 5'000'000) const;

  /// Lie bracket [x, y] ∈ 𝔤_{α+β} in coordinates.
  std::vector<Elem> bracket(int a, const std::vector<Elem>& x, int b, const std::vector<Elem>& y) const {
    auto s = relative->sum(a, b);
    if (!s) throw PreconditionError("α + β is not a root");
    RMatrix X = lie(a, x), Y = lie(b, y);
    RMatrix z = mat_sub(ring, mul(X, Y), mul(Y, X));
    auto c = lie_coords(*s, z);
    if (!c) throw InternalError("bracket left 𝔤_{α+β}");
    return *c;
  }

  /// w_α ∈ U_α U_{−α} U_α acting on root subgroups as the reflection in α.
  RMatrix weyl_element(int a) const;
  bool weyl_property(int a, const RMatrix& w) const {
    for (int b = 0; b < relative->size(); ++b) {
      const int target = relative->reflect(a, b);
      for (const auto& g : generators(b))
        if (!in_root_subgroup(target, conj(w, g))) return false;
    }
    return true;
  }
};

namespace detail {

inline IntMatrix zero_int(int n) { return IntMatrix(n, std::vector<long long>(n, 0)); }

inline IntMatrix int_mul(const IntMatrix& a, const IntMatrix& b) {
  const int n = static_cast<int>(a.size());
  IntMatrix c = zero_int(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (a[i][k])
        for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

struct Layout {
  int N = 0, dim = 0;
  std::vector<IntVec> weight;
};

// Strips of width d on both sides with a central strip: weights 2e_i, 0, −2e_i.
inline Layout two_sided(int N, int r, int d) {
  Layout L{N, r, std::vector<IntVec>(N, IntVec(r, 0))};
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < d; ++k) {
      L.weight[i * d + k][i] = 2;
      L.weight[N - 1 - (i * d + k)][i] = -2;
    }
  return L;
}

}  // namespace detail

inline Realization realize(const TitsIndex& idx, const FiniteRing& ring) {
  if (!idx.classical) throw UnsupportedError("no matrix model for exceptional index " + idx.name);
  const auto& p = *idx.classical;
  Realization R;
  R.index = idx;
  R.ring = ring;
  R.family = p.family;
  detail::Layout L;
  std::string letter;
  const int n = p.n, r = p.r, d = p.d;
  if (p.family == "1A") {
    R.kind = GroupKind::SL;
    L.N = n + 1;
    L.dim = r + 1;
    L.weight.assign(L.N, IntVec(r + 1, 0));
    for (int k = 0; k <= r; ++k)
      for (int j = 0; j < d; ++j) L.weight[k * d + j][k] = 2;
    letter = "A";
  } else if (p.family == "2A") {
    R.kind = GroupKind::SL;
    L = detail::two_sided(n + 1, r, d);
    letter = 2 * r * d <= n ? "BC" : "C";
  } else if (p.family == "C") {
    R.kind = GroupKind::Sp;
    L = detail::two_sided(2 * n, r, d);
    letter = r * d < n ? "BC" : "C";
  } else if (p.family == "B") {
    R.kind = GroupKind::SO;
    L = detail::two_sided(2 * n + 1, r, 1);
    letter = "B";
  } else {  // 1D, 2D: the split model is the same strip decomposition of SO_{2n}
    R.kind = GroupKind::SO;
    L = detail::two_sided(2 * n, r, d);
    if (r * d < n) letter = d >= 2 ? "BC" : "B";
    else letter = d >= 2 ? "C" : "D";
  }
  if (L.N > kMaxDim) throw UnsupportedError("matrix size " + std::to_string(L.N) + " exceeds " +
                                            std::to_string(kMaxDim));
  if ((R.kind == GroupKind::SO) && !ring.is_unit(ring.from_int(2)))
    throw UnsupportedError("orthogonal models need 2 to be invertible in " + ring.spec());
  R.N = L.N;
  R.weight = L.weight;
  R.relative = standard_system(letter, r);
  const int N = R.N;

  // form: F[i][N-1-i] = f_i
  std::vector<long long> f(N, 1);
  if (R.kind != GroupKind::SL) {
    R.form = detail::zero_int(N);
    for (int i = 0; i < N; ++i) {
      if (R.kind == GroupKind::Sp) f[i] = i < N / 2 ? 1 : -1;
      if (R.kind == GroupKind::SO && N % 2 == 1 && i == N / 2) f[i] = 2;
      R.form[i][N - 1 - i] = f[i];
    }
  }

  // blocks of equal weight
  std::map<IntVec, std::vector<int>> by_weight;
  for (int i = 0; i < N; ++i) by_weight[R.weight[i]].push_back(i);
  std::vector<std::vector<int>> blocks;
  for (auto& [w, v] : by_weight) blocks.push_back(v);
  std::sort(blocks.begin(), blocks.end());
  R.blocks = blocks;

  // root spaces
  const auto& rel = *R.relative;
  R.basis.assign(rel.size(), {});
  std::vector<std::vector<bool>> done(N, std::vector<bool>(N, false));
  for (int pp = 0; pp < N; ++pp)
    for (int q = 0; q < N; ++q) {
      if (pp == q || done[pp][q] || R.weight[pp] == R.weight[q]) continue;
      IntVec diff(R.weight[pp].size());
      for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = R.weight[pp][k] - R.weight[q][k];
      LieBasisElem e;
      e.m = detail::zero_int(N);
      done[pp][q] = true;
      if (R.kind == GroupKind::SL) {
        e.m[pp][q] = 1;
        e.lead_p = pp, e.lead_q = q, e.lead = 1;
      } else {
        const int qb = N - 1 - q, pb = N - 1 - pp;
        done[qb][pb] = true;
        if (qb == pp && pb == q) {
          if (f[pp] != -f[q]) continue;  // no Lie element here
          e.m[pp][q] = 1;
          e.lead_p = pp, e.lead_q = q, e.lead = 1;
        } else {
          long long a1 = f[q], a2 = -f[pp];
          const long long g = std::gcd(std::llabs(a1), std::llabs(a2));
          a1 /= g, a2 /= g;
          e.m[pp][q] = a1;
          e.m[qb][pb] = a2;
          if (std::llabs(a1) == 1) e.lead_p = pp, e.lead_q = q, e.lead = a1;
          else e.lead_p = qb, e.lead_q = pb, e.lead = a2;
        }
      }
      auto a = rel.find(Root{diff});
      if (!a) throw InternalError("weight difference is not a relative root");
      R.basis[*a].push_back(std::move(e));
    }
  for (int a = 0; a < rel.size(); ++a)
    if (R.basis[a].empty()) throw InternalError("empty root space in " + idx.name);

  R.pair.assign(rel.size(), {});
  R.half_sq.assign(rel.size(), {});
  for (int a = 0; a < rel.size(); ++a) {
    const int m = R.lie_dim(a);
    R.pair[a].assign(m, std::vector<IntMatrix>(m));
    for (int k = 0; k < m; ++k) {
      auto sq = detail::int_mul(R.basis[a][k].m, R.basis[a][k].m);
      for (auto& row : sq)
        for (auto& v : row) {
          if (v % 2) throw InternalError("odd square of a root-space basis element");
          v /= 2;
        }
      R.half_sq[a].push_back(sq);
      for (int l = k + 1; l < m; ++l) R.pair[a][k][l] = detail::int_mul(R.basis[a][k].m, R.basis[a][l].m);
    }
  }
  R.basis_r.assign(rel.size(), {});
  R.half_r.assign(rel.size(), {});
  R.pair_r.assign(rel.size(), {});
  R.pair_nz.assign(rel.size(), {});
  for (int a = 0; a < rel.size(); ++a) {
    const int m = R.lie_dim(a);
    R.pair_r[a].assign(m, std::vector<RMatrix>(m, RMatrix(N)));
    R.pair_nz[a].assign(m, std::vector<char>(m, 0));
    for (int k = 0; k < m; ++k) {
      R.basis_r[a].push_back(R.embed(R.basis[a][k].m, ring.one()));
      R.half_r[a].push_back(R.embed(R.half_sq[a][k], ring.one()));
      for (int l = k + 1; l < m; ++l) {
        R.pair_r[a][k][l] = R.embed(R.pair[a][k][l], ring.one());
        R.pair_nz[a][k][l] = !is_zero(R.pair_r[a][k][l]);
      }
    }
  }
  return R;
}

inline Realization realize(std::string_view index_name, std::string_view ring_spec) {
  return realize(parse_index(index_name), FiniteRing::parse(ring_spec));
}

inline std::vector<RMatrix> Realization::L_points(std::size_t cap) const {
  // invertible matrices per block
  std::vector<std::vector<RMatrix>> per_block;
  std::size_t total = 1;
  for (const auto& blk : blocks) {
    const int s = static_cast<int>(blk.size());
    std::vector<RMatrix> mats;
    std::size_t cells = 1;
    for (int i = 0; i < s * s; ++i) {
      cells *= ring.size();
      if (cells > cap) throw BudgetExceeded("L block enumeration too large");
    }
    for_each_param(s * s, [&](const std::vector<Elem>& v) {
      RMatrix m(s);
      for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) m(i, j) = v[i * s + j];
      if (ring.is_unit(det(ring, m))) mats.push_back(m);
    });
    total *= mats.size();
    if (total > cap) throw BudgetExceeded("L enumeration exceeds cap");
    per_block.push_back(std::move(mats));
  }
  std::vector<RMatrix> out;
  std::vector<std::size_t> pick(blocks.size(), 0);
  while (true) {
    RMatrix g(N);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const auto& m = per_block[b][pick[b]];
      for (std::size_t i = 0; i < blocks[b].size(); ++i)
        for (std::size_t j = 0; j < blocks[b].size(); ++j) g(blocks[b][i], blocks[b][j]) = m(i, j);
    }
    if (in_group(g)) out.push_back(g);
    std::size_t b = 0;
    while (b < blocks.size() && ++pick[b] == per_block[b].size()) pick[b++] = 0;
    if (b == blocks.size()) break;
  }
  return out;
}

inline RMatrix Realization::weyl_element(int a) const {
  if (auto d = double_root(a)) return weyl_element(*d);
  const int na = relative->neg(a);
  const int m = lie_dim(a);
  // candidate x: 0/1 vectors, most ones first; y = c · (−xᵀ read in 𝔤_{−α})
  std::vector<std::vector<Elem>> xs;
  for (unsigned mask = 1; mask < (1u << std::min(m, 12)); ++mask) {
    std::vector<Elem> x(m, ring.zero());
    for (int k = 0; k < m; ++k)
      if (mask >> k & 1) x[k] = ring.one();
    xs.push_back(x);
  }
  std::stable_sort(xs.begin(), xs.end(), [](const auto& u, const auto& v) {
    auto ones = [](const auto& w) { return std::count_if(w.begin(), w.end(), [](Elem e) { return e.v != 0; }); };
    return ones(u) > ones(v);
  });
  for (const auto& x : xs) {
    RMatrix X = lie(a, x);
    RMatrix Xt = transpose(X);
    std::vector<Elem> base(lie_dim(na));
    for (int k = 0; k < lie_dim(na); ++k) {
      const auto& b = basis[na][k];
      Elem v = ring.neg(Xt(b.lead_p, b.lead_q));
      base[k] = b.lead == 1 ? v : ring.neg(v);
    }
    for (Elem c : ring.elements()) {
      if (!ring.is_unit(c)) continue;
      std::vector<Elem> y(base.size());
      for (std::size_t k = 0; k < y.size(); ++k) y[k] = ring.mul(c, base[k]);
      RMatrix w = mul(mul(t(a, x), t(na, y)), t(a, x));
      if (weyl_property(a, w)) return w;
    }
  }
  throw ConstructionError("no Weyl element found for a root of " + index.name);
}

// ---------------------------------------------------------------------------
// 2-step modules on U_α for ultrashort α

/// Parameters of U_α(K) with the group law read off from matrices.
struct TwoStepModule {
  const Realization* R;
  int a;

  using M = std::vector<Elem>;
  // memo tables indexed by code(x); filled on demand when |M| is small
  mutable std::vector<std::optional<RMatrix>> t_memo;
  mutable std::vector<std::optional<M>> minus_memo;

  TwoStepModule(const Realization* r, int root) : R(r), a(root) {
    double n = std::pow(double(R->ring.size()), R->param_count(a));
    if (n <= 1 << 20) {
      t_memo.resize(std::size_t(n));
      minus_memo.resize(std::size_t(n));
    }
  }

  std::size_t code(const M& x) const {
    std::size_t c = 0;
    for (auto it = x.rbegin(); it != x.rend(); ++it) c = c * R->ring.size() + it->v;
    return c;
  }
  const RMatrix& mat(const M& x, RMatrix& scratch) const {
    if (t_memo.empty()) return scratch = R->t(a, x);
    auto& slot = t_memo[code(x)];
    if (!slot) slot = R->t(a, x);
    return *slot;
  }
  int split() const { return R->lie_dim(a); }
  M zero() const { return M(R->param_count(a), R->ring.zero()); }
  M plus(const M& x, const M& y) const {
    RMatrix s1, s2;
    return *R->log(a, R->mul(mat(x, s1), mat(y, s2)));
  }
  M minus(const M& x) const {
    RMatrix s;
    if (minus_memo.empty()) return *R->log(a, R->inverse(mat(x, s)));
    auto& slot = minus_memo[code(x)];
    if (!slot) slot = *R->log(a, R->inverse(mat(x, s)));
    return *slot;
  }
  M scale(const M& x, Elem k) const {
    M out(x.size());
    const Elem k2 = R->ring.mul(k, k);
    for (std::size_t i = 0; i < x.size(); ++i)
      out[i] = R->ring.mul(static_cast<int>(i) < split() ? k : k2, x[i]);
    return out;
  }
  /// K-module structure on M_0 (linear, not the squared action).
  M lin(const M& x, Elem k) const {
    M out = zero();
    for (std::size_t i = split(); i < x.size(); ++i) out[i] = R->ring.mul(k, x[i]);
    return out;
  }
  M add0(const M& x, const M& y) const {
    M out = zero();
    for (std::size_t i = split(); i < x.size(); ++i) out[i] = R->ring.add(x[i], y[i]);
    return out;
  }
  bool in_M0(const M& x) const {
    for (int i = 0; i < split(); ++i)
      if (x[i].v) return false;
    return true;
  }
  M bracket(const M& x, const M& y) const { return plus(plus(x, y), plus(minus(x), minus(y))); }
  /// From m·2 = m ∔ τ(m) ∔ m.
  M tau(const M& x) const {
    const Elem two = R->ring.from_int(2);
    return plus(plus(minus(x), scale(x, two)), minus(x));
  }
};

struct AxiomReport {
  bool ok = true;
  std::size_t checks = 0;
  std::string failed;
};

/// All axioms and derived identities of a 2-step module, exhaustive when
/// |M|² |K|² is at most `budget`, otherwise on seeded random samples.
inline AxiomReport check_two_step_axioms(const Realization& R, int a, std::size_t budget = 2'000'000,
                                         unsigned seed = 1) {
  if (!R.ultrashort(a)) throw PreconditionError("2-step structure needs an ultrashort root");
  TwoStepModule T(&R, a);
  const auto& K = R.ring;
  std::vector<TwoStepModule::M> ms;
  R.for_each_param(R.param_count(a), [&](const auto& p) { ms.push_back(p); });
  auto ks = K.elements();
  AxiomReport rep;
  auto expect = [&](bool c, const char* what) {
    ++rep.checks;
    if (!c && rep.ok) {
      rep.ok = false;
      rep.failed = what;
    }
  };
  std::vector<std::pair<std::size_t, std::size_t>> mm;
  const double full = double(ms.size()) * ms.size() * ks.size() * ks.size();
  if (full <= double(budget)) {
    for (std::size_t i = 0; i < ms.size(); ++i)
      for (std::size_t j = 0; j < ms.size(); ++j) mm.push_back({i, j});
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, ms.size() - 1);
    const std::size_t n = std::max<std::size_t>(1, budget / (ks.size() * ks.size()));
    for (std::size_t s = 0; s < n; ++s) mm.push_back({pick(rng), pick(rng)});
  }
  const auto zero = T.zero();
  const Elem two = K.from_int(2);
  for (const auto& m : ms) {
    expect(T.in_M0(T.tau(m)), "tau(m) in M0");
    expect(T.scale(m, K.zero()) == zero, "m.0 = 0");
    expect(T.scale(m, K.one()) == m, "m.1 = m");
    expect(T.tau(T.minus(m)) == T.minus(T.tau(m)), "tau(-m) = -tau(m)");
    if (T.in_M0(m)) expect(T.tau(m) == T.lin(m, two), "tau(m0) = 2 m0");
    for (Elem k : ks) {
      expect(T.tau(T.scale(m, k)) == T.lin(T.tau(m), K.mul(k, k)), "tau(m.k) = k^2 tau(m)");
      expect(T.scale(m, K.neg(k)) == T.plus(T.lin(T.tau(m), K.mul(k, k)), T.minus(T.scale(m, k))),
             "m.(-k) = k^2 tau(m) - m.k");
      if (T.in_M0(m)) expect(T.scale(m, k) == T.lin(m, K.mul(k, k)), "m0.k = k^2 m0");
    }
  }
  expect(T.tau(zero) == zero, "tau(0) = 0");
  for (auto [i, j] : mm) {
    const auto &m = ms[i], &m2 = ms[j];
    const auto br = T.bracket(m, m2);
    expect(T.in_M0(br), "[M,M] in M0");
    if (T.in_M0(m)) expect(T.plus(m, m2) == T.plus(m2, m), "M0 central");
    expect(T.tau(T.plus(m, m2)) == T.add0(T.add0(T.tau(m), br), T.tau(m2)), "tau(m+m')");
    for (Elem k : ks) {
      expect(T.scale(T.plus(m, m2), k) == T.plus(T.scale(m, k), T.scale(m2, k)), "scaling is additive");
      for (Elem k2 : ks) {
        expect(T.bracket(T.scale(m, k), T.scale(m2, k2)) == T.lin(br, K.mul(k, k2)), "[m.k, m'.k'] = kk'[m,m']");
        expect(T.scale(m, K.add(k, k2)) ==
                   T.plus(T.plus(T.scale(m, k), T.lin(T.tau(m), K.mul(k, k2))), T.scale(m, k2)),
               "m.(k+k')");
        expect(T.scale(T.scale(m, k), k2) == T.scale(m, K.mul(k, k2)), "(m.k).k' = m.(kk')");
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Non-degeneracy of brackets

enum class PairConfig { C2LongShort, BC2OrthogonalUltrashort, LongObtuse, Other };

inline PairConfig pair_config(const Realization& R, int a, int b) {
  const auto& s = *R.relative;
  const long long ab = s.dot(a, b);
  const auto type = system_type(s).str();
  if (type == "C_2" && s.length(a) == Length::Long && s.length(b) == Length::Short && s.sum(a, b) && ab < 0)
    return PairConfig::C2LongShort;
  if (type == "BC_2" && s.length(a) == Length::Ultrashort && s.length(b) == Length::Ultrashort && ab == 0)
    return PairConfig::BC2OrthogonalUltrashort;
  // α long, π/2 < ∠(α, β) < π
  if (s.length(a) == Length::Long && ab < 0 && b != s.neg(a) && s.sum(a, b)) return PairConfig::LongObtuse;
  return PairConfig::Other;
}

/// Injectivity of y ↦ [·, y] (and of x ↦ [x, ·] for the C_2 and BC_2
/// configurations), checked over all of 𝔤_α and 𝔤_β.
inline bool nondegeneracy_check(const Realization& R, int a, int b) {
  const auto cfg = pair_config(R, a, b);
  if (cfg == PairConfig::Other) throw PreconditionError("root pair outside the non-degeneracy statements");
  std::vector<std::vector<Elem>> xs, ys;
  R.for_each_param(R.lie_dim(a), [&](const auto& p) { xs.push_back(p); });
  R.for_each_param(R.lie_dim(b), [&](const auto& p) { ys.push_back(p); });
  auto zero_vec = [](const std::vector<Elem>& v) {
    return std::all_of(v.begin(), v.end(), [](Elem e) { return e.v == 0; });
  };
  auto second = [&] {
    for (const auto& y : ys) {
      if (zero_vec(y)) continue;
      bool killed = true;
      for (const auto& x : R.generators_param(a))
        if (!zero_vec(R.bracket(a, x, b, y))) killed = false;
      if (killed) return false;
    }
    return true;
  };
  auto first = [&] {
    for (const auto& x : xs) {
      if (zero_vec(x)) continue;
      bool killed = true;
      for (const auto& y : R.generators_param(b))
        if (!zero_vec(R.bracket(a, x, b, y))) killed = false;
      if (killed) return false;
    }
    return true;
  };
  if (cfg == PairConfig::LongObtuse) return second();
  return first() && second();
}

}  // namespace iso
