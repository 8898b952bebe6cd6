#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "isotropic/realize.hpp"

namespace iso {

using LieVec = std::vector<Elem>;

/// Solution set of the two bracket schemas over families k_α : Y_α → 𝔤_α(K).
/// Values of a root space are coded as Σ v_i q^i, q = |K|.
struct KTilde {
  const Realization* R = nullptr;
  std::vector<std::vector<LieVec>> X, Y;      // per relative root
  std::vector<std::pair<int, int>> vars;      // (root, index into Y[root])
  std::vector<std::vector<int>> var_of;       // [root][y index] -> variable
  std::vector<std::vector<int>> families;     // per solution: value code per variable
  std::vector<int> scalar;                    // per solution: ring code of κ, or -1
  std::size_t nodes = 0;
  std::size_t constraints = 0;

  std::size_t size() const { return families.size(); }
};

namespace detail {

inline int vcode(const FiniteRing& k, const LieVec& v) {
  int c = 0;
  for (std::size_t i = v.size(); i-- > 0;) c = c * k.size() + v[i].v;
  return c;
}

inline LieVec vdecode(const FiniteRing& k, int c, int m) {
  LieVec v(m);
  for (int i = 0; i < m; ++i) {
    v[i] = k.element(c % k.size());
    c /= k.size();
  }
  return v;
}

inline int dom_size(const FiniteRing& k, int m) {
  long long s = 1;
  for (int i = 0; i < m; ++i) s *= k.size();
  if (s > 64) throw UnsupportedError("root space with more than 64 points");
  return static_cast<int>(s);
}

inline LieVec scaled(const FiniteRing& k, const LieVec& v, Elem c) {
  LieVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = k.mul(c, v[i]);
  return out;
}

inline void add_unique(std::vector<LieVec>& v, const LieVec& x) {
  if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}

// f[u] == g[w] between variables a and b (codes of the common target)
struct Constraint {
  int a, b;
  std::vector<int> f, g;
};

using Domain = std::uint64_t;

inline Domain image(const std::vector<int>& f, Domain d) {
  Domain out = 0;
  for (; d; d &= d - 1) out |= Domain{1} << f[std::countr_zero(d)];
  return out;
}

inline Domain preimage(const std::vector<int>& f, Domain d, Domain allowed) {
  Domain out = 0;
  for (Domain x = d; x; x &= x - 1) {
    const int u = std::countr_zero(x);
    if (allowed >> f[u] & 1) out |= Domain{1} << u;
  }
  return out;
}

}  // namespace detail

/// Enumerates K̃ by arc consistency plus backtracking.
inline KTilde build_ktilde(const Realization& R, std::size_t budget = 5'000'000) {
  const auto& s = *R.relative;
  const auto& K = R.ring;
  if (R.rank() < 2) throw PreconditionError("e-interpretation needs relative rank at least 2");
  if (s.type() == "BC" || s.type() == "G") throw PreconditionError("BC and G2 reduce to C and A2 and are not handled directly");
  KTilde kt;
  kt.R = &R;
  const int n = s.size();
  kt.X.resize(n);
  kt.Y.resize(n);
  for (int a = 0; a < n; ++a) kt.X[a] = R.generators_param(a);
  for (int a = 0; a < n; ++a) {
    kt.Y[a] = kt.X[a];
    for (int b = 0; b < n; ++b) {
      auto d = s.find(s.root(a) - s.root(b));
      if (!d) continue;
      for (const auto& x : kt.X[b])
        for (const auto& y : kt.X[*d]) detail::add_unique(kt.Y[a], R.bracket(b, x, *d, y));
    }
  }
  kt.var_of.resize(n);
  std::vector<int> dsize;
  for (int a = 0; a < n; ++a)
    for (std::size_t i = 0; i < kt.Y[a].size(); ++i) {
      kt.var_of[a].push_back(static_cast<int>(kt.vars.size()));
      kt.vars.emplace_back(a, static_cast<int>(i));
      dsize.push_back(detail::dom_size(K, R.lie_dim(a)));
    }
  const int nv = static_cast<int>(kt.vars.size());

  std::vector<detail::Constraint> cons;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto ab = s.sum(a, b);
      if (!ab) continue;
      const int da = R.lie_dim(a), db = R.lie_dim(b);
      // [k_α(y_α), y_β] = [y_α, k_β(y_β)]
      for (std::size_t i = 0; i < kt.Y[a].size(); ++i)
        for (std::size_t j = 0; j < kt.Y[b].size(); ++j) {
          detail::Constraint c{kt.var_of[a][i], kt.var_of[b][j], {}, {}};
          for (int u = 0; u < dsize[c.a]; ++u)
            c.f.push_back(detail::vcode(K, R.bracket(a, detail::vdecode(K, u, da), b, kt.Y[b][j])));
          for (int w = 0; w < dsize[c.b]; ++w)
            c.g.push_back(detail::vcode(K, R.bracket(a, kt.Y[a][i], b, detail::vdecode(K, w, db))));
          cons.push_back(std::move(c));
        }
      // [k_α(x_α), x_β] = k_{α+β}([x_α, x_β])
      for (std::size_t i = 0; i < kt.X[a].size(); ++i)
        for (const auto& xb : kt.X[b]) {
          const LieVec z = R.bracket(a, kt.X[a][i], b, xb);
          auto it = std::find(kt.Y[*ab].begin(), kt.Y[*ab].end(), z);
          if (it == kt.Y[*ab].end()) throw InternalError("bracket of generators missing from Y");
          detail::Constraint c{kt.var_of[a][i], kt.var_of[*ab][it - kt.Y[*ab].begin()], {}, {}};
          for (int u = 0; u < dsize[c.a]; ++u)
            c.f.push_back(detail::vcode(K, R.bracket(a, detail::vdecode(K, u, da), b, xb)));
          for (int w = 0; w < dsize[c.b]; ++w) c.g.push_back(w);
          cons.push_back(std::move(c));
        }
    }
  kt.constraints = cons.size();
  std::vector<std::vector<int>> touching(nv);
  for (std::size_t c = 0; c < cons.size(); ++c) {
    touching[cons[c].a].push_back(static_cast<int>(c));
    if (cons[c].b != cons[c].a) touching[cons[c].b].push_back(static_cast<int>(c));
  }

  using detail::Domain;
  auto propagate = [&](std::vector<Domain>& D, std::vector<int> queue) {
    std::vector<char> queued(cons.size(), 0);
    for (int c : queue) queued[c] = 1;
    while (!queue.empty()) {
      const int ci = queue.back();
      queue.pop_back();
      queued[ci] = 0;
      const auto& c = cons[ci];
      Domain na, nb;
      if (c.a == c.b) {
        na = 0;
        for (Domain x = D[c.a]; x; x &= x - 1) {
          const int u = std::countr_zero(x);
          if (c.f[u] == c.g[u]) na |= Domain{1} << u;
        }
        nb = na;
      } else {
        na = detail::preimage(c.f, D[c.a], detail::image(c.g, D[c.b]));
        nb = detail::preimage(c.g, D[c.b], detail::image(c.f, na));
      }
      if (!na || !nb) return false;
      for (int v : {c.a, c.b}) {
        const Domain nd = v == c.a ? na : nb;
        if (nd == D[v]) continue;
        D[v] = nd;
        for (int other : touching[v])
          if (!queued[other]) {
            queued[other] = 1;
            queue.push_back(other);
          }
      }
    }
    return true;
  };

  std::vector<Domain> D(nv);
  for (int v = 0; v < nv; ++v) D[v] = dsize[v] == 64 ? ~Domain{0} : ((Domain{1} << dsize[v]) - 1);
  std::vector<int> all(cons.size());
  for (std::size_t c = 0; c < cons.size(); ++c) all[c] = static_cast<int>(c);
  if (!propagate(D, all)) return kt;

  std::function<void(std::vector<Domain>&)> search = [&](std::vector<Domain>& cur) {
    if (++kt.nodes > budget) throw BudgetExceeded("K~ search exceeded its node budget");
    int best = -1;
    for (int v = 0; v < nv; ++v)
      if (std::popcount(cur[v]) > 1 && (best < 0 || std::popcount(cur[v]) < std::popcount(cur[best]))) best = v;
    if (best < 0) {
      std::vector<int> fam(nv);
      for (int v = 0; v < nv; ++v) fam[v] = std::countr_zero(cur[v]);
      kt.families.push_back(std::move(fam));
      return;
    }
    for (Domain x = cur[best]; x; x &= x - 1) {
      std::vector<Domain> next = cur;
      next[best] = x & (~x + 1);
      if (propagate(next, touching[best])) search(next);
    }
  };
  search(D);
  std::sort(kt.families.begin(), kt.families.end());

  // scalar reading of each family
  for (const auto& fam : kt.families) {
    int found = -1;
    for (Elem c : K.elements()) {
      bool ok = true;
      for (int v = 0; v < nv && ok; ++v) {
        auto [a, i] = kt.vars[v];
        ok = fam[v] == detail::vcode(K, detail::scaled(K, kt.Y[a][i], c));
      }
      if (ok) {
        found = c.v;
        break;
      }
    }
    kt.scalar.push_back(found);
  }
  return kt;
}

struct RingCertificate {
  bool scalar = false;        // every family acts by one scalar on all root spaces
  bool bijective = false;     // κ ↦ (y ↦ κy) hits every family exactly once
  bool additive = false;
  bool multiplicative = false;
  bool commutative = false;
  bool associative = false;
  bool unit = false;          // identity family corresponds to 1
  bool underdetermined = false;
  std::string pair;           // root pair used for the product
  std::string detail;
  std::vector<std::vector<int>> product_table;  // family indices

  bool ok() const {
    return scalar && bijective && additive && multiplicative && commutative && associative && unit && !underdetermined;
  }
};

/// Checks that K̃ with pointwise addition and the bracket product is K.
inline RingCertificate certify_ring_iso(const KTilde& kt) {
  RingCertificate rc;
  const auto& R = *kt.R;
  const auto& K = R.ring;
  const auto& s = *R.relative;
  const int q = K.size();
  const int nf = static_cast<int>(kt.size());
  rc.scalar = std::find(kt.scalar.begin(), kt.scalar.end(), -1) == kt.scalar.end();
  std::vector<int> fam_of(q, -1);
  bool inj = true;
  for (int f = 0; f < nf; ++f)
    if (kt.scalar[f] >= 0) {
      if (fam_of[kt.scalar[f]] >= 0) inj = false;
      fam_of[kt.scalar[f]] = f;
    }
  rc.bijective = rc.scalar && inj && nf == q && std::find(fam_of.begin(), fam_of.end(), -1) == fam_of.end();
  if (!rc.bijective) {
    rc.detail = "K~ has " + std::to_string(nf) + " families for a ring of order " + std::to_string(q);
    return rc;
  }
  std::map<std::vector<int>, int> index;
  for (int f = 0; f < nf; ++f) index[kt.families[f]] = f;

  // pointwise sum
  rc.additive = true;
  const int nv = static_cast<int>(kt.vars.size());
  for (int f = 0; f < nf && rc.additive; ++f)
    for (int g = 0; g < nf && rc.additive; ++g) {
      std::vector<int> sum(nv);
      for (int v = 0; v < nv; ++v) {
        const int m = R.lie_dim(kt.vars[v].first);
        auto x = detail::vdecode(K, kt.families[f][v], m), y = detail::vdecode(K, kt.families[g][v], m);
        for (int i = 0; i < m; ++i) x[i] = K.add(x[i], y[i]);
        sum[v] = detail::vcode(K, x);
      }
      auto it = index.find(sum);
      rc.additive = it != index.end() &&
                    kt.scalar[it->second] == K.add(K.element(kt.scalar[f]), K.element(kt.scalar[g])).v;
    }

  // product through one pair (α long, β) with α + β a root
  int pa = -1, pb = -1;
  for (int a = 0; a < s.size() && pa < 0; ++a)
    if (s.length(a) == Length::Long)
      for (int b = 0; b < s.size(); ++b)
        if (s.sum(a, b)) {
          pa = a;
          pb = b;
          break;
        }
  const int pab = *s.sum(pa, pb);
  rc.pair = std::to_string(pa) + "," + std::to_string(pb);
  auto value = [&](int f, int root, const LieVec& y) {
    auto it = std::find(kt.Y[root].begin(), kt.Y[root].end(), y);
    return detail::vdecode(K, kt.families[f][kt.var_of[root][it - kt.Y[root].begin()]], R.lie_dim(root));
  };
  rc.product_table.assign(nf, std::vector<int>(nf, -1));
  rc.multiplicative = true;
  for (int f = 0; f < nf; ++f)
    for (int g = 0; g < nf; ++g) {
      std::vector<int> matches;
      for (int m = 0; m < nf; ++m) {
        bool ok = true;
        for (const auto& xa : kt.X[pa])
          for (const auto& xb : kt.X[pb]) {
            if (!ok) break;
            const auto lhs = R.bracket(pa, value(f, pa, xa), pb, value(g, pb, xb));
            ok = lhs == value(m, pab, R.bracket(pa, xa, pb, xb));
          }
        if (ok) matches.push_back(m);
      }
      if (matches.size() != 1) {
        rc.underdetermined = rc.underdetermined || matches.size() > 1;
        rc.multiplicative = false;
        continue;
      }
      rc.product_table[f][g] = matches[0];
      if (kt.scalar[matches[0]] != K.mul(K.element(kt.scalar[f]), K.element(kt.scalar[g])).v) rc.multiplicative = false;
    }
  rc.commutative = rc.associative = rc.multiplicative;
  if (rc.multiplicative) {
    const auto& P = rc.product_table;
    for (int f = 0; f < nf; ++f)
      for (int g = 0; g < nf; ++g) {
        if (P[f][g] != P[g][f]) rc.commutative = false;
        for (int h = 0; h < nf; ++h)
          if (P[P[f][g]][h] != P[f][P[g][h]]) rc.associative = false;
      }
  }
  const int one = fam_of[K.one().v];
  rc.unit = true;
  for (int v = 0; v < nv; ++v) {
    auto [a, i] = kt.vars[v];
    if (kt.families[one][v] != detail::vcode(K, kt.Y[a][i])) rc.unit = false;
  }
  if (rc.multiplicative)
    for (int f = 0; f < nf; ++f)
      if (rc.product_table[one][f] != f) rc.unit = false;
  if (!rc.ok() && rc.detail.empty()) rc.detail = "ring structure mismatch";
  return rc;
}

}  // namespace iso
