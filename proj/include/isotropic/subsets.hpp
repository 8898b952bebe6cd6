#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <vector>

#include "isotropic/rational.hpp"
#include "isotropic/roots.hpp"

namespace iso {

/// A subset of the roots of a system, held as a membership mask.
struct RootSubset {
  std::shared_ptr<const RootSystem> system;
  std::vector<bool> members;

  explicit RootSubset(std::shared_ptr<const RootSystem> sys)
      : system(std::move(sys)), members(system->size(), false) {}
  RootSubset(std::shared_ptr<const RootSystem> sys, const std::vector<int>& idx)
      : RootSubset(std::move(sys)) {
    for (int i : idx) members[i] = true;
  }

  static RootSubset all(std::shared_ptr<const RootSystem> sys) {
    RootSubset s(std::move(sys));
    s.members.assign(s.members.size(), true);
    return s;
  }
  static RootSubset positive(std::shared_ptr<const RootSystem> sys) {
    RootSubset s(sys);
    for (int i = 0; i < sys->size(); ++i) s.members[i] = sys->positive(i);
    return s;
  }
  static RootSubset from_mask(std::shared_ptr<const RootSystem> sys, std::uint64_t mask) {
    RootSubset s(std::move(sys));
    for (std::size_t i = 0; i < s.members.size(); ++i) s.members[i] = mask >> i & 1;
    return s;
  }

  bool contains(int i) const { return members[i]; }
  int size() const {
    int c = 0;
    for (bool b : members) c += b;
    return c;
  }
  std::vector<int> indices() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < members.size(); ++i)
      if (members[i]) out.push_back(static_cast<int>(i));
    return out;
  }
  std::uint64_t mask() const {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < members.size() && i < 64; ++i)
      if (members[i]) m |= std::uint64_t{1} << i;
    return m;
  }
  RootSubset operator&(const RootSubset& o) const {
    RootSubset s(system);
    for (std::size_t i = 0; i < members.size(); ++i) s.members[i] = members[i] && o.members[i];
    return s;
  }
  RootSubset operator|(const RootSubset& o) const {
    RootSubset s(system);
    for (std::size_t i = 0; i < members.size(); ++i) s.members[i] = members[i] || o.members[i];
    return s;
  }
  RootSubset negated() const {
    RootSubset s(system);
    for (std::size_t i = 0; i < members.size(); ++i)
      if (members[i]) s.members[system->neg(static_cast<int>(i))] = true;
    return s;
  }
  friend bool operator==(const RootSubset& a, const RootSubset& b) {
    return a.members == b.members;
  }
};

inline bool is_closed(const RootSubset& s) {
  const auto& sys = *s.system;
  auto idx = s.indices();
  for (int a : idx)
    for (int b : idx) {
      auto c = sys.sum(a, b);
      if (c && !s.contains(*c)) return false;
    }
  return true;
}

/// Smallest closed superset, by fixpoint iteration of pairwise sums.
inline RootSubset closure(RootSubset s) {
  const auto& sys = *s.system;
  for (bool grew = true; grew;) {
    grew = false;
    auto idx = s.indices();
    for (int a : idx)
      for (int b : idx) {
        auto c = sys.sum(a, b);
        if (c && !s.members[*c]) {
          s.members[*c] = true;
          grew = true;
        }
      }
  }
  return s;
}

inline bool is_unipotent(const RootSubset& s) {
  for (int i : s.indices())
    if (s.contains(s.system->neg(i))) return false;
  return true;
}

inline bool is_subsystem(const RootSubset& s) {
  for (int i : s.indices())
    if (!s.contains(s.system->neg(i))) return false;
  return true;
}

inline bool is_parabolic(const RootSubset& s) {
  for (int i = 0; i < s.system->size(); ++i)
    if (!s.contains(i) && !s.contains(s.system->neg(i))) return false;
  return true;
}

/// Integer linear functional on simple coordinates.
using Functional = std::vector<long long>;

inline long long apply(const Functional& w, const IntVec& c) {
  long long s = 0;
  for (std::size_t k = 0; k < w.size(); ++k) s += w[k] * c[k];
  return s;
}

/// Standard separating candidates: coordinate functionals and x ↦ ⟨x, ρ⟩.
inline std::vector<Functional> default_functionals(const RootSystem& sys) {
  std::vector<Functional> out;
  const int r = sys.rank();
  for (int k = 0; k < r; ++k) {
    Functional w(r, 0);
    w[k] = 1;
    out.push_back(w);
    w[k] = -1;
    out.push_back(w);
  }
  std::vector<std::vector<long long>> q(r, std::vector<long long>(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) q[i][j] = sys.dot(sys.basis()[i], sys.basis()[j]);
  for (int p = 0; p < sys.size(); ++p) {
    Functional w(r, 0);
    const auto& c = sys.simple_coords(p);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) w[i] += q[i][j] * c[j];
    out.push_back(w);
  }
  return out;
}

/// Whether γ lies in the nonnegative cone of the given roots (exact LP).
inline bool in_cone(const RootSystem& sys, const std::vector<int>& gens, int gamma) {
  std::vector<RVec> cols;
  for (int g : gens) {
    RVec c;
    for (int v : sys.simple_coords(g)) c.push_back(Rational(v));
    cols.push_back(c);
  }
  RVec b;
  for (int v : sys.simple_coords(gamma)) b.push_back(Rational(v));
  return nonneg_feasible(cols, b);
}

/// Σ = Φ ∩ R≥0 Σ. Cheap separating functionals decide most roots; the rest
/// go to the exact cone test. Extra candidate functionals may be supplied.
inline bool is_saturated(const RootSubset& s, const std::vector<Functional>& extra = {}) {
  const auto& sys = *s.system;
  auto idx = s.indices();
  auto cands = default_functionals(sys);
  cands.insert(cands.end(), extra.begin(), extra.end());
  std::vector<const Functional*> valid;
  for (const auto& w : cands) {
    bool ok = true;
    for (int i : idx)
      if (apply(w, sys.simple_coords(i)) < 0) {
        ok = false;
        break;
      }
    if (ok) valid.push_back(&w);
  }
  for (int g = 0; g < sys.size(); ++g) {
    if (s.contains(g)) continue;
    bool separated = false;
    for (const auto* w : valid)
      if (apply(*w, sys.simple_coords(g)) < 0) {
        separated = true;
        break;
      }
    if (separated) continue;
    if (idx.empty()) return false;
    if (in_cone(sys, idx, g)) return false;
  }
  return true;
}

struct SubsetClass {
  bool unipotent = false;
  bool parabolic = false;
  bool saturated = false;
  bool subsystem = false;
  friend bool operator==(const SubsetClass&, const SubsetClass&) = default;
};

inline SubsetClass classify(const RootSubset& s) {
  if (!is_closed(s)) throw PreconditionError("classify needs a closed subset");
  return {is_unipotent(s), is_parabolic(s), is_saturated(s), is_subsystem(s)};
}

/// Σ_r = Σ ∩ −Σ and Σ_u = Σ \ −Σ.
inline std::pair<RootSubset, RootSubset> decompose(const RootSubset& s) {
  if (!is_closed(s)) throw PreconditionError("decompose needs a closed subset");
  RootSubset neg = s.negated();
  RootSubset r = s & neg;
  RootSubset u(s.system);
  for (int i : s.indices()) u.members[i] = !neg.contains(i);
  return {r, u};
}

/// All closed subsets as bitmasks; only for |Φ| ≤ 14.
inline std::vector<std::uint32_t> enumerate_closed(const RootSystem& sys) {
  const int n = sys.size();
  if (n > 14) throw UnsupportedError("closed-subset enumeration needs at most 14 roots");
  std::vector<std::uint32_t> sums(n * n, 0);
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> target;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      if (auto c = sys.sum(a, b)) {
        pairs.push_back({a, b});
        target.push_back(*c);
      }
  std::vector<std::uint32_t> out;
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    bool ok = true;
    for (std::size_t k = 0; k < pairs.size() && ok; ++k) {
      auto [a, b] = pairs[k];
      if ((m >> a & 1) && (m >> b & 1) && !(m >> target[k] & 1)) ok = false;
    }
    if (ok) out.push_back(m);
  }
  return out;
}

/// The Weyl group as permutations of root indices (small ranks only).
inline std::vector<std::vector<int>> weyl_group(const RootSystem& sys, std::size_t cap = 100000) {
  auto gens = sys.simple_reflections();
  std::vector<int> id(sys.size());
  std::iota(id.begin(), id.end(), 0);
  std::set<std::vector<int>> seen{id};
  std::vector<std::vector<int>> todo{id};
  while (!todo.empty()) {
    auto w = todo.back();
    todo.pop_back();
    for (const auto& s : gens) {
      std::vector<int> ws(w.size());
      for (std::size_t i = 0; i < w.size(); ++i) ws[i] = s[w[i]];
      if (seen.insert(ws).second) {
        if (seen.size() > cap) throw BudgetExceeded("Weyl group larger than cap");
        todo.push_back(ws);
      }
    }
  }
  return {seen.begin(), seen.end()};
}

/// (Φ⁺ + ZJ) ∩ Φ for a set J of simple-root positions given as a bitmask.
inline RootSubset standard_parabolic(std::shared_ptr<const RootSystem> sys, unsigned jmask) {
  RootSubset s(sys);
  for (int i = 0; i < sys->size(); ++i) {
    if (sys->positive(i)) {
      s.members[i] = true;
      continue;
    }
    const auto& c = sys->simple_coords(i);
    bool in_span = true;
    for (int k = 0; k < sys->rank(); ++k)
      if (c[k] != 0 && !(jmask >> k & 1)) in_span = false;
    s.members[i] = in_span;
  }
  return s;
}

/// Σ is parabolic iff wΣ is a standard parabolic for some Weyl element w.
inline bool parabolic_by_weyl(const RootSubset& s, const std::vector<std::vector<int>>& weyl) {
  const auto& sys = s.system;
  std::set<std::vector<bool>> standard;
  for (unsigned j = 0; j < (1u << sys->rank()); ++j)
    standard.insert(standard_parabolic(sys, j).members);
  for (const auto& w : weyl) {
    std::vector<bool> img(s.members.size(), false);
    for (std::size_t i = 0; i < s.members.size(); ++i)
      if (s.members[i]) img[w[i]] = true;
    if (standard.count(img)) return true;
  }
  return false;
}

}  // namespace iso
