#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "isotropic/realize.hpp"
#include "isotropic/subsets.hpp"

namespace iso {

/// Finite set of matrices with insertion order kept. `complete` is false when
/// an enumeration stopped at its cap; such sets only answer membership of
/// elements that were actually produced.
class GroupSet {
 public:
  GroupSet() = default;
  explicit GroupSet(std::string prov) : provenance(std::move(prov)) {}

  bool complete = true;
  std::string provenance;

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const std::vector<RMatrix>& elements() const { return items_; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  bool contains(const RMatrix& g) const {
    if (slots_.empty()) return false;
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t s = g.hash() & mask;; s = (s + 1) & mask) {
      const auto v = slots_[s];
      if (v == 0) return false;
      if (items_[v - 1] == g) return true;
    }
  }

  /// True when g was not already present.
  bool insert(const RMatrix& g) {
    if ((items_.size() + 1) * 2 > slots_.size()) rehash(std::max<std::size_t>(16, slots_.size() * 2));
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t s = g.hash() & mask;; s = (s + 1) & mask) {
      const auto v = slots_[s];
      if (v == 0) {
        items_.push_back(g);
        slots_[s] = static_cast<std::uint32_t>(items_.size());
        return true;
      }
      if (items_[v - 1] == g) return false;
    }
  }

  void reserve(std::size_t n) {
    std::size_t want = 16;
    while (want < 2 * n) want *= 2;
    if (want > slots_.size()) rehash(want);
    items_.reserve(n);
  }

 private:
  std::vector<RMatrix> items_;
  std::vector<std::uint32_t> slots_;  // 0 = empty, otherwise index + 1

  void rehash(std::size_t n) {
    slots_.assign(n, 0);
    const std::size_t mask = n - 1;
    for (std::size_t i = 0; i < items_.size(); ++i) {
      std::size_t s = items_[i].hash() & mask;
      while (slots_[s]) s = (s + 1) & mask;
      slots_[s] = static_cast<std::uint32_t>(i + 1);
    }
  }
};

inline constexpr std::size_t kDefaultCap = 20'000'000;

inline GroupSet make_set(const std::vector<RMatrix>& v, std::string prov = {}) {
  GroupSet s(std::move(prov));
  s.reserve(v.size());
  for (const auto& g : v) s.insert(g);
  return s;
}

/// Breadth-first closure of ⟨gens⟩ under left multiplication. Positive words
/// suffice because every element of a finite group has finite order.
inline GroupSet generate(const Realization& R, const std::vector<RMatrix>& gens, std::size_t cap = kDefaultCap,
                         std::string prov = {}) {
  GroupSet G(std::move(prov));
  G.insert(R.identity());
  GroupSet letters;
  for (const auto& g : gens)
    if (!(g == R.identity())) letters.insert(g);
  for (std::size_t head = 0; head < G.size(); ++head) {
    const RMatrix x = G.elements()[head];
    for (const auto& s : letters) {
      G.insert(R.mul(s, x));
      if (G.size() > cap) {
        G.complete = false;
        return G;
      }
    }
  }
  return G;
}

/// Generators of U_α(K): t_α at each additive generator of K placed in each
/// parameter slot (the 𝔤_{2α} slots included for ultrashort α).
inline std::vector<RMatrix> root_generators(const Realization& R, int a) {
  std::vector<RMatrix> out;
  const int m = R.param_count(a);
  for (int k = 0; k < m; ++k)
    for (Elem c : R.ring.additive_generators()) {
      std::vector<Elem> p(m, R.ring.zero());
      p[k] = c;
      out.push_back(R.t(a, p));
    }
  return out;
}

inline std::string subset_label(const RootSubset& s) {
  std::string out = "{";
  for (int i : s.indices()) out += (out.size() > 1 ? "," : "") + std::to_string(i);
  return out + "}";
}

/// A·B as a set.
inline GroupSet set_product(const Realization& R, const GroupSet& A, const GroupSet& B) {
  GroupSet out("(" + A.provenance + ")(" + B.provenance + ")");
  out.complete = A.complete && B.complete;
  for (const auto& a : A)
    for (const auto& b : B) out.insert(R.mul(a, b));
  return out;
}

inline GroupSet intersect(const GroupSet& A, const GroupSet& B) {
  GroupSet out(A.provenance + " ∩ " + B.provenance);
  out.complete = A.complete && B.complete;
  const GroupSet& small = A.size() <= B.size() ? A : B;
  const GroupSet& big = A.size() <= B.size() ? B : A;
  for (const auto& g : small)
    if (big.contains(g)) out.insert(g);
  return out;
}

/// {[a, g] : a ∈ A}, with [x, y] = x y x⁻¹ y⁻¹.
inline GroupSet commutator_set(const Realization& R, const GroupSet& A, const RMatrix& g) {
  GroupSet out("[" + A.provenance + ", g]");
  out.complete = A.complete;
  const RMatrix gi = R.inverse(g);
  for (const auto& a : A) out.insert(R.mul(R.mul(a, g), R.mul(R.inverse(a), gi)));
  return out;
}

/// Elements of H commuting with every element of S.
inline GroupSet centralizer(const Realization& R, const GroupSet& H, const std::vector<RMatrix>& S) {
  if (!H.complete) throw PreconditionError("centralizer needs a complete enumeration of " + H.provenance);
  GroupSet out("C(" + H.provenance + ")");
  for (const auto& h : H) {
    bool ok = true;
    for (const auto& s : S)
      if (!(R.mul(h, s) == R.mul(s, h))) {
        ok = false;
        break;
      }
    if (ok) out.insert(h);
  }
  return out;
}

inline bool subset_of(const GroupSet& A, const GroupSet& B) {
  if (!B.complete) throw PreconditionError("inclusion into an incomplete set " + B.provenance);
  for (const auto& a : A)
    if (!B.contains(a)) return false;
  return true;
}

inline bool equal_sets(const GroupSet& A, const GroupSet& B) {
  if (!A.complete || !B.complete) throw PreconditionError("two-sided equality on an incomplete set");
  return A.size() == B.size() && subset_of(A, B);
}

/// First element of A outside B, if any.
inline std::optional<RMatrix> first_outside(const GroupSet& A, const GroupSet& B) {
  for (const auto& a : A)
    if (!B.contains(a)) return a;
  return std::nullopt;
}

inline std::size_t int_pow(std::size_t b, int e) {
  std::size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

/// G_Σ(K), or G⁰_Σ(K) = G_Σ(K) L(K) when with_L (L normalizes every U_α).
/// For unipotent Σ the order is compared against ∏_{α∈Σ∖2Σ} |U_α(K)|.
inline GroupSet points_of(const Realization& R, const RootSubset& sigma, bool with_L, std::size_t cap = kDefaultCap) {
  if (!is_closed(sigma)) throw PreconditionError("points_of needs a closed subset");
  std::vector<RMatrix> gens;
  for (int a : sigma.indices())
    for (auto& g : root_generators(R, a)) gens.push_back(std::move(g));
  GroupSet G = generate(R, gens, cap, "G" + subset_label(sigma));
  if (G.complete && is_unipotent(sigma)) {
    std::size_t expect = 1;
    for (int a : sigma.indices()) {
      const auto& ra = sigma.system->root(a);
      // skip α ∈ 2Σ: U_α already sits inside U_{α/2}
      bool halved = false, even = true;
      IntVec half(ra.coords.size());
      for (std::size_t k = 0; k < half.size(); ++k) {
        if (ra.coords[k] % 2) even = false;
        half[k] = ra.coords[k] / 2;
      }
      if (even)
        if (auto b = sigma.system->find(Root{half}); b && sigma.contains(*b)) halved = true;
      if (!halved) expect *= int_pow(R.ring.size(), R.param_count(a));
    }
    if (expect != G.size())
      throw InternalError("product decomposition fails for " + G.provenance + ": " + std::to_string(G.size()) +
                          " vs " + std::to_string(expect));
  }
  if (!with_L) return G;
  GroupSet L = make_set(R.L_points(), "L");
  GroupSet out = set_product(R, G, L);
  out.provenance = "G0" + subset_label(sigma);
  if (out.size() > cap) out.complete = false;
  return out;
}

inline GroupSet levi_points(const Realization& R) { return make_set(R.L_points(), "L"); }

/// Full point group as G⁰_Φ(K).
inline GroupSet whole_group(const Realization& R, std::size_t cap = kDefaultCap) {
  auto g = points_of(R, RootSubset::all(R.relative), true, cap);
  g.provenance = "G";
  return g;
}

struct GaussReport {
  bool ok = true;
  std::size_t subsets_checked = 0;
  std::size_t group_order = 0;
  std::vector<std::string> failures;  // subset labels
};

/// Exact check of G⁰_Σ = G_{Σr∩Φ⁺} G_{Σ∩Φ⁻} G_{Σ∩Φ⁺} L for Σ = Φ (the plain
/// decomposition) and, when all_closed, for every closed Σ.
inline GaussReport gauss_check(const Realization& R, bool all_closed = true, std::size_t cap = kDefaultCap) {
  if (!R.ring.is_semilocal()) throw PreconditionError("Gauss decomposition needs a semi-local ring");
  const auto sys = R.relative;
  const GroupSet L = levi_points(R);
  const RootSubset pos = RootSubset::positive(sys);
  const RootSubset neg = pos.negated();
  std::vector<RootSubset> sigmas{RootSubset::all(sys)};
  if (all_closed)
    for (auto m : enumerate_closed(*sys)) {
      auto s = RootSubset::from_mask(sys, m);
      if (!(s == sigmas[0])) sigmas.push_back(s);
    }
  GaussReport rep;
  for (const auto& s : sigmas) {
    GroupSet lhs = points_of(R, s, true, cap);
    if (!lhs.complete) throw BudgetExceeded("G0 enumeration capped for " + lhs.provenance);
    const RootSubset sr = s & s.negated();
    GroupSet a = points_of(R, sr & pos, false, cap);
    GroupSet b = points_of(R, s & neg, false, cap);
    GroupSet c = points_of(R, s & pos, false, cap);
    GroupSet rhs = set_product(R, a, set_product(R, b, set_product(R, c, L)));
    if (s == sigmas[0]) rep.group_order = lhs.size();
    ++rep.subsets_checked;
    if (!equal_sets(lhs, rhs)) {
      rep.ok = false;
      rep.failures.push_back(subset_label(s));
    }
  }
  return rep;
}

/// Point-level check of the subgroup intersection statements. With Σ'
/// saturated: G⁰_Σ ∩ G⁰_Σ' = G⁰_{Σ∩Σ'}. With Σ' unipotent:
/// G⁰_Σ ∩ G_Σ' = G_Σ ∩ G_Σ' = G_{Σ∩Σ'}.
inline bool subgroup_intersection_check(const Realization& R, const RootSubset& s, const RootSubset& t,
                                        std::size_t cap = kDefaultCap) {
  if (!is_closed(s) || !is_closed(t)) throw PreconditionError("subsets must be closed");
  if (!R.ring.is_local()) throw PreconditionError("intersection statements need a local ring");
  const bool sat = is_saturated(t), uni = is_unipotent(t);
  if (!sat && !uni) throw PreconditionError("second subset must be saturated or unipotent");
  const RootSubset st = s & t;
  bool ok = true;
  if (sat) {
    ok = ok && equal_sets(intersect(points_of(R, s, true, cap), points_of(R, t, true, cap)), points_of(R, st, true, cap));
  }
  if (uni) {
    GroupSet gt = points_of(R, t, false, cap);
    GroupSet expect = points_of(R, st, false, cap);
    ok = ok && equal_sets(intersect(points_of(R, s, true, cap), gt), expect) &&
         equal_sets(intersect(points_of(R, s, false, cap), gt), expect);
  }
  return ok;
}

/// Seeded random words of length 1..max_len in the letters and their inverses.
class RandomWords {
 public:
  RandomWords(const Realization& R, std::vector<RMatrix> gens, std::uint64_t seed, int max_len = 40)
      : R_(R), rng_(seed), max_len_(max_len) {
    for (const auto& g : gens) {
      letters_.push_back(g);
      letters_.push_back(R.inverse(g));
    }
    if (letters_.empty()) letters_.push_back(R.identity());
  }

  RMatrix next() {
    std::uniform_int_distribution<int> len(1, max_len_);
    std::uniform_int_distribution<std::size_t> pick(0, letters_.size() - 1);
    RMatrix g = R_.identity();
    for (int n = len(rng_); n > 0; --n) g = R_.mul(g, letters_[pick(rng_)]);
    return g;
  }

 private:
  const Realization& R_;
  std::mt19937_64 rng_;
  int max_len_;
  std::vector<RMatrix> letters_;
};

/// All root generators plus L: generating set of G⁰_Φ(K).
inline std::vector<RMatrix> group_generators(const Realization& R) {
  std::vector<RMatrix> out;
  for (int a = 0; a < R.relative->size(); ++a)
    for (auto& g : root_generators(R, a)) out.push_back(std::move(g));
  for (auto& l : R.L_points()) out.push_back(std::move(l));
  return out;
}

}  // namespace iso
