#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "isotropic/groups.hpp"

namespace iso {

enum class Outcome { Pass, Fail, Inconclusive, Skipped };
enum class Mode { Exhaustive, Sampled };

inline const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::Inconclusive: return "inconclusive";
    case Outcome::Skipped: return "skipped";
  }
  return "?";
}
inline const char* mode_name(Mode m) { return m == Mode::Exhaustive ? "exhaustive" : "one-sided+sampled"; }

struct VerificationResult {
  std::string theorem;
  std::string index, ring;
  std::string instance;  // root, grading or identity label
  Mode mode = Mode::Exhaustive;
  Outcome outcome = Outcome::Pass;
  std::vector<std::pair<std::string, std::size_t>> counts;
  std::string detail;
  std::optional<RMatrix> counterexample;
  double seconds = 0;  // not serialized

  void count(std::string k, std::size_t v) { counts.emplace_back(std::move(k), v); }
  void fail(std::string why, std::optional<RMatrix> g) {
    outcome = Outcome::Fail;
    detail = std::move(why);
    counterexample = std::move(g);
  }
};

struct RunOptions {
  std::optional<std::size_t> sampled;  // forces sampled mode with this many words
  std::uint64_t seed = 1;
  std::size_t cap = kDefaultCap;
};

inline constexpr std::size_t kDefaultSamples = 100'000;

/// "2e1", "e1-e3", "-e2": relative root in ε-coordinates (stored doubled).
inline std::string root_label(const RootSystem& s, int a) {
  std::string out;
  const auto& c = s.root(a).coords;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const int v = c[k] / 2;
    if (v == 0) continue;
    if (v < 0) out += "-";
    else if (!out.empty()) out += "+";
    if (std::abs(v) != 1) out += std::to_string(std::abs(v));
    out += "e" + std::to_string(k + 1);
  }
  return out.empty() ? "0" : out;
}

/// One realization with lazily computed point sets shared by all checkers.
class Instance {
 public:
  Instance(Realization r, RunOptions o) : R(std::move(r)), opt(o) {
    if (opt.sampled) {
      mode_ = Mode::Sampled;
    } else {
      G_ = whole_group(R, opt.cap);
      mode_ = G_->complete ? Mode::Exhaustive : Mode::Sampled;
      if (!G_->complete) G_.reset();
    }
  }

  Realization R;
  RunOptions opt;

  Mode mode() const { return mode_; }
  std::size_t samples() const { return opt.sampled.value_or(kDefaultSamples); }

  const GroupSet& G() {
    if (!G_) throw PreconditionError("point group not enumerated in sampled mode");
    return *G_;
  }
  const GroupSet& L() {
    if (!L_) L_ = levi_points(R);
    return *L_;
  }
  /// Exhaustive: centralizer of all generators. Sampled: scalar matrices of G.
  const GroupSet& center() {
    if (!Z_) Z_ = mode_ == Mode::Exhaustive ? centralizer(R, G(), group_generators(R)) : scalar_points();
    Z_->provenance = "Cent(G)";
    return *Z_;
  }
  GroupSet scalar_points() const {
    GroupSet s("scalars");
    for (Elem u : R.ring.units()) {
      auto m = mat_scale(R.ring, R.identity(), u);
      if (R.in_group(m)) s.insert(m);
    }
    return s;
  }
  const GroupSet& U(int a) {
    if (U_.empty()) U_.resize(R.relative->size());
    if (!U_[a]) U_[a] = make_set(R.root_subgroup(a), "U" + root_label(*R.relative, a));
    return *U_[a];
  }
  /// Intersection of Cent_L(U_β) over the non-ultrashort β.
  const GroupSet& cent_us() {
    if (!Cus_) {
      std::vector<RMatrix> gens;
      for (int b = 0; b < R.relative->size(); ++b)
        if (R.relative->length(b) != Length::Ultrashort)
          for (auto& g : root_generators(R, b)) gens.push_back(g);
      Cus_ = centralizer(R, L(), gens);
      Cus_->provenance = "Cent_us";
    }
    return *Cus_;
  }
  /// t_α(X_α) for the basis generating set (with X_{2α} for ultrashort α).
  std::vector<RMatrix> X(int a) const { return R.generators(a); }
  RandomWords words() const { return RandomWords(R, group_generators(R), opt.seed); }

  VerificationResult result(std::string theorem, std::string instance) const {
    VerificationResult r;
    r.theorem = std::move(theorem);
    r.index = R.index.name;
    r.ring = R.ring.spec();
    r.instance = std::move(instance);
    r.mode = mode_;
    return r;
  }

 private:
  Mode mode_ = Mode::Exhaustive;
  std::optional<GroupSet> G_, L_, Z_, Cus_;
  std::vector<std::optional<GroupSet>> U_;
};

using Pred = std::function<bool(const RMatrix&)>;

/// {g ∈ G : pred(g)} = rhs. Exhaustive filter when G is enumerated; otherwise
/// rhs ⊆ lhs over every element of rhs and the reverse on random words.
inline void compare_filter(Instance& I, VerificationResult& res, const Pred& pred, const GroupSet& rhs) {
  res.count("rhs", rhs.size());
  if (!rhs.complete) {
    res.outcome = Outcome::Inconclusive;
    res.detail = "right-hand side enumeration capped";
    return;
  }
  for (const auto& g : rhs)
    if (!pred(g)) return res.fail("element of the right-hand side violates the defining condition", g);
  if (I.mode() == Mode::Exhaustive) {
    std::size_t lhs = 0;
    for (const auto& g : I.G()) {
      if (!pred(g)) continue;
      ++lhs;
      if (!rhs.contains(g)) {
        res.count("group", I.G().size());
        return res.fail("element satisfying the condition lies outside the right-hand side", g);
      }
    }
    res.count("group", I.G().size());
    res.count("lhs", lhs);
    return;
  }
  auto words = I.words();
  std::size_t hits = 0;
  for (std::size_t s = 0; s < I.samples(); ++s) {
    RMatrix g = words.next();
    if (!pred(g)) continue;
    ++hits;
    if (!rhs.contains(g)) return res.fail("sampled element satisfies the condition but lies outside", g);
  }
  res.count("samples", I.samples());
  res.count("sample_hits", hits);
}

inline void compare_sets(VerificationResult& res, const GroupSet& lhs, const GroupSet& rhs) {
  res.count("lhs", lhs.size());
  res.count("rhs", rhs.size());
  if (!lhs.complete || !rhs.complete) {
    res.outcome = Outcome::Inconclusive;
    res.detail = "enumeration capped";
    return;
  }
  if (auto g = first_outside(lhs, rhs)) return res.fail("left-hand side not contained in right-hand side", g);
  if (auto g = first_outside(rhs, lhs)) return res.fail("right-hand side not contained in left-hand side", g);
}

inline bool conj_into(const Realization& R, const RMatrix& g, const std::vector<RMatrix>& xs, const Pred& target) {
  for (const auto& x : xs)
    if (!target(R.conj(g, x))) return false;
  return true;
}

inline bool commutes_with(const Realization& R, const RMatrix& g, const std::vector<RMatrix>& xs) {
  for (const auto& x : xs)
    if (!(R.mul(g, x) == R.mul(x, g))) return false;
  return true;
}

inline RootSubset half_space(const RootSystem& s, std::shared_ptr<const RootSystem> sp, int a) {
  RootSubset out(sp);
  for (int b = 0; b < s.size(); ++b) out.members[b] = s.dot(a, b) >= 0;
  return out;
}

inline void require_rank2(const Realization& R) {
  if (R.rank() < 2) throw PreconditionError("relative rank must be at least 2");
}

template <class F>
VerificationResult timed(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  VerificationResult r = f();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

/// N = {g : g t_α(X) g⁻¹ ⊆ U_α} against P = G⁰ of the roots at angle ≤ π/2 to α.
inline VerificationResult check_long_norm(Instance& I, int a) {
  return timed([&] {
    const auto& R = I.R;
    require_rank2(R);
    if (R.relative->length(a) != Length::Long) throw PreconditionError("root is not long");
    auto res = I.result("long-norm", root_label(*R.relative, a));
    const auto xs = I.X(a);
    auto P = points_of(R, half_space(*R.relative, R.relative, a), true, I.opt.cap);
    compare_filter(I, res, [&](const RMatrix& g) { return conj_into(R, g, xs, [&](const RMatrix& m) { return R.in_root_subgroup(a, m); }); }, P);
    return res;
  });
}

/// Γ_α = {β : α + β ∉ Φ ∪ {0}}.
inline std::vector<int> gamma_set(const RootSystem& s, int a) {
  std::vector<int> out;
  for (int b = 0; b < s.size(); ++b)
    if (b != s.neg(a) && !s.sum(a, b)) out.push_back(b);
  return out;
}

inline std::optional<int> root_from_coords(const RootSystem& s, IntVec c) { return s.find(Root{std::move(c)}); }

/// For a short α = ±e_i ± e_j of C/BC: the long roots 2(±e_i), 2(±e_j).
inline std::pair<int, int> long_ends(const RootSystem& s, int a) {
  const auto& c = s.root(a).coords;
  std::vector<int> ends;
  for (std::size_t k = 0; k < c.size(); ++k)
    if (c[k] != 0) {
      IntVec v(c.size(), 0);
      v[k] = 2 * c[k];
      ends.push_back(*root_from_coords(s, v));
    }
  return {ends.at(0), ends.at(1)};
}

inline std::string letter(const Realization& R) { return R.relative->type(); }

/// Cent_G(Z_α) against the predicted right-hand side.
inline VerificationResult check_dbl_centzer(Instance& I, int a) {
  return timed([&] {
    const auto& R = I.R;
    require_rank2(R);
    const auto& s = *R.relative;
    auto res = I.result("dbl-centzer", root_label(s, a));
    std::vector<RMatrix> z;
    for (int b : gamma_set(s, a))
      for (auto& g : I.X(b)) z.push_back(g);
    const std::string L = letter(R);
    GroupSet rhs;
    if (L == "BC" && s.length(a) == Length::Ultrashort) {
      rhs = set_product(R, I.cent_us(), I.U(a));
      res.detail = "Cent_us U_a";
    } else if ((L == "C" || L == "BC") && s.length(a) == Length::Short) {
      auto [l1, l2] = long_ends(s, a);
      rhs = set_product(R, I.center(), set_product(R, I.U(l1), set_product(R, I.U(a), I.U(l2))));
      res.detail = "Cent U_2ei U_a U_2ej";
    } else {
      rhs = set_product(R, I.center(), I.U(a));
      res.detail = "Cent U_a";
    }
    const std::string shape = res.detail;
    compare_filter(I, res, [&](const RMatrix& g) { return commutes_with(R, g, z); }, rhs);
    if (res.outcome == Outcome::Pass) res.detail = shape;
    return res;
  });
}

/// Centralizer clause, normalizer clause and the scalar prediction for the center.
inline std::vector<VerificationResult> check_cent_norm(Instance& I) {
  const auto& R = I.R;
  require_rank2(R);
  const auto& s = *R.relative;
  std::vector<RMatrix> all;
  for (int a = 0; a < s.size(); ++a)
    for (auto& g : I.X(a)) all.push_back(g);
  std::vector<VerificationResult> out;
  out.push_back(timed([&] {
    auto res = I.result("cent-norm", "centralizer");
    compare_filter(I, res, [&](const RMatrix& g) { return commutes_with(R, g, all); }, I.center());
    return res;
  }));
  out.push_back(timed([&] {
    auto res = I.result("cent-norm", "normalizer");
    std::vector<std::vector<RMatrix>> xs;
    for (int a = 0; a < s.size(); ++a) xs.push_back(I.X(a));
    compare_filter(
        I, res,
        [&](const RMatrix& g) {
          for (int a = 0; a < s.size(); ++a)
            if (!conj_into(R, g, xs[a], [&](const RMatrix& m) { return R.in_root_subgroup(a, m); })) return false;
          return true;
        },
        I.L());
    return res;
  }));
  out.push_back(timed([&] {
    auto res = I.result("cent-norm", "center-is-scalar");
    compare_sets(res, I.center(), I.scalar_points());
    return res;
  }));
  return out;
}

/// Linear functional given by its values on the simple roots.
struct Grading {
  std::vector<int> simple_values;

  int operator()(const RootSystem& s, int a) const {
    int v = 0;
    const auto& c = s.simple_coords(a);
    for (std::size_t k = 0; k < c.size(); ++k) v += simple_values[k] * c[k];
    return v;
  }
  bool five_grading(const RootSystem& s) const {
    for (int a = 0; a < s.size(); ++a)
      if (std::abs((*this)(s, a)) > 2) return false;
    return true;
  }
  bool reaches_two(const RootSystem& s) const {
    for (int a = 0; a < s.size(); ++a)
      if ((*this)(s, a) == 2) return true;
    return false;
  }
  std::string str() const {
    std::string out = "f(";
    for (std::size_t k = 0; k < simple_values.size(); ++k) out += (k ? "," : "") + std::to_string(simple_values[k]);
    return out + ")";
  }
};

/// Every 5-grading with a root of value 2, values on simple roots in -2..2.
inline std::vector<Grading> all_gradings(const RootSystem& s) {
  std::vector<Grading> out;
  std::vector<int> v(s.rank(), -2);
  while (true) {
    Grading f{v};
    if (f.five_grading(s) && f.reaches_two(s)) out.push_back(f);
    int k = 0;
    while (k < s.rank() && ++v[k] > 2) v[k++] = -2;
    if (k == s.rank()) break;
  }
  return out;
}

inline VerificationResult check_urad_cent(Instance& I, const Grading& f) {
  const auto& R = I.R;
  const auto& s = *R.relative;
  if (static_cast<int>(f.simple_values.size()) != s.rank()) throw PreconditionError("grading has the wrong rank");
  if (!f.five_grading(s)) throw PreconditionError("grading takes values outside -2..2");
  if (!f.reaches_two(s)) throw PreconditionError("grading never takes the value 2");
  return timed([&] {
    auto res = I.result("urad-cent", f.str());
    RootSubset ker(R.relative);
    std::vector<RMatrix> pos;
    for (int a = 0; a < s.size(); ++a) {
      const int v = f(s, a);
      ker.members[a] = v == 0;
      if (v > 0)
        for (auto& g : I.X(a)) pos.push_back(g);
    }
    GroupSet H = points_of(R, ker, true, I.opt.cap);
    res.count("levi_part", H.size());
    if (!H.complete) {
      res.outcome = Outcome::Inconclusive;
      res.detail = "G0 of the kernel capped";
      return res;
    }
    GroupSet C = centralizer(R, H, pos);
    compare_sets(res, C, I.center());
    return res;
  });
}

/// Cent^us against |GL_m(K)|, m = n + 1 - 2rd, for the classical ²A rows.
inline VerificationResult check_cent_us_table(Instance& I) {
  const auto& R = I.R;
  if (!R.index.classical || R.index.classical->family != "2A" || letter(R) != "BC" || R.rank() < 2)
    throw UnsupportedError("Cent_us table check covers the 2A rows with BC relative type and r >= 2");
  return timed([&] {
    auto res = I.result("cent-us-table", R.index.name);
    const auto& p = *R.index.classical;
    const int m = p.n + 1 - 2 * p.r * p.d;
    std::size_t gl = 0;
    R.for_each_param(m * m, [&](const std::vector<Elem>& v) {
      RMatrix x(m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) x(i, j) = v[i * m + j];
      if (R.ring.is_unit(det(R.ring, x))) ++gl;
    });
    const auto& C = I.cent_us();
    res.count("cent_us", C.size());
    res.count("gl_order", gl);
    if (C.size() != gl) res.fail("order differs from GL_" + std::to_string(m), std::nullopt);
    else if (auto g = first_outside(I.center(), C)) res.fail("center not inside Cent_us", g);
    return res;
  });
}

/// ∏_{x} [A, x] in the given order.
inline GroupSet commutator_product(const Realization& R, const GroupSet& A, const std::vector<RMatrix>& xs) {
  GroupSet out = make_set({R.identity()});
  for (const auto& x : xs) out = set_product(R, out, commutator_set(R, A, x));
  return out;
}

/// t_α(X) for the 𝔤_α basis without the 𝔤_{2α} slots.
inline std::vector<RMatrix> lie_generators(const Realization& R, int a) {
  std::vector<RMatrix> out;
  for (const auto& p : R.generators_param(a)) {
    auto q = p;
    q.resize(R.param_count(a), R.ring.zero());
    out.push_back(R.t(a, q));
  }
  return out;
}

/// Signed ε-index of a root coordinate vector with one nonzero entry.
inline std::optional<int> eps_root(const RootSystem& s, int idx, int sign, int scale) {
  IntVec v(s.dim(), 0);
  v[idx] = sign * scale;
  return root_from_coords(s, v);
}
inline std::optional<int> eps_pair(const RootSystem& s, int i, int si, int j, int sj) {
  IntVec v(s.dim(), 0);
  v[i] += 2 * si;
  v[j] += 2 * sj;
  return root_from_coords(s, v);
}

/// Every displayed set identity of the Diophantine argument that applies.
inline std::vector<VerificationResult> check_diophantine_identities(Instance& I) {
  const auto& R = I.R;
  require_rank2(R);
  const auto& s = *R.relative;
  const std::string L = letter(R);
  const bool cbc = L == "C" || L == "BC";
  std::vector<VerificationResult> out;
  auto& Z = I.center();
  auto CU = [&](int a) { return set_product(R, Z, I.U(a)); };

  std::vector<int> longs;
  for (int a = 0; a < s.size(); ++a)
    if (s.length(a) == Length::Long) longs.push_back(a);

  // Cent(G) = Cent U_α ∩ Cent U_{-α}
  for (int a : longs)
    out.push_back(timed([&] {
      auto res = I.result("diophantine", "center-as-intersection " + root_label(s, a));
      compare_sets(res, intersect(CU(a), CU(s.neg(a))), Z);
      return res;
    }));

  // normalizer of t_α(X) modulo the center is the parabolic
  std::vector<GroupSet> parabolics;
  for (int a : longs)
    out.push_back(timed([&] {
      auto res = I.result("diophantine", "parabolic-mod-center " + root_label(s, a));
      const auto xs = lie_generators(R, a);
      GroupSet target = CU(a);
      auto P = points_of(R, half_space(s, R.relative, a), true, I.opt.cap);
      compare_filter(I, res, [&](const RMatrix& g) { return conj_into(R, g, xs, [&](const RMatrix& m) { return target.contains(m); }); }, P);
      parabolics.push_back(std::move(P));
      return res;
    }));
  out.push_back(timed([&] {
    auto res = I.result("diophantine", "levi-as-intersection");
    GroupSet acc = parabolics.at(0);
    for (std::size_t k = 1; k < parabolics.size(); ++k) acc = intersect(acc, parabolics[k]);
    compare_sets(res, acc, I.L());
    return res;
  }));

  // long α outside C/BC: U_α = ∏_x [Cent U_β, t_{α-β}(x)], β long at angle π/3
  if (!cbc)
    for (int a : longs)
      for (int b : longs) {
        if (2 * s.dot(a, b) != s.norm2(a)) continue;
        auto d = s.find(s.root(a) - s.root(b));
        if (!d) continue;
        out.push_back(timed([&] {
          auto res = I.result("diophantine", "long-commutator " + root_label(s, a) + " via " + root_label(s, b));
          compare_sets(res, commutator_product(R, CU(b), lie_generators(R, *d)), I.U(a));
          return res;
        }));
      }

  // B_ℓ (ℓ ≥ 3), short e_i: U = Cent U ∩ U_{e_i+e_j} ∏_x [Cent U_{e_j}, t_{e_i-e_j}(x)]
  if (L == "B" && s.rank() >= 3)
    for (int a = 0; a < s.size(); ++a) {
      if (s.length(a) != Length::Short) continue;
      for (int b = 0; b < s.size(); ++b) {
        if (s.length(b) != Length::Short || s.dot(a, b) != 0) continue;
        auto ij = s.sum(a, b);
        auto imj = s.find(s.root(a) - s.root(b));
        if (!ij || !imj) continue;
        out.push_back(timed([&] {
          auto res = I.result("diophantine", "b-short " + root_label(s, a) + " via " + root_label(s, b));
          GroupSet rhs = intersect(CU(a), set_product(R, I.U(*ij), commutator_product(R, CU(b), lie_generators(R, *imj))));
          compare_sets(res, rhs, I.U(a));
          return res;
        }));
      }
    }

  // pairs of signed indices (i, j), i ≠ ±j, for the C/BC displays
  struct Signed {
    int k, sg;
  };
  std::vector<std::pair<Signed, Signed>> ij;
  if (cbc)
    for (int i = 0; i < s.rank(); ++i)
      for (int j = 0; j < s.rank(); ++j)
        if (i != j)
          for (int si : {1, -1})
            for (int sj : {1, -1}) ij.push_back({{i, si}, {j, sj}});
  auto two_e = [&](Signed a) { return *eps_root(s, a.k, a.sg, 4); };
  auto e_pair = [&](Signed a, Signed b) { return *eps_pair(s, a.k, a.sg, b.k, b.sg); };
  auto e_one = [&](Signed a) { return *eps_root(s, a.k, a.sg, 2); };
  auto tag = [](Signed a) { return std::string(a.sg < 0 ? "-" : "") + "e" + std::to_string(a.k + 1); };

  if (cbc && s.rank() >= 3) {
    for (auto [i, j] : ij)
      for (int k = 0; k < s.rank(); ++k) {
        if (k == i.k || k == j.k) continue;
        for (int sk : {1, -1}) {
          Signed kk{k, sk};
          out.push_back(timed([&] {
            auto res = I.result("diophantine", "c-short " + tag(i) + "," + tag(j) + "," + tag(kk));
            GroupSet A = set_product(R, Z, set_product(R, I.U(two_e(j)), set_product(R, I.U(e_pair(j, kk)), I.U(two_e(kk)))));
            const auto X = lie_generators(R, e_pair(i, {j.k, -j.sg}));
            const auto X2 = lie_generators(R, e_pair(j, {k, -sk}));
            GroupSet prod = make_set({R.identity()});
            for (const auto& x : X)
              for (const auto& x2 : X2) {
                GroupSet inner = commutator_set(R, A, x);
                prod = set_product(R, prod, commutator_set(R, inner, x2));
              }
            compare_sets(res, prod, I.U(e_pair(i, j)));
            return res;
          }));
        }
      }
    for (auto [i, j] : ij)
      out.push_back(timed([&] {
        auto res = I.result("diophantine", "c-long " + tag(i) + " via " + tag(j));
        GroupSet rhs = intersect(CU(two_e(i)), set_product(R, I.U(e_pair(i, j)),
                                                           commutator_product(R, CU(two_e(j)), lie_generators(R, e_pair(i, {j.k, -j.sg})))));
        compare_sets(res, rhs, I.U(two_e(i)));
        return res;
      }));
    if (L == "BC")
      for (auto [i, j] : ij)
        out.push_back(timed([&] {
          auto res = I.result("diophantine", "bc-ultrashort " + tag(i) + " via " + tag(j));
          const int mij = e_pair(i, {j.k, -j.sg});
          GroupSet cu = set_product(R, I.cent_us(), I.U(e_one(i)));
          GroupSet rhs = intersect(cu, set_product(R, I.U(mij), set_product(R, I.U(e_pair(i, j)),
                                                                                commutator_product(R, set_product(R, I.cent_us(), I.U(e_one(j))), lie_generators(R, mij)))));
          compare_sets(res, rhs, I.U(e_one(i)));
          return res;
        }));
  }

  if (cbc && s.rank() == 2) {
    if (L == "BC")
      for (int k = 0; k < 2; ++k)
        for (int sg : {1, -1}) {
          Signed i{k, sg};
          out.push_back(timed([&] {
            auto res = I.result("diophantine", "bc2-ultrashort " + tag(i));
            const int a = e_one(i);
            GroupSet target = CU(two_e(i));
            const auto xs = I.X(a);
            GroupSet cand = set_product(R, I.cent_us(), I.U(a));
            GroupSet lhs("filtered");
            for (const auto& g : cand) {
              bool ok = true;
              for (const auto& x : xs)
                if (!target.contains(R.comm(g, x))) {
                  ok = false;
                  break;
                }
              if (ok) lhs.insert(g);
            }
            compare_sets(res, lhs, CU(a));
            return res;
          }));
        }
    for (auto [i, j] : ij)
      out.push_back(timed([&] {
        auto res = I.result("diophantine", "c2-pair " + tag(i) + "," + tag(j));
        const int a = e_pair(i, j);
        GroupSet left = set_product(R, CU(two_e(i)), I.U(a));
        GroupSet big = set_product(R, CU(two_e(i)), set_product(R, I.U(a), I.U(two_e(j))));
        GroupSet right = set_product(R, CU(two_e(i)), commutator_product(R, big, lie_generators(R, e_pair(i, {j.k, -j.sg}))));
        compare_sets(res, left, right);
        return res;
      }));
    for (auto [i, j] : ij) {
      if (i.k > j.k) continue;
      out.push_back(timed([&] {
        auto res = I.result("diophantine", "c2-short-intersection " + tag(i) + "," + tag(j));
        const int a = e_pair(i, j);
        GroupSet left = intersect(set_product(R, CU(two_e(i)), I.U(a)), set_product(R, CU(two_e(j)), I.U(a)));
        compare_sets(res, left, CU(a));
        return res;
      }));
    }
  }
  return out;
}

inline VerificationResult check_gauss(Instance& I, bool all_closed = true) {
  return timed([&] {
    auto res = I.result("gauss", all_closed ? "all closed subsets" : "whole group");
    res.mode = Mode::Exhaustive;
    auto rep = gauss_check(I.R, all_closed, I.opt.cap);
    res.count("group", rep.group_order);
    res.count("subsets", rep.subsets_checked);
    if (!rep.ok) {
      std::string f;
      for (const auto& x : rep.failures) f += x + " ";
      res.fail("decomposition fails for " + f, std::nullopt);
    }
    return res;
  });
}

inline VerificationResult check_subgroup_intersections(Instance& I) {
  return timed([&] {
    auto res = I.result("subgr-int", "all closed pairs");
    res.mode = Mode::Exhaustive;
    const auto sys = I.R.relative;
    std::size_t n = 0;
    const auto closed = enumerate_closed(*sys);
    for (auto m : closed)
      for (auto m2 : closed) {
        auto s = RootSubset::from_mask(sys, m), t = RootSubset::from_mask(sys, m2);
        if (!is_saturated(t) && !is_unipotent(t)) continue;
        ++n;
        if (!subgroup_intersection_check(I.R, s, t, I.opt.cap)) {
          res.count("pairs", n);
          res.fail("intersection identity fails for " + subset_label(s) + " and " + subset_label(t), std::nullopt);
          return res;
        }
      }
    res.count("pairs", n);
    return res;
  });
}

inline const std::vector<std::string>& theorem_names() {
  static const std::vector<std::string> v{"gauss",     "subgr-int",   "long-norm",  "dbl-centzer",
                                          "cent-norm", "urad-cent",   "diophantine", "cent-us-table"};
  return v;
}

/// All applicable instances of one statement on a realization.
inline std::vector<VerificationResult> run_theorem(Instance& I, const std::string& thm) {
  const auto& s = *I.R.relative;
  std::vector<VerificationResult> out;
  if (thm == "gauss") {
    out.push_back(check_gauss(I));
  } else if (thm == "subgr-int") {
    out.push_back(check_subgroup_intersections(I));
  } else if (thm == "long-norm") {
    for (int a = 0; a < s.size(); ++a)
      if (s.length(a) == Length::Long) out.push_back(check_long_norm(I, a));
  } else if (thm == "dbl-centzer") {
    for (int a = 0; a < s.size(); ++a) out.push_back(check_dbl_centzer(I, a));
  } else if (thm == "cent-norm") {
    out = check_cent_norm(I);
  } else if (thm == "urad-cent") {
    for (const auto& f : all_gradings(s)) out.push_back(check_urad_cent(I, f));
  } else if (thm == "diophantine") {
    out = check_diophantine_identities(I);
  } else if (thm == "cent-us-table") {
    out.push_back(check_cent_us_table(I));
  } else {
    throw PreconditionError("unknown theorem " + thm);
  }
  return out;
}

inline bool all_pass(const std::vector<VerificationResult>& v) {
  for (const auto& r : v)
    if (r.outcome != Outcome::Pass) return false;
  return true;
}

}  // namespace iso
