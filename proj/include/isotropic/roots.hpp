#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "isotropic/errors.hpp"
#include "isotropic/rational.hpp"

namespace iso {

using IntVec = std::vector<int>;
using IntMat = std::vector<std::vector<long long>>;

/// Integer coordinate vector. Standard systems store twice the usual
/// orthonormal coordinates so that E8 and F4 half-integers stay integral.
struct Root {
  IntVec coords;

  friend auto operator<=>(const Root&, const Root&) = default;

  Root operator-() const {
    Root r{coords};
    for (auto& c : r.coords) c = -c;
    return r;
  }
  Root operator+(const Root& o) const {
    Root r{coords};
    for (std::size_t i = 0; i < coords.size(); ++i) r.coords[i] += o.coords[i];
    return r;
  }
  Root operator-(const Root& o) const { return *this + (-o); }
  Root scaled(int k) const {
    Root r{coords};
    for (auto& c : r.coords) c *= k;
    return r;
  }
  bool is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](int c) { return c == 0; });
  }
};

enum class Length { Ultrashort, Short, Long };

inline const char* length_name(Length l) {
  switch (l) {
    case Length::Ultrashort: return "ultrashort";
    case Length::Short: return "short";
    case Length::Long: return "long";
  }
  return "?";
}

/// A finite crystallographic root system, possibly non-reduced.
///
/// Roots are stored in a canonical order: positive roots sorted by height,
/// then the negatives in the same order, so root i and root i + |Φ|/2 are
/// opposite. The inner product is x^T G y for an integer Gram matrix G
/// (identity for the standard constructions).
class RootSystem {
 public:
  RootSystem(std::string type, int rank, std::vector<Root> roots, std::vector<Root> basis,
             IntMat gram = {})
      : type_(std::move(type)), rank_(rank) {
    if (basis.size() != static_cast<std::size_t>(rank))
      throw ConstructionError("basis size differs from rank");
    dim_ = basis.empty() ? (roots.empty() ? 0 : static_cast<int>(roots[0].coords.size()))
                         : static_cast<int>(basis[0].coords.size());
    if (gram.empty()) {
      gram.assign(dim_, std::vector<long long>(dim_, 0));
      for (int i = 0; i < dim_; ++i) gram[i][i] = 1;
    }
    gram_ = std::move(gram);
    init(std::move(roots), basis);
  }

  /// Standard system of the given type and rank in Bourbaki numbering.
  static RootSystem build(std::string_view type, int rank);

  const std::string& type() const { return type_; }
  int rank() const { return rank_; }
  int dim() const { return dim_; }
  int size() const { return static_cast<int>(roots_.size()); }
  int positive_count() const { return size() / 2; }
  const std::vector<Root>& roots() const { return roots_; }
  const Root& root(int i) const { return roots_[i]; }
  const std::vector<int>& basis() const { return basis_; }
  const IntMat& gram() const { return gram_; }

  std::optional<int> find(const Root& r) const {
    auto it = lookup_.find(r.coords);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const Root& r) const { return lookup_.count(r.coords) > 0; }

  long long dot(const Root& a, const Root& b) const {
    long long s = 0;
    for (int i = 0; i < dim_; ++i) {
      if (a.coords[i] == 0) continue;
      for (int j = 0; j < dim_; ++j) s += a.coords[i] * gram_[i][j] * b.coords[j];
    }
    return s;
  }
  long long dot(int a, int b) const { return dot(roots_[a], roots_[b]); }
  long long norm2(int a) const { return norms_[a]; }

  /// 2(a·b)/(b·b).
  int cartan(const Root& a, const Root& b) const {
    const long long bb = dot(b, b);
    if (bb == 0) throw PreconditionError("cartan integer with zero vector");
    const long long num = 2 * dot(a, b);
    if (num % bb != 0) throw InternalError("non-integral cartan integer");
    return static_cast<int>(num / bb);
  }
  int cartan(int a, int b) const { return cartan(roots_[a], roots_[b]); }

  /// Reflection of b in the hyperplane orthogonal to a.
  Root reflect(const Root& a, const Root& b) const {
    Root r = b - a.scaled(cartan(b, a));
    if (!contains(r)) throw InternalError("reflection left the root set");
    return r;
  }
  int reflect(int a, int b) const { return *find(reflect(roots_[a], roots_[b])); }

  Length length(int i) const { return lengths_[i]; }
  const IntVec& simple_coords(int i) const { return simple_[i]; }
  int height(int i) const {
    return std::accumulate(simple_[i].begin(), simple_[i].end(), 0);
  }
  bool positive(int i) const { return i < positive_count(); }
  int neg(int i) const { return positive(i) ? i + positive_count() : i - positive_count(); }
  bool reduced() const { return reduced_; }

  std::optional<int> sum(int i, int j) const { return find(roots_[i] + roots_[j]); }

  /// Root with the given simple coordinates, if any.
  std::optional<int> from_simple(const IntVec& c) const {
    Root r{IntVec(dim_, 0)};
    for (int k = 0; k < rank_; ++k)
      if (c[k] != 0) r = r + roots_[basis_[k]].scaled(c[k]);
    return find(r);
  }

  /// Closure of a set of root indices under the simple reflections.
  std::vector<int> weyl_orbit(const std::vector<int>& seed) const {
    std::set<int> seen(seed.begin(), seed.end());
    std::vector<int> todo(seen.begin(), seen.end());
    while (!todo.empty()) {
      int b = todo.back();
      todo.pop_back();
      for (int a : basis_) {
        int r = reflect(a, b);
        if (seen.insert(r).second) todo.push_back(r);
      }
    }
    return {seen.begin(), seen.end()};
  }

  /// Simple reflections as permutations of root indices.
  std::vector<std::vector<int>> simple_reflections() const {
    std::vector<std::vector<int>> out;
    for (int a : basis_) {
      std::vector<int> p(size());
      for (int b = 0; b < size(); ++b) p[b] = reflect(a, b);
      out.push_back(std::move(p));
    }
    return out;
  }

  /// Cartan matrix of the basis, entry (i,j) = cartan(α_i, α_j).
  std::vector<std::vector<int>> cartan_matrix() const {
    std::vector<std::vector<int>> c(rank_, std::vector<int>(rank_));
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j) c[i][j] = cartan(basis_[i], basis_[j]);
    return c;
  }

  /// Number of roots in each length class.
  int count(Length l) const {
    return static_cast<int>(std::count(lengths_.begin(), lengths_.end(), l));
  }

 private:
  void init(std::vector<Root> roots, const std::vector<Root>& basis_vectors);

  std::string type_;
  int rank_ = 0;
  int dim_ = 0;
  IntMat gram_;
  std::vector<Root> roots_;
  std::vector<int> basis_;
  std::vector<IntVec> simple_;
  std::vector<Length> lengths_;
  std::vector<long long> norms_;
  std::map<IntVec, int> lookup_;
  bool reduced_ = true;
};

inline void RootSystem::init(std::vector<Root> roots, const std::vector<Root>& basis_vectors) {
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  for (const auto& r : roots) {
    if (r.is_zero()) throw ConstructionError("zero vector in root set");
    if (!std::binary_search(roots.begin(), roots.end(), -r))
      throw ConstructionError("root set not closed under negation");
  }
  // simple coordinates: c = (B^T G B)^{-1} B^T G x
  RMat bt(rank_, RVec(dim_));
  for (int k = 0; k < rank_; ++k)
    for (int i = 0; i < dim_; ++i) bt[k][i] = basis_vectors[k].coords[i];
  RMat g(dim_, RVec(dim_));
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) g[i][j] = gram_[i][j];
  RMat btg = rat_mul(bt, g);
  auto inv = rat_inverse(rat_mul(btg, rat_transpose(bt)));
  if (!inv) throw ConstructionError("basis is linearly dependent");
  RMat solve = rat_mul(*inv, btg);

  struct Entry {
    Root r;
    IntVec c;
    int h;
  };
  std::vector<Entry> pos;
  for (const auto& r : roots) {
    IntVec c(rank_);
    for (int k = 0; k < rank_; ++k) {
      Rational s = 0;
      for (int i = 0; i < dim_; ++i) s += solve[k][i] * r.coords[i];
      if (s.denominator() != 1) throw ConstructionError("root not an integer combination of the basis");
      c[k] = static_cast<int>(s.numerator());
    }
    Root back{IntVec(dim_, 0)};
    for (int k = 0; k < rank_; ++k) back = back + basis_vectors[k].scaled(c[k]);
    if (back != r) throw ConstructionError("root outside the span of the basis");
    const bool nonneg = std::all_of(c.begin(), c.end(), [](int v) { return v >= 0; });
    const bool nonpos = std::all_of(c.begin(), c.end(), [](int v) { return v <= 0; });
    if (!nonneg && !nonpos) throw ConstructionError("root with mixed-sign simple coordinates");
    if (nonneg) pos.push_back({r, c, std::accumulate(c.begin(), c.end(), 0)});
  }
  std::sort(pos.begin(), pos.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.h, a.c) < std::tie(b.h, b.c);
  });
  if (pos.size() * 2 != roots.size()) throw ConstructionError("positive roots are not half the roots");
  for (const auto& e : pos) {
    roots_.push_back(e.r);
    simple_.push_back(e.c);
  }
  for (const auto& e : pos) {
    roots_.push_back(-e.r);
    IntVec c = e.c;
    for (auto& v : c) v = -v;
    simple_.push_back(c);
  }
  for (int i = 0; i < size(); ++i) lookup_[roots_[i].coords] = i;
  for (const auto& b : basis_vectors) {
    auto idx = find(b);
    if (!idx) throw ConstructionError("basis vector is not a root");
    basis_.push_back(*idx);
  }
  std::set<long long> norm_set;
  for (int i = 0; i < size(); ++i) {
    norms_.push_back(dot(roots_[i], roots_[i]));
    norm_set.insert(norms_.back());
    if (contains(roots_[i].scaled(2))) reduced_ = false;
  }
  std::vector<long long> levels(norm_set.begin(), norm_set.end());
  std::vector<Length> names;
  if (levels.size() == 1) names = {Length::Long};
  else if (levels.size() == 2) names = reduced_ ? std::vector{Length::Short, Length::Long}
                                                 : std::vector{Length::Ultrashort, Length::Long};
  else if (levels.size() == 3) names = {Length::Ultrashort, Length::Short, Length::Long};
  else if (!levels.empty()) throw ConstructionError("more than three root lengths");
  for (int i = 0; i < size(); ++i) {
    auto k = std::lower_bound(levels.begin(), levels.end(), norms_[i]) - levels.begin();
    lengths_.push_back(names[k]);
  }
}

namespace detail {

inline Root unit(int dim, std::initializer_list<std::pair<int, int>> entries) {
  Root r{IntVec(dim, 0)};
  for (auto [i, v] : entries) r.coords[i] += v;
  return r;
}

inline std::vector<Root> e8_roots() {
  std::vector<Root> out;
  for (int i = 0; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j)
      for (int si : {-2, 2})
        for (int sj : {-2, 2}) out.push_back(unit(8, {{i, si}, {j, sj}}));
  for (int mask = 0; mask < 256; ++mask) {
    if (__builtin_popcount(mask) % 2) continue;
    Root r{IntVec(8)};
    for (int i = 0; i < 8; ++i) r.coords[i] = (mask >> i & 1) ? -1 : 1;
    out.push_back(r);
  }
  return out;
}

inline std::vector<Root> e8_basis() {
  std::vector<Root> b;
  b.push_back(Root{{1, -1, -1, -1, -1, -1, -1, 1}});
  b.push_back(unit(8, {{0, 2}, {1, 2}}));
  for (int k = 0; k < 6; ++k) b.push_back(unit(8, {{k, -2}, {k + 1, 2}}));
  return b;
}

}  // namespace detail

inline RootSystem RootSystem::build(std::string_view type, int rank) {
  using detail::unit;
  const std::string t(type);
  auto bad = [&] {
    return ConstructionError("invalid root system " + t + "_" + std::to_string(rank));
  };
  if (rank < 1) throw bad();
  std::vector<Root> roots, basis;
  if (t == "A") {
    const int dim = rank + 1;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        if (i != j) roots.push_back(unit(dim, {{i, 2}, {j, -2}}));
    for (int k = 0; k < rank; ++k) basis.push_back(unit(dim, {{k, 2}, {k + 1, -2}}));
    return RootSystem(t, rank, roots, basis);
  }
  if (t == "B" || t == "C" || t == "BC" || t == "D") {
    const int dim = rank;
    if (t == "D" && rank < 2) throw bad();
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j)
        for (int si : {-2, 2})
          for (int sj : {-2, 2}) roots.push_back(unit(dim, {{i, si}, {j, sj}}));
    for (int i = 0; i < dim; ++i) {
      if (t == "B" || t == "BC") {
        roots.push_back(unit(dim, {{i, 2}}));
        roots.push_back(unit(dim, {{i, -2}}));
      }
      if (t == "C" || t == "BC") {
        roots.push_back(unit(dim, {{i, 4}}));
        roots.push_back(unit(dim, {{i, -4}}));
      }
    }
    for (int k = 0; k + 1 < rank; ++k) basis.push_back(unit(dim, {{k, 2}, {k + 1, -2}}));
    if (t == "C") basis.push_back(unit(dim, {{rank - 1, 4}}));
    else if (t == "D") basis.push_back(unit(dim, {{rank - 2, 2}, {rank - 1, 2}}));
    else basis.push_back(unit(dim, {{rank - 1, 2}}));
    return RootSystem(t, rank, roots, basis);
  }
  if (t == "E") {
    if (rank < 6 || rank > 8) throw bad();
    RootSystem e8("E", 8, detail::e8_roots(), detail::e8_basis());
    if (rank == 8) return e8;
    for (int i = 0; i < e8.size(); ++i) {
      const auto& c = e8.simple_coords(i);
      bool keep = true;
      for (int k = rank; k < 8; ++k) keep = keep && c[k] == 0;
      if (keep) roots.push_back(e8.root(i));
    }
    auto b8 = detail::e8_basis();
    basis.assign(b8.begin(), b8.begin() + rank);
    return RootSystem(t, rank, roots, basis);
  }
  if (t == "F") {
    if (rank != 4) throw bad();
    for (int i = 0; i < 4; ++i) {
      roots.push_back(unit(4, {{i, 2}}));
      roots.push_back(unit(4, {{i, -2}}));
      for (int j = i + 1; j < 4; ++j)
        for (int si : {-2, 2})
          for (int sj : {-2, 2}) roots.push_back(unit(4, {{i, si}, {j, sj}}));
    }
    for (int mask = 0; mask < 16; ++mask) {
      Root r{IntVec(4)};
      for (int i = 0; i < 4; ++i) r.coords[i] = (mask >> i & 1) ? -1 : 1;
      roots.push_back(r);
    }
    basis = {unit(4, {{1, 2}, {2, -2}}), unit(4, {{2, 2}, {3, -2}}), unit(4, {{3, 2}}),
             Root{{1, -1, -1, -1}}};
    return RootSystem(t, rank, roots, basis);
  }
  if (t == "G") {
    if (rank != 2) throw bad();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (i == j) continue;
        roots.push_back(unit(3, {{i, 2}, {j, -2}}));
        const int k = 3 - i - j;
        roots.push_back(unit(3, {{i, 4}, {j, -2}, {k, -2}}));
        roots.push_back(unit(3, {{i, -4}, {j, 2}, {k, 2}}));
      }
    basis = {unit(3, {{0, 2}, {1, -2}}), unit(3, {{0, -4}, {1, 2}, {2, 2}})};
    return RootSystem(t, rank, roots, basis);
  }
  throw bad();
}

/// Shared cache of standard systems; building E8 repeatedly is wasteful.
inline std::shared_ptr<const RootSystem> standard_system(std::string_view type, int rank) {
  static std::mutex mu;
  static std::map<std::pair<std::string, int>, std::shared_ptr<const RootSystem>> cache;
  std::lock_guard lock(mu);
  auto key = std::make_pair(std::string(type), rank);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto sys = std::make_shared<const RootSystem>(RootSystem::build(type, rank));
  cache.emplace(key, sys);
  return sys;
}

/// 2(a·b)/(b·b) for standard orthonormal coordinates.
inline int cartan_integer(const Root& a, const Root& b) {
  long long ab = 0, bb = 0;
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    ab += 1LL * a.coords[i] * b.coords[i];
    bb += 1LL * b.coords[i] * b.coords[i];
  }
  if (bb == 0) throw PreconditionError("cartan integer with zero vector");
  if ((2 * ab) % bb != 0) throw InternalError("non-integral cartan integer");
  return static_cast<int>(2 * ab / bb);
}

/// b - cartan_integer(b, a)·a in standard coordinates.
inline Root reflect(const Root& a, const Root& b) { return b - a.scaled(cartan_integer(b, a)); }

// ---------------------------------------------------------------------------
// Dynkin types

/// An irreducible type such as ("C", 2).
struct DynkinType {
  std::string letter;
  int rank = 0;
  friend auto operator<=>(const DynkinType&, const DynkinType&) = default;
};

inline int letter_order(const std::string& l) {
  static const std::vector<std::string> order = {"A", "B", "C", "D", "E", "F", "G", "BC"};
  auto it = std::find(order.begin(), order.end(), l);
  return static_cast<int>(it - order.begin());
}

/// Multiset of irreducible components, normalized through the small-rank
/// coincidences (B1 = C1 = A1, B2 = C2, D2 = 2A1, D3 = A3) and with the
/// empty ranks dropped.
class CompositeType {
 public:
  CompositeType() = default;
  CompositeType& add(const std::string& letter, int rank, int times = 1) {
    for (int i = 0; i < times; ++i) add_one(letter, rank);
    return *this;
  }
  CompositeType& add(const CompositeType& o) {
    for (auto& [t, k] : o.parts_) parts_[t] += k;
    return *this;
  }
  bool empty() const { return parts_.empty(); }
  const std::map<DynkinType, int>& parts() const { return parts_; }
  friend bool operator==(const CompositeType&, const CompositeType&) = default;

  std::string str() const {
    if (parts_.empty()) return "0";
    std::vector<std::pair<DynkinType, int>> v(parts_.begin(), parts_.end());
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
      return std::make_pair(letter_order(a.first.letter), a.first.rank) <
             std::make_pair(letter_order(b.first.letter), b.first.rank);
    });
    std::string s;
    for (auto& [t, k] : v) {
      if (!s.empty()) s += " + ";
      if (k > 1) s += std::to_string(k);
      s += t.letter + "_" + std::to_string(t.rank);
    }
    return s;
  }

 private:
  void add_one(const std::string& letter, int rank) {
    if (letter == "A") {
      if (rank >= 1) ++parts_[{"A", rank}];
    } else if (letter == "B" || letter == "C") {
      if (rank == 1) ++parts_[{"A", 1}];
      else if (rank == 2) ++parts_[{"C", 2}];
      else if (rank >= 3) ++parts_[{letter, rank}];
    } else if (letter == "D") {
      if (rank == 2) parts_[{"A", 1}] += 2;
      else if (rank == 3) ++parts_[{"A", 3}];
      else if (rank >= 4) ++parts_[{"D", rank}];
    } else if (letter == "BC") {
      if (rank >= 1) ++parts_[{"BC", rank}];
    } else if (!letter.empty() && rank >= 1) {
      ++parts_[{letter, rank}];
    }
  }
  std::map<DynkinType, int> parts_;
};

/// Name an irreducible system from its invariants (rank, root count,
/// number of lengths, short count, reducedness).
inline DynkinType classify_irreducible(int rank, int count, bool reduced, int nlengths,
                                       int short_count) {
  const int r = rank, n = count;
  if (!reduced) {
    if (n == 2 * r * (r + 1)) return {"BC", r};
  } else if (nlengths == 1) {
    if (n == r * (r + 1)) return {"A", r};
    if (r >= 4 && n == 2 * r * (r - 1)) return {"D", r};
    if ((r == 6 && n == 72) || (r == 7 && n == 126) || (r == 8 && n == 240)) return {"E", r};
  } else if (nlengths == 2) {
    if (r == 2 && n == 12) return {"G", 2};
    if (r == 4 && n == 48 && short_count == 24) return {"F", 4};
    if (r == 2 && n == 8) return {"C", 2};
    if (n == 2 * r * r && short_count == 2 * r) return {"B", r};
    if (n == 2 * r * r && short_count == 2 * r * (r - 1)) return {"C", r};
  }
  throw InternalError("unrecognized irreducible root system of rank " + std::to_string(r) +
                      " with " + std::to_string(n) + " roots");
}

/// Search for a permutation p with a[p[i]][p[j]] == b[i][j].
inline std::optional<std::vector<int>> match_cartan(const std::vector<std::vector<int>>& a,
                                                    const std::vector<std::vector<int>>& b) {
  const int n = static_cast<int>(a.size());
  if (static_cast<int>(b.size()) != n) return std::nullopt;
  std::vector<int> p(n, -1);
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self, int i) -> bool {
    if (i == n) return true;
    for (int c = 0; c < n; ++c) {
      if (used[c]) continue;
      bool ok = a[c][c] == b[i][i];
      for (int j = 0; j < i && ok; ++j) ok = a[c][p[j]] == b[i][j] && a[p[j]][c] == b[j][i];
      if (!ok) continue;
      used[c] = true;
      p[i] = c;
      if (self(self, i + 1)) return true;
      used[c] = false;
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return p;
}

/// Connected components of the Dynkin diagram restricted to the given
/// simple-root positions (indices into basis()).
inline std::vector<std::vector<int>> dynkin_components(const RootSystem& sys,
                                                       const std::vector<int>& nodes) {
  std::vector<std::vector<int>> comps;
  std::set<int> left(nodes.begin(), nodes.end());
  while (!left.empty()) {
    std::vector<int> comp{*left.begin()};
    left.erase(left.begin());
    for (std::size_t k = 0; k < comp.size(); ++k)
      for (auto it = left.begin(); it != left.end();) {
        if (sys.cartan(sys.basis()[comp[k]], sys.basis()[*it]) != 0) {
          comp.push_back(*it);
          it = left.erase(it);
        } else {
          ++it;
        }
      }
    std::sort(comp.begin(), comp.end());
    comps.push_back(comp);
  }
  return comps;
}

/// Type of the sub-root-system spanned by a set of simple roots. Each
/// component is named by invariants and confirmed by matching its Cartan
/// matrix against the standard one.
inline CompositeType subsystem_type(const RootSystem& sys, const std::vector<int>& nodes) {
  CompositeType out;
  for (const auto& comp : dynkin_components(sys, nodes)) {
    std::set<int> in(comp.begin(), comp.end());
    std::vector<int> members;
    for (int i = 0; i < sys.size(); ++i) {
      const auto& c = sys.simple_coords(i);
      bool ok = true;
      for (int k = 0; k < sys.rank() && ok; ++k) ok = c[k] == 0 || in.count(k);
      if (ok) members.push_back(i);
    }
    std::set<long long> norms;
    bool reduced = true;
    for (int i : members) {
      norms.insert(sys.norm2(i));
      if (sys.contains(sys.root(i).scaled(2))) reduced = false;
    }
    const long long min_norm = norms.empty() ? 0 : *norms.begin();
    int short_count = 0;
    for (int i : members) short_count += sys.norm2(i) == min_norm;
    const int k = static_cast<int>(comp.size());
    DynkinType t = classify_irreducible(k, static_cast<int>(members.size()), reduced,
                                        static_cast<int>(norms.size()), short_count);
    std::vector<std::vector<int>> here(k, std::vector<int>(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        here[i][j] = sys.cartan(sys.basis()[comp[i]], sys.basis()[comp[j]]);
    const std::string ref_letter = t.letter == "BC" ? "B" : t.letter;
    auto ref = standard_system(ref_letter, t.rank)->cartan_matrix();
    if (!match_cartan(here, ref))
      throw InternalError("Cartan matrix does not match " + t.letter + "_" + std::to_string(k));
    out.add(t.letter, t.rank);
  }
  return out;
}

/// Type of a whole (possibly reducible) system.
inline CompositeType system_type(const RootSystem& sys) {
  std::vector<int> all(sys.rank());
  std::iota(all.begin(), all.end(), 0);
  return subsystem_type(sys, all);
}

}  // namespace iso
