#include <gtest/gtest.h>

#include <unordered_set>

#include "isotropic/realize.hpp"

using namespace iso;

namespace {

bool proportional(const Root& x, const Root& y) {
  for (std::size_t i = 0; i < x.coords.size(); ++i)
    for (std::size_t j = 0; j < x.coords.size(); ++j)
      if (x.coords[i] * y.coords[j] != x.coords[j] * y.coords[i]) return false;
  return true;
}

int root_of(const Realization& R, IntVec coords) { return *R.relative->find(Root{std::move(coords)}); }

std::vector<std::pair<std::string, std::string>> small_models() {
  return {{"1A(2,2,1)", "Z2"}, {"1A(2,2,1)", "Z4"}, {"1A(2,2,1)", "Z2xZ3"}, {"1A(3,3,1)", "F2"},
          {"1A(3,1,2)", "F3"}, {"2A(4,2,1)", "F2"}, {"2A(4,1,1)", "Z3"},   {"2A(3,2,1)", "F3"},
          {"2A(5,2,1)", "F2"}, {"C(2,2,1)", "F2"},  {"C(2,2,1)", "F3"},    {"C(3,1,2)", "F2"},
          {"C(4,2,2)", "F2"},  {"C(3,3,1)", "F3"},  {"B(2,2)", "F3"},      {"B(3,1)", "F3"},
          {"1D(4,2,2)", "F3"}, {"1D(3,1,1)", "F3"}, {"2D(4,1,2)", "F3"},   {"1D(4,2,1)", "F3"}};
}

}  // namespace

TEST(Realize, Shapes) {
  auto sl3 = realize("1A(2,2,1)", "Z2");
  EXPECT_EQ(sl3.N, 3);
  EXPECT_EQ(sl3.relative->size(), 6);
  for (int a = 0; a < 6; ++a) EXPECT_EQ(sl3.root_subgroup(a).size(), 2u);

  auto sp4 = realize("C(2,2,1)", "F2");
  EXPECT_EQ(sp4.N, 4);
  EXPECT_EQ(sp4.kind, GroupKind::Sp);
  EXPECT_EQ(sp4.form[0][3], 1);
  EXPECT_EQ(sp4.form[3][0], -1);

  auto sl5 = realize("2A(4,2,1)", "F2");
  EXPECT_EQ(sl5.N, 5);
  EXPECT_EQ(system_type(*sl5.relative).str(), "BC_2");
  EXPECT_EQ(sl5.blocks.size(), 5u);
}

TEST(Realize, RootSpaceDimensionsMatchFibers) {
  for (auto [name, ring] : small_models()) {
    SCOPED_TRACE(name);
    auto R = realize(name, ring);
    auto fm = fold(R.index);
    // dim 𝔤_α is the fiber size of the length class of α
    std::map<Length, int> dims;
    for (int a = 0; a < R.relative->size(); ++a) {
      auto [it, fresh] = dims.emplace(R.relative->length(a), R.lie_dim(a));
      EXPECT_EQ(it->second, R.lie_dim(a));
    }
    std::vector<int> got;
    for (auto& [l, d] : dims) got.push_back(d);
    EXPECT_EQ(got, fm.fiber_sizes());
  }
}

TEST(Realize, RootElementsLieInTheGroup) {
  for (auto [name, ring] : small_models()) {
    SCOPED_TRACE(name + std::string(" over ") + ring);
    auto R = realize(name, ring);
    for (int a = 0; a < R.relative->size(); ++a)
      for (const auto& g : R.root_subgroup(a)) {
        ASSERT_TRUE(R.in_group(g));
        ASSERT_EQ(R.mul(g, R.inverse(g)), R.identity());
      }
  }
}

TEST(Realize, ParametrizationIsAHomomorphism) {
  for (auto [name, ring] : small_models()) {
    SCOPED_TRACE(name);
    auto R = realize(name, ring);
    for (int a = 0; a < R.relative->size(); ++a) {
      auto pts = R.root_subgroup(a);
      std::unordered_set<RMatrix, RMatrixHash> set(pts.begin(), pts.end());
      EXPECT_EQ(set.size(), pts.size());  // t_α is injective
      EXPECT_EQ(R.t(a, std::vector<Elem>(R.param_count(a), R.ring.zero())), R.identity());
      for (std::size_t i = 0; i < pts.size() && i < 40; ++i)
        for (std::size_t j = 0; j < pts.size() && j < 40; ++j) {
          auto prod = R.mul(pts[i], pts[j]);
          ASSERT_TRUE(set.count(prod));
          if (!R.ultrashort(a)) {
            auto x = *R.log(a, pts[i]), y = *R.log(a, pts[j]);
            for (std::size_t k = 0; k < x.size(); ++k) x[k] = R.ring.add(x[k], y[k]);
            ASSERT_EQ(R.t(a, x), prod);
          }
        }
    }
  }
}

TEST(Realize, ElementaryMatricesInSL3) {
  auto R = realize("1A(2,2,1)", "Z4");
  const int a = root_of(R, {2, -2, 0});
  auto g = R.t(a, {R.ring.from_int(3)});
  RMatrix want = R.identity();
  want(0, 1) = R.ring.from_int(3);
  EXPECT_EQ(g, want);
  const int b = root_of(R, {0, 2, -2});
  auto z = R.bracket(a, {R.ring.from_int(2)}, b, {R.ring.from_int(3)});
  EXPECT_EQ(z, std::vector<Elem>{R.ring.from_int(2)});  // 2·3 = 6 = 2 mod 4
  EXPECT_EQ(R.bracket(a, {R.ring.zero()}, b, {R.ring.one()}), std::vector<Elem>{R.ring.zero()});
  EXPECT_THROW(R.bracket(a, {R.ring.one()}, a, {R.ring.one()}), PreconditionError);
}

TEST(Realize, UltrashortThreeBlockShape) {
  auto R = realize("2A(4,2,1)", "F2");
  const int a = root_of(R, {2, 0});
  ASSERT_TRUE(R.ultrashort(a));
  EXPECT_EQ(R.param_count(a), 3);
  EXPECT_EQ(R.root_subgroup(a).size(), 8u);
  // support: (strip 1, centre), (centre, strip −1), (strip 1, strip −1)
  for (const auto& g : R.root_subgroup(a))
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j)
        if (i != j && g(i, j).v) {
          EXPECT_TRUE((i == 0 && j == 2) || (i == 2 && j == 4) || (i == 0 && j == 4)) << i << "," << j;
        }
}

TEST(Realize, WeylElements) {
  for (auto [name, ring] : small_models()) {
    SCOPED_TRACE(name + std::string(" over ") + ring);
    auto R = realize(name, ring);
    for (int a = 0; a < R.relative->size(); ++a) {
      auto w = R.weyl_element(a);
      EXPECT_TRUE(R.in_group(w));
      auto w2 = R.mul(w, w);
      // w_α² normalizes every root subgroup
      for (int b = 0; b < R.relative->size(); ++b)
        for (const auto& g : R.generators(b)) EXPECT_TRUE(R.in_root_subgroup(b, R.conj(w2, g)));
    }
  }
}

TEST(Realize, WeylElementSetwiseConjugation) {
  auto R = realize("C(2,2,1)", "F3");
  for (int a = 0; a < R.relative->size(); ++a) {
    auto w = R.weyl_element(a);
    for (int b = 0; b < R.relative->size(); ++b) {
      auto src = R.root_subgroup(b);
      auto dst = R.root_subgroup(R.relative->reflect(a, b));
      std::unordered_set<RMatrix, RMatrixHash> want(dst.begin(), dst.end()), got;
      for (const auto& g : src) got.insert(R.conj(w, g));
      EXPECT_EQ(got, want);
    }
  }
}

TEST(Realize, ChevalleyCommutatorContainment) {
  for (auto [name, ring] : std::vector<std::pair<std::string, std::string>>{
           {"1A(2,2,1)", "Z4"}, {"C(2,2,1)", "F3"}, {"2A(4,2,1)", "F2"}, {"B(2,2)", "F3"},
           {"C(5,2,2)", "F2"}, {"1A(3,3,1)", "F2"}}) {
    SCOPED_TRACE(name);
    auto R = realize(name, ring);
    const auto& s = *R.relative;
    for (int a = 0; a < s.size(); ++a)
      for (int b = 0; b < s.size(); ++b) {
        if (proportional(s.root(a), s.root(b))) continue;
        // roots iα + jβ with i, j ≥ 1
        std::vector<int> targets;
        for (int i = 1; i <= 4; ++i)
          for (int j = 1; j <= 4; ++j)
            if (auto c = s.find(s.root(a).scaled(i) + s.root(b).scaled(j))) targets.push_back(*c);
        std::unordered_set<RMatrix, RMatrixHash> H{R.identity()};
        std::vector<RMatrix> todo{R.identity()}, gens;
        for (int c : targets)
          for (const auto& g : R.generators(c)) gens.push_back(g);
        while (!todo.empty()) {
          auto x = todo.back();
          todo.pop_back();
          for (const auto& g : gens) {
            auto y = R.mul(g, x);
            if (H.insert(y).second) todo.push_back(y);
          }
        }
        for (const auto& x : R.root_subgroup(a))
          for (const auto& y : R.root_subgroup(b)) ASSERT_TRUE(H.count(R.comm(x, y)));
      }
  }
}

TEST(Realize, TwoStepAxioms) {
  for (auto [name, ring] : std::vector<std::pair<std::string, std::string>>{
           {"2A(4,2,1)", "F2"}, {"2A(4,1,1)", "Z3"}, {"2A(5,2,1)", "F2"}, {"C(3,1,2)", "F2"},
           {"2A(3,1,1)", "Z4"}, {"1D(4,1,2)", "F3"}}) {
    SCOPED_TRACE(name);
    auto R = realize(name, ring);
    int seen = 0;
    for (int a = 0; a < R.relative->size(); ++a) {
      if (!R.ultrashort(a) || seen == 2) continue;
      ++seen;
      auto rep = check_two_step_axioms(R, a, 50'000);
      EXPECT_TRUE(rep.ok) << rep.failed;
      EXPECT_GT(rep.checks, 0u);
    }
    EXPECT_GT(seen, 0);
  }
  auto sl3 = realize("1A(2,2,1)", "F2");
  EXPECT_THROW(check_two_step_axioms(sl3, 0), PreconditionError);
}

TEST(Realize, NonDegeneracy) {
  for (auto [name, ring] : std::vector<std::pair<std::string, std::string>>{
           {"C(2,2,1)", "F2"}, {"C(2,2,1)", "F3"}, {"B(2,2)", "F3"}, {"C(4,2,2)", "F2"},
           {"1D(4,2,2)", "F3"}, {"2A(7,2,2)", "F2"}, {"2A(4,2,1)", "F2"}, {"1A(2,2,1)", "Z4"}}) {
    SCOPED_TRACE(name);
    auto R = realize(name, ring);
    int tested = 0;
    for (int a = 0; a < R.relative->size(); ++a)
      for (int b = 0; b < R.relative->size(); ++b) {
        if (pair_config(R, a, b) == PairConfig::Other) continue;
        ++tested;
        EXPECT_TRUE(nondegeneracy_check(R, a, b));
      }
    EXPECT_GT(tested, 0);
  }
}

TEST(Realize, LeviPoints) {
  EXPECT_EQ(realize("1A(2,2,1)", "Z4").L_points().size(), 4u);
  EXPECT_EQ(realize("C(2,2,1)", "F3").L_points().size(), 4u);
  EXPECT_EQ(realize("1A(5,2,2)", "F2").L_points().size(), 216u);
  EXPECT_EQ(realize("2A(5,2,1)", "F2").L_points().size(), 6u);
  auto R = realize("C(4,2,2)", "F2");
  for (const auto& g : R.L_points()) {
    EXPECT_TRUE(R.in_L(g));
    EXPECT_TRUE(R.in_L(R.inverse(g)));
  }
}

TEST(Realize, Unsupported) {
  EXPECT_THROW(realize("1D(4,2,2)", "F2"), UnsupportedError);
  EXPECT_THROW(realize("E_{7,1}^{78}", "F2"), UnsupportedError);
  EXPECT_THROW(realize("1A(11,1,6)", "F2"), UnsupportedError);
}
