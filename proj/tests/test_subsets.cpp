#include <random>

#include <gtest/gtest.h>

#include "isotropic/subsets.hpp"

using namespace iso;

namespace {

std::shared_ptr<const RootSystem> sys(const char* t, int r) { return standard_system(t, r); }

int idx(const RootSystem& s, const IntVec& simple) { return *s.from_simple(simple); }

}  // namespace

TEST(Subsets, ClosedExamples) {
  auto a2 = sys("A", 2);
  const int a = idx(*a2, {1, 0}), b = idx(*a2, {0, 1}), ab = idx(*a2, {1, 1});
  EXPECT_TRUE(is_closed(RootSubset(a2, {a, b, ab})));
  EXPECT_FALSE(is_closed(RootSubset(a2, {a, b})));
  EXPECT_TRUE(is_closed(RootSubset(a2)));
  EXPECT_EQ(closure(RootSubset(a2, {a, b})), RootSubset(a2, {a, b, ab}));
  auto c = closure(RootSubset(a2, {a, b}));
  EXPECT_EQ(closure(c), c);
}

TEST(Subsets, ClosureInBC2) {
  auto bc2 = sys("BC", 2);
  const int s = *bc2->find(Root{{2, -2}}), us = *bc2->find(Root{{0, 2}});
  auto c = closure(RootSubset(bc2, {s, us}));
  std::set<Root> got;
  for (int i : c.indices()) got.insert(bc2->root(i));
  std::set<Root> want{Root{{2, -2}}, Root{{0, 2}}, Root{{2, 0}}, Root{{2, 2}}, Root{{4, 0}},
                      Root{{0, 4}}};
  EXPECT_EQ(got, want);
}

TEST(Subsets, ClassifyExamples) {
  auto g2 = sys("G", 2);
  RootSubset longs(g2);
  for (int i = 0; i < g2->size(); ++i) longs.members[i] = g2->length(i) == Length::Long;
  auto c = classify(longs);
  EXPECT_TRUE(c.subsystem);
  EXPECT_FALSE(c.saturated);

  for (auto [t, r] : std::vector<std::pair<const char*, int>>{{"A", 3}, {"BC", 2}, {"G", 2}, {"E", 6}}) {
    auto p = classify(RootSubset::positive(sys(t, r)));
    EXPECT_TRUE(p.parabolic);
    EXPECT_TRUE(p.saturated);
    EXPECT_TRUE(p.unipotent);
  }
  auto e = classify(RootSubset(sys("A", 2)));
  EXPECT_TRUE(e.unipotent && e.saturated && e.subsystem && !e.parabolic);

  auto a2 = sys("A", 2);
  EXPECT_THROW(classify(RootSubset(a2, {idx(*a2, {1, 0}), idx(*a2, {0, 1})})), PreconditionError);
}

TEST(Subsets, Decompose) {
  auto a3 = sys("A", 3);
  auto p = standard_parabolic(a3, 0b001);
  auto [r, u] = decompose(p);
  EXPECT_EQ(r.size(), 2);
  EXPECT_EQ(u.size(), 5);
  EXPECT_EQ(r | u, p);
  EXPECT_TRUE(is_subsystem(r));
  EXPECT_TRUE(is_unipotent(u));
  for (int x : r.indices())
    for (int y : u.indices())
      if (auto s = a3->sum(x, y)) {

        EXPECT_TRUE(u.contains(*s));

      }
  auto all = RootSubset::all(a3);
  EXPECT_EQ(decompose(all).first, all);
  auto pos = RootSubset::positive(a3);
  EXPECT_EQ(decompose(pos).second, pos);
}

// Definitions checked literally on all closed subsets of the small systems,
// including the cone-membership and Weyl-orbit cross-checks.
TEST(Subsets, ExhaustiveRankTwoAndA3) {
  for (auto [t, r] : std::vector<std::pair<const char*, int>>{
           {"A", 1}, {"A", 2}, {"B", 2}, {"C", 2}, {"BC", 1}, {"BC", 2}, {"G", 2}, {"A", 3}}) {
    auto s = sys(t, r);
    auto weyl = weyl_group(*s);
    auto masks = enumerate_closed(*s);
    std::vector<SubsetClass> cls;
    for (auto m : masks) {
      auto sub = RootSubset::from_mask(s, m);
      auto c = classify(sub);
      cls.push_back(c);
      if (c.parabolic) {

        EXPECT_TRUE(c.saturated);

      }
      EXPECT_EQ(c.parabolic, parabolic_by_weyl(sub, weyl)) << t << r << " mask " << m;
      // saturation without shortcuts: every root of Φ checked by the LP
      bool sat = true;
      for (int g = 0; g < s->size() && sat; ++g)
        if (!sub.contains(g) && !sub.indices().empty() && in_cone(*s, sub.indices(), g)) sat = false;
      EXPECT_EQ(c.saturated, sat);
    }
    if (masks.size() > 200) continue;
    for (std::size_t i = 0; i < masks.size(); ++i)
      for (std::size_t j = 0; j < masks.size(); ++j) {
        auto c = classify(RootSubset::from_mask(s, masks[i] & masks[j]));
        if (cls[i].unipotent && cls[j].unipotent) {

          EXPECT_TRUE(c.unipotent);

        }
        if (cls[i].saturated && cls[j].saturated) {

          EXPECT_TRUE(c.saturated);

        }
        if (cls[i].subsystem && cls[j].subsystem) {

          EXPECT_TRUE(c.subsystem);

        }
      }
  }
}

TEST(Subsets, IntersectionsSampledRankThree) {
  std::mt19937_64 rng(5);
  for (auto [t, r] : std::vector<std::pair<const char*, int>>{{"B", 3}, {"C", 3}, {"BC", 3}}) {
    auto s = sys(t, r);
    auto random_closed = [&] {
      RootSubset x(s);
      for (int k = 0; k < 3; ++k) x.members[rng() % s->size()] = true;
      return closure(x);
    };
    for (int trial = 0; trial < 60; ++trial) {
      auto x = random_closed(), y = random_closed();
      auto cx = classify(x), cy = classify(y), cz = classify(x & y);
      if (cx.unipotent && cy.unipotent) {

        EXPECT_TRUE(cz.unipotent);

      }
      if (cx.saturated && cy.saturated) {

        EXPECT_TRUE(cz.saturated);

      }
      if (cx.subsystem && cy.subsystem) {

        EXPECT_TRUE(cz.subsystem);

      }
    }
  }
}

TEST(Subsets, ConeMembership) {
  auto a2 = sys("A", 2);
  const int a = idx(*a2, {1, 0}), b = idx(*a2, {0, 1}), ab = idx(*a2, {1, 1});
  EXPECT_TRUE(in_cone(*a2, {a, b}, ab));
  EXPECT_FALSE(in_cone(*a2, {a, b}, a2->neg(a)));
  EXPECT_TRUE(in_cone(*a2, {a, a2->neg(b)}, idx(*a2, {1, 0})));
}
