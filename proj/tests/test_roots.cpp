#include <gtest/gtest.h>

#include "isotropic/roots.hpp"

using namespace iso;

namespace {

// Independent count oracle: closure of the basis under reflections.
int closure_count(const RootSystem& sys) {
  std::vector<Root> seen;
  for (int b : sys.basis()) seen.push_back(sys.root(b));
  for (std::size_t k = 0; k < seen.size(); ++k)
    for (int b : sys.basis()) {
      Root r = sys.reflect(sys.root(b), seen[k]);
      if (std::find(seen.begin(), seen.end(), r) == seen.end()) seen.push_back(r);
    }
  return static_cast<int>(seen.size());
}

}  // namespace

TEST(Roots, CountsMatchClosedForms) {
  for (int l = 1; l <= 8; ++l) {
    EXPECT_EQ(RootSystem::build("A", l).size(), l * (l + 1));
    EXPECT_EQ(RootSystem::build("B", l).size(), 2 * l * l);
    EXPECT_EQ(RootSystem::build("C", l).size(), 2 * l * l);
    EXPECT_EQ(RootSystem::build("BC", l).size(), 2 * l * (l + 1));
    if (l >= 2) {
      EXPECT_EQ(RootSystem::build("D", l).size(), 2 * l * (l - 1));
    }
  }
  EXPECT_EQ(RootSystem::build("G", 2).size(), 12);
  EXPECT_EQ(RootSystem::build("F", 4).size(), 48);
  EXPECT_EQ(RootSystem::build("E", 6).size(), 72);
  EXPECT_EQ(RootSystem::build("E", 7).size(), 126);
  EXPECT_EQ(RootSystem::build("E", 8).size(), 240);
}

TEST(Roots, ReducedSystemsAreReflectionClosuresOfTheirBasis) {
  for (auto [t, r] : std::vector<std::pair<std::string, int>>{
           {"A", 4}, {"B", 3}, {"C", 3}, {"D", 4}, {"G", 2}, {"F", 4}, {"E", 6}, {"E", 7}, {"E", 8}})
    EXPECT_EQ(closure_count(RootSystem::build(t, r)), RootSystem::build(t, r).size()) << t << r;
}

TEST(Roots, InvalidPairsThrow) {
  EXPECT_THROW(RootSystem::build("E", 5), ConstructionError);
  EXPECT_THROW(RootSystem::build("F", 3), ConstructionError);
  EXPECT_THROW(RootSystem::build("G", 3), ConstructionError);
  EXPECT_THROW(RootSystem::build("X", 2), ConstructionError);
  EXPECT_THROW(RootSystem::build("A", 0), ConstructionError);
  EXPECT_THROW(RootSystem::build("D", 1), ConstructionError);
}

TEST(Roots, LengthClasses) {
  auto bc2 = RootSystem::build("BC", 2);
  EXPECT_EQ(bc2.count(Length::Ultrashort), 4);
  EXPECT_EQ(bc2.count(Length::Short), 4);
  EXPECT_EQ(bc2.count(Length::Long), 4);
  EXPECT_FALSE(bc2.reduced());
  for (int l = 1; l <= 5; ++l) {
    auto bc = RootSystem::build("BC", l);
    EXPECT_EQ(bc.count(Length::Ultrashort), 2 * l);
    EXPECT_EQ(bc.count(Length::Short), 2 * l * (l - 1));
    EXPECT_EQ(bc.count(Length::Long), 2 * l);
  }
  auto a2 = RootSystem::build("A", 2);
  EXPECT_EQ(a2.count(Length::Long), 6);
  auto g2 = RootSystem::build("G", 2);
  EXPECT_EQ(g2.count(Length::Long), 6);
  EXPECT_EQ(g2.length(g2.basis()[0]), Length::Short);
  EXPECT_EQ(g2.length(g2.basis()[1]), Length::Long);
  auto f4 = RootSystem::build("F", 4);
  EXPECT_EQ(f4.length(f4.basis()[0]), Length::Long);
  EXPECT_EQ(f4.length(f4.basis()[3]), Length::Short);
}

TEST(Roots, CartanExamples) {
  auto a2 = RootSystem::build("A", 2);
  const int a1 = a2.basis()[0], a2i = a2.basis()[1];
  EXPECT_EQ(a2.cartan(a1, a1), 2);
  EXPECT_EQ(a2.cartan(a1, a2i), -1);
  auto s = a2.reflect(a1, a2i);
  EXPECT_EQ(a2.simple_coords(s), (IntVec{1, 1}));
  EXPECT_EQ(a2.reflect(a1, a1), a2.neg(a1));

  Root e1{{2, 0}}, two_e1{{4, 0}};
  EXPECT_EQ(cartan_integer(e1, two_e1), 1);
  EXPECT_EQ(reflect(two_e1, e1), (Root{{-2, 0}}));
  EXPECT_THROW(cartan_integer(e1, Root{{0, 0}}), PreconditionError);
}

TEST(Roots, CartanMatricesOfBasesAreBourbaki) {
  // B3: α2 → α3 double bond with α3 short
  auto b3 = RootSystem::build("B", 3).cartan_matrix();
  EXPECT_EQ(b3[1][2], -2);
  EXPECT_EQ(b3[2][1], -1);
  auto c3 = RootSystem::build("C", 3).cartan_matrix();
  EXPECT_EQ(c3[1][2], -1);
  EXPECT_EQ(c3[2][1], -2);
  // E8 branch node α4 is joined to α2, α3, α5
  auto e8 = RootSystem::build("E", 8).cartan_matrix();
  for (int j : {1, 2, 4}) EXPECT_EQ(e8[3][j], -1);
  EXPECT_EQ(e8[0][2], -1);
  EXPECT_EQ(e8[0][1], 0);
  auto f4 = RootSystem::build("F", 4).cartan_matrix();
  EXPECT_EQ(f4[1][2], -2);
  auto g2 = RootSystem::build("G", 2).cartan_matrix();
  EXPECT_EQ(g2[0][1], -1);
  EXPECT_EQ(g2[1][0], -3);
  auto d4 = RootSystem::build("D", 4).cartan_matrix();
  for (int j : {0, 2, 3}) EXPECT_EQ(d4[1][j], -1);
}

TEST(Roots, ReflectionsPermuteAndPreserveCartan) {
  for (auto [t, r] : std::vector<std::pair<std::string, int>>{
           {"A", 3}, {"BC", 3}, {"G", 2}, {"F", 4}, {"D", 4}, {"C", 3}}) {
    auto sys = RootSystem::build(t, r);
    for (int g = 0; g < sys.size(); ++g) {
      std::vector<bool> hit(sys.size(), false);
      for (int b = 0; b < sys.size(); ++b) hit[sys.reflect(g, b)] = true;
      EXPECT_TRUE(std::all_of(hit.begin(), hit.end(), [](bool x) { return x; }));
      for (int a = 0; a < sys.size(); a += 3)
        for (int b = 0; b < sys.size(); b += 2)
          EXPECT_EQ(sys.cartan(sys.reflect(g, a), sys.reflect(g, b)), sys.cartan(a, b));
    }
  }
}

TEST(Roots, PositivityAndNegation) {
  auto e6 = RootSystem::build("E", 6);
  for (int i = 0; i < e6.size(); ++i) {
    EXPECT_EQ(e6.root(e6.neg(i)), -e6.root(i));
    EXPECT_EQ(e6.positive(i), e6.height(i) > 0);
    EXPECT_EQ(e6.cartan(i, i), 2);
  }
  EXPECT_EQ(e6.positive_count(), 36);
}

TEST(Roots, WeylOrbits) {
  auto g2 = RootSystem::build("G", 2);
  EXPECT_EQ(g2.weyl_orbit({g2.basis()[1]}).size(), 6u);
  EXPECT_TRUE(g2.weyl_orbit({}).empty());
  auto bc2 = RootSystem::build("BC", 2);
  auto e1 = *bc2.find(Root{{2, 0}});
  auto orb = bc2.weyl_orbit({e1});
  EXPECT_EQ(orb.size(), 4u);
  for (int i : orb) EXPECT_EQ(bc2.length(i), Length::Ultrashort);
}

TEST(Roots, SubsystemTypes) {
  auto e8 = RootSystem::build("E", 8);
  EXPECT_EQ(subsystem_type(e8, {0, 1, 2, 3, 4, 5, 6}).str(), "E_7");
  EXPECT_EQ(subsystem_type(e8, {1, 2, 3, 4, 5, 6}).str(), "D_6");
  EXPECT_EQ(subsystem_type(e8, {0, 1, 4, 6}).str(), "4A_1");
  auto f4 = RootSystem::build("F", 4);
  EXPECT_EQ(subsystem_type(f4, {0, 1, 2}).str(), "B_3");
  EXPECT_EQ(subsystem_type(f4, {1, 2, 3}).str(), "C_3");
  EXPECT_EQ(system_type(RootSystem::build("B", 2)).str(), "C_2");
  EXPECT_EQ(system_type(RootSystem::build("D", 3)).str(), "A_3");
  EXPECT_EQ(system_type(RootSystem::build("BC", 3)).str(), "BC_3");
  EXPECT_EQ(subsystem_type(e8, {0, 2, 4, 6}).str(), "2A_1 + A_2");
  EXPECT_EQ(subsystem_type(e8, {}).str(), "0");
}

TEST(Roots, CompositeNormalization) {
  CompositeType t;
  t.add("A", 0, 3).add("D", 2).add("B", 1).add("D", 1).add("C", 0);
  EXPECT_EQ(t.str(), "3A_1");
  CompositeType u;
  u.add("B", 2).add("D", 3).add("A", -1);
  EXPECT_EQ(u.str(), "A_3 + C_2");
}
