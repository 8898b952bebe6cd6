#include <gtest/gtest.h>

#include "isotropic/index.hpp"

using namespace iso;

namespace {

std::string fibers(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += std::to_string(x) + " ";
  return s;
}

}  // namespace

TEST(Index, ParseForms) {
  EXPECT_EQ(parse_index("2A(n=4,r=2,d=1)").J, (std::vector<int>{0, 1, 2, 3}));
  EXPECT_EQ(parse_index("2A(4,2,1)").name, "2A(n=4,r=2,d=1)");
  EXPECT_EQ(parse_index("B(n=3,r=1)").J, (std::vector<int>{0}));
  EXPECT_EQ(parse_index("E_8,2^66").name, "E_{8,2}^{66}");
  EXPECT_THROW(parse_index("1A(n=4,r=2,d=2)"), ParameterError);
  EXPECT_THROW(parse_index("Q(1,1,1)"), ParameterError);
  EXPECT_THROW(parse_index("E_{9,1}^{1}"), ConstructionError);
  EXPECT_THROW(parse_index("C(n=3,r=1,d=3)"), ParameterError);
}

TEST(Index, GammaAndJValidated) {
  auto d4 = standard_system("D", 4);
  EXPECT_THROW(make_index("bad", d4, {{{0, 1, 3, 2}}}, {3}), ConstructionError);
  EXPECT_THROW(make_index("bad", d4, {{{1, 0, 2, 3}}}, {1}), ConstructionError);
  EXPECT_EQ(make_index("ok", d4, {{{2, 1, 3, 0}}, {{0, 1, 3, 2}}}, {2}).gamma.size(), 6u);
}

TEST(Index, DiagramAutomorphismCounts) {
  EXPECT_EQ(diagram_automorphisms(*standard_system("A", 1)).size(), 1u);
  EXPECT_EQ(diagram_automorphisms(*standard_system("A", 4)).size(), 2u);
  EXPECT_EQ(diagram_automorphisms(*standard_system("D", 4)).size(), 6u);
  EXPECT_EQ(diagram_automorphisms(*standard_system("D", 5)).size(), 2u);
  EXPECT_EQ(diagram_automorphisms(*standard_system("E", 6)).size(), 2u);
  EXPECT_EQ(diagram_automorphisms(*standard_system("E", 7)).size(), 1u);
  EXPECT_EQ(diagram_automorphisms(*standard_system("F", 4)).size(), 1u);
}

TEST(Index, FoldExamples) {
  auto fm = fold(make_exceptional("E_{7,2}^{31}"));
  EXPECT_EQ(fm.relative_type().str(), "BC_2");
  EXPECT_EQ(fm.kernel_type().str(), "A_1 + D_4");
  EXPECT_EQ(fm.fiber_sizes(), (std::vector<int>{16, 8, 1}));

  auto c = fold(make_classical("C", 5, 2, 2));
  EXPECT_EQ(c.relative_type().str(), "BC_2");
  EXPECT_EQ(c.fiber_sizes(), (std::vector<int>{4, 4, 3}));

  auto a = fold(make_classical("2A", 6, 2, 1));
  EXPECT_EQ(a.relative_type().str(), "BC_2");
  EXPECT_EQ(a.fiber_sizes(), (std::vector<int>{6, 2, 1}));
}

TEST(Index, FoldInvariantsEverywhere) {
  std::vector<TitsIndex> all;
  for (const auto& row : exceptional_rows()) all.push_back(make_exceptional(row.name));
  for (auto fam : {"1A", "2A", "B", "C", "1D", "2D"})
    for (auto& i : classical_grid(fam, 7)) all.push_back(i);
  for (const auto& idx : all) {
    SCOPED_TRACE(idx.name);
    auto fm = fold(idx);
    int total = static_cast<int>(fm.kernel.size());
    for (const auto& f : fm.fibers) total += static_cast<int>(f.size());
    EXPECT_EQ(total, idx.base->size());
    EXPECT_EQ(fm.relative->rank(), static_cast<int>(fm.orbits.size()));
    EXPECT_NO_THROW(fm.fiber_sizes());
    // u is additive: u(α+β) = u(α) + u(β) when α+β is a root
    const auto& s = *idx.base;
    for (int x = 0; x < s.size(); x += 3)
      for (int y = 0; y < s.size(); y += 5) {
        auto z = s.sum(x, y);
        if (!z) continue;
        auto px = fm.project(x), py = fm.project(y), pz = fm.project(*z);
        for (std::size_t k = 0; k < pz.size(); ++k) EXPECT_EQ(pz[k], px[k] + py[k]);
      }
  }
}

TEST(Index, ExceptionalTable) {
  EXPECT_EQ(exceptional_rows().size(), 28u);
  for (const auto& row : exceptional_rows()) {
    auto rec = check_index(make_exceptional(row.name));
    EXPECT_TRUE(rec.pass) << rec.index << " rel " << rec.actual_relative << " ker " << rec.actual_kernel
                          << " fib " << fibers(rec.actual_fibers) << " out " << rec.actual_out << " labels "
                          << rec.actual_labels << " (want " << rec.expected_labels << ") " << rec.error;
  }
}

TEST(Index, ClassicalGrids) {
  for (auto fam : {"1A", "2A", "B", "C", "1D", "2D"})
    for (const auto& idx : classical_grid(fam, 8)) {
      auto rec = check_index(idx);
      EXPECT_TRUE(rec.pass) << rec.index << " rel " << rec.actual_relative << " vs " << rec.expected_relative
                            << " ker " << rec.actual_kernel << " vs " << rec.expected_kernel << " fib "
                            << fibers(rec.actual_fibers) << "vs " << fibers(rec.expected_fibers) << rec.error;
      EXPECT_TRUE(rec.out_agrees) << rec.index << " out " << rec.actual_out << " vs " << *rec.expected_out;
    }
}

TEST(Index, OuterAutomorphismExamples) {
  EXPECT_EQ(outer_aut_order(make_classical("1A", 1, 1, 1)), 1);
  EXPECT_EQ(outer_aut_order(make_classical("1A", 5, 1, 3)), 2);
  EXPECT_EQ(outer_aut_order(make_classical("2D", 4, 1, 2)), 6);
  EXPECT_EQ(outer_aut_order(make_classical("1D", 4, 2, 2)), 2);
  EXPECT_EQ(outer_aut_order(make_exceptional("E_{7,1}^{78}")), 1);
  EXPECT_EQ(outer_aut_order(make_exceptional("3D_{4,2}^{2}")), 6);
}

TEST(Index, KnownRelations) {
  for (const auto& rel : known_relations()) {
    SCOPED_TRACE(rel.a + " vs " + rel.b);
    auto a = parse_index(rel.a), b = parse_index(rel.b);
    auto e = equivalent(a, b);
    EXPECT_EQ(e.verdict, Verdict::Yes);
    EXPECT_EQ(equivalent(b, a).verdict, Verdict::Yes);
    if (rel.kind == '=') {
      EXPECT_EQ(isomorphic(a, b).verdict, Verdict::Yes);
    }
  }
}

TEST(Index, EquivalenceWitnessIsValid) {
  auto f1 = fold(make_classical("1D", 4, 1, 2));
  auto f2 = fold(make_exceptional("3D_{4,1}^{9}"));
  auto e = equivalent(f1, f2);
  ASSERT_EQ(e.verdict, Verdict::Yes);
  const auto& s1 = *f1.index.base;
  const auto& s2 = *f2.index.base;
  // extend φ linearly and check u₂φ = ψu₁ on every root
  for (int b = 0; b < s1.size(); ++b) {
    Root v{IntVec(s2.dim(), 0)};
    const auto& c = s1.simple_coords(b);
    for (int i = 0; i < s1.rank(); ++i) v = v + s2.root(e.phi[i]).scaled(c[i]);
    auto pb = s2.find(v);
    ASSERT_TRUE(pb.has_value());
    const int u1 = f1.image[b], u2 = f2.image[*pb];
    if (u1 < 0) {
      EXPECT_LT(u2, 0);
    } else {
      EXPECT_EQ(u2, e.psi[u1]);
    }
  }
}

TEST(Index, NegativeControls) {
  EXPECT_EQ(equivalent(make_classical("1A", 2, 2, 1), make_classical("C", 2, 2, 1)).verdict, Verdict::No);
  EXPECT_EQ(isomorphic(make_classical("1D", 5, 1, 1), make_classical("2D", 5, 1, 1)).verdict, Verdict::No);
  EXPECT_EQ(equivalent(make_classical("1D", 4, 1, 1), make_classical("1D", 4, 1, 2)).verdict, Verdict::No);
  EXPECT_EQ(equivalent(make_classical("B", 3, 1, 1), make_classical("C", 3, 1, 2)).verdict, Verdict::No);
}

TEST(Index, BudgetGivesInconclusive) {
  auto r = equivalent(make_classical("1D", 5, 1, 1), make_classical("2D", 5, 1, 1), 3);
  EXPECT_EQ(r.verdict, Verdict::Inconclusive);
}

TEST(Index, PreimageClassesRankAtMostTwo) {
  std::vector<TitsIndex> all;
  for (const auto& row : exceptional_rows())
    if (row.relative.rank <= 2) all.push_back(make_exceptional(row.name));
  for (auto fam : {"1A", "2A", "B", "C", "1D", "2D"})
    for (auto& i : classical_grid(fam, 6))
      if (i.classical->r <= 2) all.push_back(i);
  for (const auto& idx : all) {
    SCOPED_TRACE(idx.name);
    auto fm = fold(idx);
    for (auto m : enumerate_closed(*fm.relative)) {
      auto s = RootSubset::from_mask(fm.relative, m);
      EXPECT_TRUE(preimage_class_check(fm, s)) << "mask " << m;
    }
  }
}
