#include <gtest/gtest.h>

#include "isotropic/interpret.hpp"

using namespace iso;

TEST(Interpret, A2OverSmallRings) {
  for (auto [ring, order] : {std::pair{"Z2", 2u}, {"Z3", 3u}, {"Z4", 4u}, {"Z5", 5u}, {"Z2xZ3", 6u}}) {
    SCOPED_TRACE(ring);
    auto R = realize("1A(2,2,1)", ring);
    auto kt = build_ktilde(R);
    EXPECT_EQ(kt.size(), order);
    auto rc = certify_ring_iso(kt);
    EXPECT_TRUE(rc.ok()) << rc.detail;
  }
}

TEST(Interpret, ZeroDivisorsInZ4) {
  auto R = realize("1A(2,2,1)", "Z4");
  auto kt = build_ktilde(R);
  auto rc = certify_ring_iso(kt);
  ASSERT_TRUE(rc.ok());
  int two = -1, zero = -1;
  for (std::size_t f = 0; f < kt.size(); ++f) {
    if (kt.scalar[f] == R.ring.from_int(2).v) two = static_cast<int>(f);
    if (kt.scalar[f] == 0) zero = static_cast<int>(f);
  }
  EXPECT_EQ(rc.product_table[two][two], zero);
}

TEST(Interpret, MatrixCoefficientCases) {
  for (auto idx : {"1A(5,2,2)", "C(4,2,2)"}) {
    SCOPED_TRACE(idx);
    auto R = realize(idx, "F2");
    auto kt = build_ktilde(R);
    EXPECT_EQ(kt.size(), 2u);
    EXPECT_TRUE(certify_ring_iso(kt).ok());
  }
}

TEST(Interpret, OtherSplitTypes) {
  for (auto [idx, ring] : {std::pair{"C(2,2,1)", "Z3"}, {"1A(3,3,1)", "Z4"}, {"B(2,2)", "F3"}}) {
    SCOPED_TRACE(std::string(idx) + " " + ring);
    auto R = realize(idx, ring);
    auto kt = build_ktilde(R);
    EXPECT_EQ(static_cast<int>(kt.size()), R.ring.size());
    EXPECT_TRUE(certify_ring_iso(kt).ok());
  }
}

TEST(Interpret, YContainsBrackets) {
  auto R = realize("1A(2,2,1)", "Z3");
  auto kt = build_ktilde(R);
  for (int a = 0; a < R.relative->size(); ++a) {
    EXPECT_GE(kt.Y[a].size(), kt.X[a].size());
    for (const auto& x : kt.X[a]) EXPECT_NE(std::find(kt.Y[a].begin(), kt.Y[a].end(), x), kt.Y[a].end());
  }
}

TEST(Interpret, Preconditions) {
  EXPECT_THROW(build_ktilde(realize("1A(1,1,1)", "Z2")), PreconditionError);
  EXPECT_THROW(build_ktilde(realize("2A(4,2,1)", "F2")), PreconditionError);
  EXPECT_THROW(build_ktilde(realize("1A(2,2,1)", "Z3"), 1), BudgetExceeded);
}
