#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(ISOTROPIC_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST(Cli, IndexE8Rank1) {
  auto r = run("index 'E_{8,1}^{133}'");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["relative"], "BC_1");
  EXPECT_EQ(j["kernel"], "E_7");
  EXPECT_EQ(j["fibers"], nlohmann::json({56, 1}));
}

TEST(Cli, IndexMatrixCase) {
  auto j = nlohmann::json::parse(run("index '1A(5,2,2)'").out);
  EXPECT_EQ(j["relative"], "A_2");
  EXPECT_EQ(j["fibers"], nlohmann::json({4}));
}

TEST(Cli, VerifyPassesAndIsDeterministic) {
  auto a = run("verify cent-norm --index '1A(2,2,1)' --ring Z4");
  auto b = run("verify cent-norm --index '1A(2,2,1)' --ring Z4");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  auto j = nlohmann::json::parse(a.out);
  ASSERT_EQ(j.size(), 3u);
  for (auto& r : j) EXPECT_EQ(r["outcome"], "pass");
}

TEST(Cli, SampledOutputIsByteIdentical) {
  std::string args = "verify dbl-centzer --index '2A(4,2,1)' --ring F2 --sampled 500 --seed 3 --out ";
  ASSERT_EQ(run(args + "/tmp/iso_cli_a.json").code, 0);
  ASSERT_EQ(run(args + "/tmp/iso_cli_b.json").code, 0);
  auto a = slurp("/tmp/iso_cli_a.json");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp("/tmp/iso_cli_b.json"));
  EXPECT_EQ(nlohmann::json::parse(a)[0]["mode"], "one-sided+sampled");
}

TEST(Cli, SampledDoubleCentralizer) {
  auto r = run("verify dbl-centzer --index '2A(4,2,1)' --ring F2 --sampled 100000 --seed 7");
  ASSERT_EQ(r.code, 0);
  for (auto& x : nlohmann::json::parse(r.out)) EXPECT_EQ(x["outcome"], "pass");
}

TEST(Cli, GaussSmallRing) {
  auto r = run("verify gauss --index '1A(1,1,1)' --ring Z2xZ3");
  EXPECT_EQ(r.code, 0);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("suite").code, 2);
  EXPECT_EQ(run("suite nightly").code, 2);
  EXPECT_EQ(run("verify nonsense --index '1A(2,2,1)' --ring F2").code, 2);
  EXPECT_EQ(run("verify gauss --index '1A(2,2,1)' --ring F4").code, 2);
  EXPECT_EQ(run("verify gauss --index 'X_{9}' --ring F2").code, 2);
  EXPECT_EQ(run("interpret --index '2A(4,2,1)' --ring F2").code, 2);
}

TEST(Cli, InterpretCertifies) {
  auto r = run("interpret --index '1A(2,2,1)' --ring Z4");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["ktilde_size"], 4);
  EXPECT_TRUE(j["pass"].get<bool>());
}

TEST(Cli, QuickSuite) {
  auto r = run("suite quick --workers 2");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["tables"]["passed"], j["tables"]["total"]);
  EXPECT_EQ(run("suite quick --workers 1").out, r.out);
}
