#include <gtest/gtest.h>

#include <sstream>

#include "cli_app.hpp"

using namespace chyp;

namespace {
int run(std::vector<std::string> a, std::string* out = nullptr) {
  a.insert(a.begin(), "chyp");
  std::vector<char*> v;
  for (auto& s : a) v.push_back(s.data());
  std::ostringstream o, e;
  int rc = cli::run(int(v.size()), v.data(), o, e);
  if (out) *out = o.str();
  return rc;
}
}  // namespace

TEST(Cli, ParseComplex) {
  EXPECT_EQ(cli::parse_cplx("1.5"), cplx(1.5));
  EXPECT_EQ(cli::parse_cplx("-2i"), cplx(0, -2));
  EXPECT_EQ(cli::parse_cplx("0.3-0.1i"), cplx(0.3, -0.1));
  EXPECT_EQ(cli::parse_cplx("i"), cplx(0, 1));
  EXPECT_EQ(cli::parse_cplx("(0.3,-0.1)"), cplx(0.3, -0.1));
  EXPECT_EQ(cli::parse_cplx("1e-3+2e1i"), cplx(1e-3, 20));
  EXPECT_THROW(cli::parse_cplx("abc"), cli::UsageError);
  EXPECT_THROW(cli::parse_cplx(""), cli::UsageError);
}

TEST(Cli, EvalGamma) {
  std::string out;
  EXPECT_EQ(run({"eval", "gamma", "1", "0"}, &out), 0);
  EXPECT_NE(out.find("i"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}), 2);
  EXPECT_EQ(run({"eval", "gamma", "x", "0"}), 2);
  EXPECT_EQ(run({"eval", "nosuch"}), 2);
  EXPECT_EQ(run({"verify", "nosuch"}), 2);
  EXPECT_EQ(run({"eval", "density", "0", "0.3", "--a", "0.4", "--b", "0.7"}), 0);
  EXPECT_EQ(run({"eval", "density", "0", "0.3i", "--a", "0.4", "--b", "0.7"}), 2);  // off the unitary line
  EXPECT_EQ(run({"eval", "density", "1.5", "0.3"}), 2);
  EXPECT_EQ(run({"eval", "kernel", "1", "2", "3+i", "--a", "0.4", "--b", "0.7"}), 0);
}

TEST(Cli, VerifyIsDeterministic) {
  std::string a, b;
  EXPECT_EQ(run({"verify", "gamma", "--seed", "7"}, &a), 0);
  EXPECT_EQ(run({"verify", "gamma", "--seed", "7"}, &b), 0);
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a.empty());
}
