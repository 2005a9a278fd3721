#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "itcat/cli.hpp"

using namespace itcat;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(ITCAT_DATA_DIR) + "/" + name; }

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST(Cli, LawsPowersetCard3) {
  auto r = run({"laws", "--category", "powerset", "--max-card", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "PASS: 29/29 laws as expected")) << r.out;
  EXPECT_FALSE(contains(r.out, "FAIL "));
}

TEST(Cli, LawsMachineFormat) {
  auto r = run({"--machine", "laws", "--category", "set", "--max-card", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "identity\tmonad-square\tPASS\tholds\t"));
}

TEST(Cli, LawsSeedFlagAndEnvironment) {
  auto a = run({"laws", "--category", "probability", "--max-card", "2", "--samples", "5", "--seed", "9"});
  EXPECT_TRUE(contains(a.out, "seed=9"));
  ::setenv("ITCAT_SEED", "9", 1);
  auto b = run({"laws", "--category", "probability", "--max-card", "2", "--samples", "5"});
  ::unsetenv("ITCAT_SEED");
  EXPECT_EQ(a.out, b.out);
  ::setenv("ITCAT_SEED", "nine", 1);
  auto c = run({"laws", "--category", "probability", "--max-card", "2"});
  ::unsetenv("ITCAT_SEED");
  EXPECT_EQ(c.code, 2);
}

TEST(Cli, CompareSetIdentityAgainstConstant) {
  auto r = run({"compare", data("set.it"), "id", "const"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "verdict: MORE"));
  EXPECT_TRUE(contains(r.out, "witness D -> C"));
  auto back = run({"compare", data("set.it"), "const", "id"});
  EXPECT_EQ(back.code, 1);
  EXPECT_TRUE(contains(back.out, "verdict: LESS"));
}

TEST(Cli, CompareLinear) {
  auto r = run({"compare", data("linear.it"), "sharp", "a"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "verdict: MORE"));
  EXPECT_TRUE(contains(r.out, "accuracy check: YES"));
}

TEST(Cli, Conditional) {
  auto r = run({"conditional", data("joint.it"), "h", "--wrt", "second"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "0: 1/3 2/3"));
  EXPECT_TRUE(contains(r.out, "joint equation: YES"));
  auto lin = run({"conditional", data("linear.it"), "h", "--wrt", "second"});
  EXPECT_EQ(lin.code, 0);
  EXPECT_TRUE(contains(lin.out, "joint equation: YES"));
}

TEST(Cli, ConditionalUnsupportedCategory) {
  auto r = run({"conditional", data("multivalued.it"), "id", "--wrt", "first"});
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, BayesChannel) {
  auto r = run({"bayes", data("channel.it"), "--prior", "f", "--channel", "a", "--utility", "guess"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "OptPrior == OptPosterior : YES"));
}

TEST(Cli, Classes) {
  auto r = run({"classes", "--category", "set", "--card", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "classes: 5"));
  EXPECT_TRUE(contains(r.out, "properties: all hold"));
  EXPECT_EQ(run({"classes", "--category", "probability", "--card", "2"}).code, 2);
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"laws", "--category", "powerset", "--max-card", "2", "--bogus"}).code, 2);
  EXPECT_EQ(run({"laws", "--category", "nope", "--max-card", "2"}).code, 2);
  EXPECT_EQ(run({"compare", data("missing.it"), "a", "b"}).code, 2);
  auto r = run({"compare", data("bad_row_sum.it"), "a", "a"});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.err, "row 2 of arrow a sums to 5/6, expected 1"));
  EXPECT_TRUE(contains(run({"frobnicate"}).err, "Usage:"));
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run({"--help"}).code, 0); }

TEST(Cli, SameCommandSameBytes) {
  std::vector<std::string> cmd = {"laws", "--category", "fuzzy-min", "--max-card", "2", "--samples", "10"};
  EXPECT_EQ(run(cmd).out, run(cmd).out);
}
