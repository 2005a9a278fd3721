#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "itcat/itfile.hpp"
#include "itcat/sampling.hpp"

using namespace itcat;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(ITCAT_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string error_of(const std::string& text) {
  try {
    parse_it_file(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

const char* kMinimal =
    "category stochastic\n"
    "object D 2\n"
    "arrow a D D\n"
    "1/2 1/2  # fair\n"
    "1/3 2/3\n";

}  // namespace

TEST(ItFile, MinimalStochastic) {
  auto f = parse_it_file(kMinimal);
  EXPECT_EQ(f.monad, MonadTag::probability);
  auto a = f.arrow<ProbabilityMonad>("a");
  EXPECT_EQ(a.rows()[1].weight_of(1) ? *a.rows()[1].weight_of(1) : Rational(0), make_rational(2, 3));
  EXPECT_EQ(f.arrow_decl("a").line, 3u);
}

TEST(ItFile, RowSumMessage) {
  EXPECT_EQ(error_of("category stochastic\nobject D 2\narrow a D D\n1 0\n1/2 1/3\n"),
            "line 5: row 2 of arrow a sums to 5/6, expected 1");
}

TEST(ItFile, EmptyImageSet) {
  EXPECT_NE(error_of(slurp("bad_empty_image.it")).find("empty image set"), std::string::npos);
}

TEST(ItFile, NotNormed) { EXPECT_NE(error_of(slurp("bad_not_normed.it")).find("not normed"), std::string::npos); }

TEST(ItFile, ParseErrorsCarryLineNumbers) {
  EXPECT_EQ(error_of("category stochastic\nobject D two\n"), "line 2: invalid size 'two'");
  EXPECT_EQ(error_of("object D 2\n"), "line 1: the first declaration must be 'category <tag>'");
  EXPECT_EQ(error_of("category sets\n"), "line 1: unknown category 'sets'");
  EXPECT_EQ(error_of("category set\nobject D 2\narrow a D E\n"), "line 3: unknown space 'E'");
  EXPECT_EQ(error_of("category set\nobject D 2\narrow a D D\n1 0\n"), "line 3: arrow a needs 2 rows");
  EXPECT_EQ(error_of("category set\nobject D 2\narrow a D D\n1 0 0\n0 1\n"),
            "line 4: row 1 of arrow a has 3 entries, expected 2");
  EXPECT_EQ(error_of("category stochastic\nobject D 1\narrow a D D\n0.5\n"), "line 4: not a rational: '0.5'");
  EXPECT_EQ(error_of("category set\nobject D 1\nobject D 2\n"), "line 3: name 'D' declared twice");
  EXPECT_EQ(error_of("category linear\nobject D 2\n"), "line 2: linear files declare 'space <name> <dim>'");
  EXPECT_EQ(error_of("category set\nfrobnicate\n"), "line 2: unknown declaration 'frobnicate'");
  EXPECT_EQ(error_of(""), "line 1: missing 'category <tag>'");
}

TEST(ItFile, DeterministicRowsChecked) {
  EXPECT_NE(error_of("category set\nobject D 2\narrow a D D\n1 1\n0 1\n").find("row 1 of arrow a"),
            std::string::npos);
}

TEST(ItFile, ProductSpaces) {
  auto f = parse_it_file(slurp("joint.it"));
  auto h = f.arrow<ProbabilityMonad>("h");
  EXPECT_TRUE(h.dst().is_product());
  EXPECT_EQ(h.dst().left().size(), 2u);
  EXPECT_EQ(h.dst().right().size(), 3u);
  EXPECT_TRUE(h.src().is_terminal());
  EXPECT_EQ(f.space("(X*Y)*X").size(), 12u);
}

TEST(ItFile, LinearArrows) {
  auto f = parse_it_file(slurp("linear.it"));
  EXPECT_TRUE(f.linear());
  auto h = f.linear_arrow("h");
  EXPECT_EQ(h.src_dim(), 0);
  EXPECT_EQ(h.dst_dim(), 2);
  EXPECT_DOUBLE_EQ(f.linear_arrow("sharp").Sigma()(0, 0), 0.5);
  EXPECT_NE(error_of("category linear\nspace X 1\narrow a X X\nA\n1\nSigma\n-1\n").find("positive semidefinite"),
            std::string::npos);
}

TEST(ItFile, CategoryMismatch) {
  auto f = parse_it_file(kMinimal);
  EXPECT_THROW(f.arrow<PowersetMonad>("a"), MismatchError);
  EXPECT_THROW(f.linear_arrow("a"), MismatchError);
  EXPECT_THROW(f.arrow<ProbabilityMonad>("b"), ValidationError);
}

TEST(ItFile, UtilityTables) {
  auto f = parse_it_file(slurp("channel.it"));
  auto p = f.problem<ProbabilityMonad>("guess");
  EXPECT_EQ(p.u(1, 1), 1);
  EXPECT_EQ(p.u(0, 1), 0);
}

TEST(RoundTrip, DataFiles) {
  for (const char* name : {"channel.it", "joint.it", "multivalued.it", "fuzzy.it", "linear.it", "set.it"}) {
    auto f = parse_it_file(slurp(name));
    auto text = serialize(f);
    EXPECT_EQ(parse_it_file(text), f) << name;
    EXPECT_EQ(serialize(parse_it_file(text)), text) << name;
  }
}

TEST(RoundTrip, RandomFiles) {
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    ItFile f;
    f.monad = MonadTag::fuzzy_prod;
    f.objects = {{"A", 1 + rng.below(3)}, {"B", 1 + rng.below(3)}};
    auto A = f.space("A"), B = f.space("A*B");
    auto a = random_arrow<FuzzyProdMonad>(rng, A, B);
    f.arrows.push_back({"a", "A", "A*B", dense_rows(a), {}, {}, 0});
    auto g = parse_it_file(serialize(f));
    EXPECT_EQ(g, f);
    EXPECT_EQ(g.arrow<FuzzyProdMonad>("a"), a);
  }
}

TEST(RoundTrip, LinearDoublesExact) {
  Rng rng(2);
  ItFile f;
  f.objects = {{"X", 2}, {"Y", 3}};
  auto a = random_linear(rng, 2, 3);
  f.arrows.push_back({"a", "X", "Y", {}, a.A(), a.Sigma(), 0});
  auto g = parse_it_file(serialize(f));
  EXPECT_EQ(g, f);
}
