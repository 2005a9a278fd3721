#include <gtest/gtest.h>

#include "itcat/sampling.hpp"
#include "itcat/space.hpp"

using namespace itcat;

namespace {

DetMap random_map(Rng& rng, const FiniteSpace& a, const FiniteSpace& b) {
  std::vector<std::size_t> t(a.size());
  for (auto& y : t) y = rng.below(b.size());
  return DetMap(a, b, std::move(t));
}

FiniteSpace S(std::size_t n, const char* name = "S") { return FiniteSpace::plain(name, n); }

}  // namespace

TEST(Space, SingletonProduct) {
  auto a = FiniteSpace::plain("A", {"x"});
  auto b = FiniteSpace::plain("B", {"y"});
  auto p = product_space(a, b);
  EXPECT_EQ(p.size(), 1u);
  EXPECT_EQ(p.element(0), "(x,y)");
}

TEST(Space, ProductIsLexicographic) {
  auto p = product_space(FiniteSpace::plain("A", 2), FiniteSpace::plain("B", {"a", "b", "c"}));
  std::vector<std::string> want = {"(0,a)", "(0,b)", "(0,c)", "(1,a)", "(1,b)", "(1,c)"};
  EXPECT_EQ(p.elements(), want);
  EXPECT_EQ(p.pair_index(1, 2), 5u);
  EXPECT_EQ(p.unpair(4), (std::pair<std::size_t, std::size_t>{1, 1}));
}

TEST(Space, TerminalLeftUnitIsBijective) {
  auto a = S(3);
  const FiniteSpace spaces[] = {a};
  auto lambda = canonical_iso(CanonicalIso::lambda, spaces);
  EXPECT_TRUE(lambda.is_bijective());
  EXPECT_EQ(lambda.src(), product_space(FiniteSpace::terminal(), a));
  EXPECT_EQ(lambda.dst(), a);
}

TEST(Space, EmptySpaceRejected) { EXPECT_THROW(FiniteSpace::plain("E", 0), RangeError); }

TEST(Space, DuplicateElementsRejected) { EXPECT_THROW(FiniteSpace::plain("E", {"a", "a"}), ValidationError); }

TEST(DetMap, OutOfRangeEntryRejected) { EXPECT_THROW(DetMap(S(2), S(2), {0, 2}), RangeError); }

TEST(DetCompose, IdentityIsNeutral) {
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    auto f = random_map(rng, S(1 + rng.below(4)), S(1 + rng.below(4), "T"));
    EXPECT_EQ(det_compose(DetMap::identity(f.dst()), f), f);
    EXPECT_EQ(det_compose(f, DetMap::identity(f.src())), f);
  }
}

TEST(DetCompose, SwapIsInvolution) {
  DetMap swap(S(2), S(2), {1, 0});
  EXPECT_EQ(det_compose(swap, swap), DetMap::identity(S(2)));
}

TEST(DetCompose, ThroughConstant) {
  auto b = FiniteSpace::plain("B", {"a", "b"});
  auto c = FiniteSpace::plain("C", {"z"});
  DetMap f(S(2), b, {0, 0});
  DetMap g(b, c, {0, 0});
  EXPECT_EQ(det_compose(g, f), DetMap::constant(S(2), c, 0));
}

TEST(DetProduct, IdentityPairIsDiagonal) {
  auto a = S(3);
  EXPECT_EQ(det_product(DetMap::identity(a), DetMap::identity(a)), diagonal(a));
}

TEST(DetProduct, ConstantsPair) {
  auto u = S(2, "U"), v = S(3, "V");
  auto p = det_product(DetMap::constant(S(2), u, 1), DetMap::constant(S(2), v, 2));
  EXPECT_EQ(p, DetMap::constant(S(2), product_space(u, v), 5));
}

TEST(DetProduct, ProjectionsRecoverFactors) {
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    auto d = S(1 + rng.below(3), "D");
    auto a = random_map(rng, d, S(1 + rng.below(3), "A"));
    auto b = random_map(rng, d, S(1 + rng.below(3), "B"));
    auto ab = det_product(a, b);
    EXPECT_EQ(det_compose(projection_left(a.dst(), b.dst()), ab), a);
    EXPECT_EQ(det_compose(projection_right(a.dst(), b.dst()), ab), b);
  }
}

TEST(CanonicalIso, SwapTwiceIsIdentity) {
  auto a = S(2, "A"), b = S(3, "B");
  EXPECT_EQ(det_compose(swap_map(b, a), swap_map(a, b)), DetMap::identity(product_space(a, b)));
}

TEST(CanonicalIso, AssociatorRegroups) {
  auto a = S(2, "A"), b = S(2, "B"), c = S(3, "C");
  auto alpha = associator(a, b, c);
  auto ab = product_space(a, b), bc = product_space(b, c);
  const std::size_t src = alpha.src().pair_index(ab.pair_index(0, 1), 2);
  EXPECT_EQ(alpha(src), alpha.dst().pair_index(0, bc.pair_index(1, 2)));
  EXPECT_TRUE(alpha.is_bijective());
}

TEST(CanonicalIso, SwapOfProduct) {
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    auto d = S(1 + rng.below(3), "D");
    auto a = random_map(rng, d, S(1 + rng.below(3), "A"));
    auto b = random_map(rng, d, S(1 + rng.below(3), "B"));
    EXPECT_EQ(det_compose(swap_map(a.dst(), b.dst()), det_product(a, b)), det_product(b, a));
  }
}

TEST(CanonicalIso, WrongArityRejected) {
  const FiniteSpace one[] = {S(2)};
  EXPECT_THROW(canonical_iso(CanonicalIso::alpha, one), MismatchError);
}

TEST(DetTensor, InterchangeWithProduct) {
  Rng rng(8);
  for (int i = 0; i < 50; ++i) {
    auto d = S(1 + rng.below(3), "D");
    auto c = random_map(rng, d, S(1 + rng.below(3), "A"));
    auto e = random_map(rng, d, S(1 + rng.below(3), "B"));
    auto f = random_map(rng, c.dst(), S(1 + rng.below(3), "C"));
    auto g = random_map(rng, e.dst(), S(1 + rng.below(3), "E"));
    EXPECT_EQ(det_compose(det_tensor(f, g), det_product(c, e)), det_product(det_compose(f, c), det_compose(g, e)));
  }
}

TEST(ForEachDetMap, CountsAllMaps) {
  std::size_t n = 0;
  for_each_det_map(S(3), S(2, "T"), [&](const DetMap&) { ++n; });
  EXPECT_EQ(n, 8u);
}
