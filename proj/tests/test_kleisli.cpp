#include <gtest/gtest.h>

#include "itcat/kleisli.hpp"
#include "itcat/sampling.hpp"
#include "oracles.hpp"

using namespace itcat;

namespace {

using P = ProbabilityMonad;
using PS = PowersetMonad;
using FM = FuzzyMinMonad;
using FP = FuzzyProdMonad;
using Dense = oracle::Dense;

Rational q(long n, long d = 1) { return make_rational(n, d); }
FiniteSpace S(std::size_t n, const char* name = "S") { return FiniteSpace::plain(name, n); }

template <Monad M>
KleisliArrow<M> arrow(std::size_t src, std::size_t dst, Dense rows, const char* a = "A", const char* b = "B") {
  return arrow_from_dense<M>(S(src, a), S(dst, b), rows);
}

template <Monad M>
oracle::Semiring semiring() {
  if constexpr (M::tag == MonadTag::probability) return oracle::Semiring::sum_product;
  else if constexpr (M::tag == MonadTag::fuzzy_min) return oracle::Semiring::max_min;
  else if constexpr (M::tag == MonadTag::fuzzy_prod) return oracle::Semiring::max_product;
  else return oracle::Semiring::or_and;
}

}  // namespace

TEST(Lift, IdentityIsPointMasses) {
  auto a = lift<P>(DetMap::identity(S(3)));
  EXPECT_EQ(dense_rows(a), (Dense{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
}

TEST(Lift, SwapPowerset) {
  auto a = lift<PS>(DetMap(S(2), S(2), {1, 0}));
  EXPECT_EQ(describe(a), "S->S [{1}; {0}]");
}

TEST(Lift, Functorial) {
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t m = 1; m <= 3; ++m)
      for_each_det_map(S(n), S(m, "T"), [&](const DetMap& f) {
        for_each_det_map(S(m, "T"), S(2, "U"), [&](const DetMap& g) {
          EXPECT_EQ(lift<P>(det_compose(g, f)), compose(lift<P>(g), lift<P>(f)));
          EXPECT_EQ(lift<PS>(det_compose(g, f)), compose(lift<PS>(g), lift<PS>(f)));
          ++checked;
        });
      });
  EXPECT_GT(checked, 100u);
}

TEST(Compose, ProbabilityExample) {
  auto a = arrow<P>(2, 2, {{q(1, 2), q(1, 2)}, {0, 1}});
  auto b = arrow<P>(2, 2, {{1, 0}, {q(1, 3), q(2, 3)}}, "B", "C");
  EXPECT_EQ(dense_rows(compose(b, a)), (Dense{{q(2, 3), q(1, 3)}, {q(1, 3), q(2, 3)}}));
}

TEST(Compose, PowersetExample) {
  auto a = arrow<PS>(2, 2, {{1, 1}, {0, 1}});
  auto b = arrow<PS>(2, 2, {{1, 0}, {1, 1}}, "B", "C");
  EXPECT_EQ(dense_rows(compose(b, a)), (Dense{{1, 1}, {1, 1}}));
}

TEST(Compose, FuzzyMinExample) {
  auto a = arrow<FM>(1, 2, {{1, q(1, 2)}});
  auto b = arrow<FM>(2, 2, {{q(1, 2), 1}, {1, 0}}, "B", "C");
  EXPECT_EQ(dense_rows(compose(b, a)), (Dense{{q(1, 2), 1}}));
}

template <Monad M>
void compose_matches_oracle(std::uint64_t seed) {
  Rng rng(seed);
  for (int i = 0; i < 200; ++i) {
    auto A = S(1 + rng.below(4), "A"), B = S(1 + rng.below(4), "B"), C = S(1 + rng.below(4), "C");
    auto a = random_arrow<M>(rng, A, B);
    auto b = random_arrow<M>(rng, B, C);
    EXPECT_EQ(dense_rows(compose(b, a)), oracle::compose(semiring<M>(), dense_rows(b), dense_rows(a)));
    EXPECT_EQ(compose(b, a), compose_via_join(b, a));
  }
}

TEST(Compose, ProbabilityMatchesMatrixProduct) { compose_matches_oracle<P>(1); }
TEST(Compose, PowersetMatchesBooleanProduct) { compose_matches_oracle<PS>(2); }
TEST(Compose, FuzzyMinMatchesMaxMin) { compose_matches_oracle<FM>(3); }
TEST(Compose, FuzzyProdMatchesMaxProduct) { compose_matches_oracle<FP>(4); }

TEST(Compose, MismatchedSpacesRejected) {
  auto a = arrow<P>(2, 2, {{1, 0}, {0, 1}});
  EXPECT_THROW(compose(a, a), MismatchError);
}

TEST(Product, ProbabilityOuterProduct) {
  auto a = arrow<P>(1, 2, {{q(1, 2), q(1, 2)}}, "X", "A");
  auto b = arrow<P>(1, 2, {{q(1, 3), q(2, 3)}}, "X", "B");
  EXPECT_EQ(dense_rows(product(a, b)), (Dense{{q(1, 6), q(1, 3), q(1, 6), q(1, 3)}}));
}

TEST(Product, PowersetSingletonTimesPair) {
  auto a = arrow<PS>(1, 2, {{1, 0}}, "X", "A");
  auto b = arrow<PS>(1, 2, {{1, 1}}, "X", "B");
  EXPECT_EQ(dense_rows(product(a, b)), (Dense{{1, 1, 0, 0}}));
}

TEST(Product, FuzzyMinPairwiseMin) {
  auto a = arrow<FM>(1, 2, {{1, q(1, 4)}}, "X", "A");
  auto b = arrow<FM>(1, 2, {{q(1, 2), 1}}, "X", "B");
  EXPECT_EQ(dense_rows(product(a, b)), (Dense{{q(1, 2), 1, q(1, 4), q(1, 4)}}));
}

template <Monad M>
void product_matches_oracle(std::uint64_t seed) {
  Rng rng(seed);
  for (int i = 0; i < 200; ++i) {
    auto D = S(1 + rng.below(3), "D");
    auto a = random_arrow<M>(rng, D, S(1 + rng.below(3), "A"));
    auto b = random_arrow<M>(rng, D, S(1 + rng.below(3), "B"));
    EXPECT_EQ(dense_rows(product(a, b)), oracle::pair_rows(semiring<M>(), dense_rows(a), dense_rows(b)));
    EXPECT_EQ(product(a, b), product_via_diagonal(a, b));
  }
}

TEST(Product, ProbabilityMatchesOuterProduct) { product_matches_oracle<P>(5); }
TEST(Product, PowersetMatchesCartesian) { product_matches_oracle<PS>(6); }
TEST(Product, FuzzyMinMatchesPairwiseMin) { product_matches_oracle<FM>(7); }
TEST(Product, FuzzyProdMatchesPairwiseProduct) { product_matches_oracle<FP>(8); }

TEST(Tensor, IdentitiesGiveIdentity) {
  auto a = S(2, "A"), b = S(3, "B");
  EXPECT_EQ(tensor(identity_arrow<P>(a), identity_arrow<P>(b)), identity_arrow<P>(product_space(a, b)));
}

TEST(Tensor, PointMassesStayPointMasses) {
  auto f = lift<P>(DetMap(S(2), S(2), {1, 1}));
  auto g = lift<P>(DetMap(S(3, "T"), S(2), {0, 1, 0}));
  EXPECT_TRUE(is_deterministic(tensor(f, g)));
}

template <Monad M>
void tensor_interchange(std::uint64_t seed) {
  Rng rng(seed);
  for (int i = 0; i < 100; ++i) {
    auto D = S(1 + rng.below(2), "D");
    auto c = random_arrow<M>(rng, D, S(1 + rng.below(3), "A"));
    auto d = random_arrow<M>(rng, D, S(1 + rng.below(3), "B"));
    auto a = random_arrow<M>(rng, c.dst(), S(1 + rng.below(3), "C"));
    auto b = random_arrow<M>(rng, d.dst(), S(1 + rng.below(3), "E"));
    EXPECT_EQ(compose(tensor(a, b), product(c, d)), product(compose(a, c), compose(b, d)));
  }
}

TEST(Tensor, InterchangeProbability) { tensor_interchange<P>(9); }
TEST(Tensor, InterchangeFuzzyProd) { tensor_interchange<FP>(10); }
TEST(Tensor, InterchangePowerset) { tensor_interchange<PS>(11); }

TEST(Apply, IdentityIsUnit) {
  auto id = identity_arrow<P>(S(3));
  EXPECT_EQ(apply(id, 2), P::unit<std::size_t>(2));
}

TEST(Apply, ConstantArrowSameValue) {
  auto a = arrow<P>(3, 2, {{q(1, 4), q(3, 4)}, {q(1, 4), q(3, 4)}, {q(1, 4), q(3, 4)}});
  EXPECT_EQ(apply(a, 0), apply(a, 2));
}

TEST(Apply, ComposeIsMixture) {
  Rng rng(12);
  auto a = random_arrow<P>(rng, S(2, "A"), S(3, "B"));
  auto b = random_arrow<P>(rng, S(3, "B"), S(2, "C"));
  for (std::size_t x = 0; x < 2; ++x) {
    std::vector<Rational> want(2, Rational(0));
    for (const auto& [y, w] : apply(a, x))
      for (const auto& [z, u] : apply(b, y)) want[z] += w * u;
    EXPECT_EQ(to_dense<P>(apply(compose(b, a), x), 2), want);
  }
}

TEST(Deterministic, RecognizesLiftedMaps) {
  DetMap f(S(3), S(2, "T"), {1, 0, 1});
  EXPECT_EQ(as_deterministic(lift<FM>(f)), f);
  EXPECT_FALSE(as_deterministic(arrow<P>(1, 2, {{q(1, 2), q(1, 2)}})));
}

TEST(ArrowFromDense, ReportsOneBasedRow) {
  try {
    arrow<P>(2, 2, {{1, 0}, {q(1, 2), q(1, 3)}});
    FAIL() << "accepted an invalid row";
  } catch (const ValidationError& e) {
    EXPECT_STREQ(e.what(), "row 2 sums to 5/6, expected 1");
  }
}
