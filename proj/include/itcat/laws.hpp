#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "itcat/kleisli.hpp"
#include "itcat/monads.hpp"
#include "itcat/sampling.hpp"
#include "itcat/space.hpp"

namespace itcat {

struct Counterexample {
  std::string input;
  std::string lhs;
  std::string rhs;
};

/// Outcome of checking one equation over a family of instances.
struct LawReport {
  std::string law;
  std::string monad;
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::vector<Counterexample> counterexamples;  // first few failures
  bool exhaustive = false;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  bool expected_to_hold = true;

  bool holds() const noexcept { return counterexamples.empty(); }
  bool as_expected() const noexcept { return holds() == expected_to_hold; }
};

struct LawConfig {
  std::size_t max_card = 2;
  std::size_t samples = 50;
  std::uint64_t seed = 0;
  std::size_t keep_counterexamples = 3;
  /// Tuples per space assignment above which a law is sampled instead of enumerated.
  std::size_t tuple_budget = 4096;
};

namespace detail {

template <class M>
using TT = typename M::template T<Row<M>>;
template <class M>
using TTT = typename M::template T<TT<M>>;

class LawRun {
 public:
  LawRun(std::string law, std::string_view monad, const LawConfig& cfg, bool exhaustive, bool expected = true)
      : cfg_(cfg) {
    report_.law = std::move(law);
    report_.monad = std::string(monad);
    report_.exhaustive = exhaustive;
    report_.seed = cfg.seed;
    report_.samples = exhaustive ? 0 : cfg.samples;
    report_.expected_to_hold = expected;
  }

  template <class L, class R>
  void check(const L& lhs, const R& rhs, const std::function<std::string()>& input) {
    ++report_.instances;
    if (lhs == rhs) return;
    ++report_.failures;
    if (report_.counterexamples.size() < cfg_.keep_counterexamples)
      report_.counterexamples.push_back({input(), describe(lhs), describe(rhs)});
  }

  void check_bool(bool ok, const std::function<std::string()>& input, const std::string& what) {
    ++report_.instances;
    if (ok) return;
    ++report_.failures;
    if (report_.counterexamples.size() < cfg_.keep_counterexamples)
      report_.counterexamples.push_back({input(), what, "required"});
  }

  void mark_sampled() {
    report_.exhaustive = false;
    report_.samples = cfg_.samples;
  }

  LawReport finish() { return std::move(report_); }

 private:
  const LawConfig& cfg_;
  LawReport report_;
};

/// Stable per-law stream so reports do not depend on which other laws ran.
inline Rng law_rng(const LawConfig& cfg, std::string_view law) {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : law) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
  return Rng(cfg.seed ^ h);
}

/// Visits all pairs when within budget, else `samples` random pairs. Returns true when all were visited.
template <class A, class B, class F>
bool each_pair(const std::vector<A>& as, const std::vector<B>& bs, const LawConfig& cfg, Rng& rng, F&& f) {
  if (as.empty() || bs.empty()) return true;
  if (as.size() * bs.size() <= cfg.tuple_budget) {
    for (const auto& a : as)
      for (const auto& b : bs) f(a, b);
    return true;
  }
  for (std::size_t i = 0; i < cfg.samples; ++i) f(as[rng.below(as.size())], bs[rng.below(bs.size())]);
  return false;
}

template <class A, class B, class C, class F>
bool each_triple(const std::vector<A>& as, const std::vector<B>& bs, const std::vector<C>& cs, const LawConfig& cfg,
                 Rng& rng, F&& f) {
  if (as.empty() || bs.empty() || cs.empty()) return true;
  if (as.size() * bs.size() * cs.size() <= cfg.tuple_budget) {
    for (const auto& a : as)
      for (const auto& b : bs)
        for (const auto& c : cs) f(a, b, c);
    return true;
  }
  for (std::size_t i = 0; i < cfg.samples; ++i)
    f(as[rng.below(as.size())], bs[rng.below(bs.size())], cs[rng.below(cs.size())]);
  return false;
}

inline FiniteSpace card_space(std::size_t n) { return FiniteSpace::plain("S" + std::to_string(n), n); }

template <Monad M>
std::vector<Row<M>> first_order(std::size_t n, const LawConfig& cfg, Rng& rng) {
  if constexpr (M::enumerable) {
    return all_rows<M>(n);
  } else {
    auto v = corner_rows<M>(n);
    for (std::size_t i = 0; i < cfg.samples; ++i) v.push_back(random_row<M>(rng, n));
    return v;
  }
}

template <Monad M>
std::vector<TT<M>> second_order(std::size_t n, const LawConfig& cfg, Rng& rng) {
  if constexpr (M::enumerable) {
    return all_values<M>(all_rows<M>(n));
  } else {
    auto pool = first_order<M>(n, cfg, rng);
    std::vector<TT<M>> v;
    for (const auto& r : corner_rows<M>(n)) v.push_back(M::unit(r));
    for (std::size_t i = 0; i < cfg.samples; ++i) v.push_back(random_value<M>(rng, pool));
    return v;
  }
}

/// Third-order values; the powerset monad is enumerated only up to cardinality 2.
template <Monad M>
std::optional<std::vector<TTT<M>>> third_order(std::size_t n, const LawConfig& cfg, Rng& rng) {
  if constexpr (M::tag == MonadTag::identity) {
    return all_rows<M>(n);
  } else if constexpr (M::enumerable) {
    if (n > 2) return std::nullopt;
    return all_values<M>(all_values<M>(all_rows<M>(n)));
  } else {
    auto pool = second_order<M>(n, cfg, rng);
    std::vector<TTT<M>> v;
    for (std::size_t i = 0; i < 3 && i < pool.size(); ++i) v.push_back(M::unit(pool[i]));
    for (std::size_t i = 0; i < cfg.samples; ++i) v.push_back(random_value<M>(rng, pool));
    return v;
  }
}

/// Arrows src -> dst: every arrow when enumerable and few enough, otherwise all
/// lifted maps plus `samples` random arrows.
template <Monad M>
std::vector<KleisliArrow<M>> arrow_pool(const FiniteSpace& src, const FiniteSpace& dst, const LawConfig& cfg,
                                        Rng& rng, bool& complete) {
  if constexpr (M::enumerable) {
    if (count_arrows<M>(src, dst) <= 512) return all_arrows<M>(src, dst);
  }
  complete = false;
  std::vector<KleisliArrow<M>> out;
  for_each_det_map(src, dst, [&](const DetMap& f) { out.push_back(lift<M>(f)); });
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    auto a = random_arrow<M>(rng, src, dst);
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(std::move(a));
  }
  return out;
}

}  // namespace detail

/// Monad square, both unit triangles, injectivity of the unit, functoriality and
/// naturality of fmap, and normalization of join outputs.
template <Monad M>
std::vector<LawReport> check_monad_laws(const LawConfig& cfg) {
  using namespace detail;
  std::vector<LawReport> out;
  const bool ex = M::enumerable;

  {
    LawRun run("monad-square", M::name(), cfg, ex);
    Rng rng = law_rng(cfg, "monad-square");
    for (std::size_t n = 1; n <= cfg.max_card; ++n) {
      auto values = third_order<M>(n, cfg, rng);
      if (!values) continue;
      for (const auto& v : *values) {
        auto inner_first = M::template join<std::size_t>(
            M::template fmap<TT<M>>([](const TT<M>& tt) { return M::template join<std::size_t>(tt); }, v));
        auto outer_first = M::template join<std::size_t>(M::template join<Row<M>>(v));
        run.check(inner_first, outer_first, [&] { return "n=" + std::to_string(n) + " v=" + describe(v); });
      }
    }
    out.push_back(run.finish());
  }
  {
    LawRun run("monad-left-unit", M::name(), cfg, ex);
    Rng rng = law_rng(cfg, "monad-left-unit");
    for (std::size_t n = 1; n <= cfg.max_card; ++n)
      for (const auto& v : first_order<M>(n, cfg, rng)) {
        auto lhs = M::template join<std::size_t>(
            M::template fmap<std::size_t>([](std::size_t x) { return M::unit(x); }, v));
        run.check(lhs, v, [&] { return "n=" + std::to_string(n) + " v=" + describe(v); });
      }
    out.push_back(run.finish());
  }
  {
    LawRun run("monad-right-unit", M::name(), cfg, ex);
    Rng rng = law_rng(cfg, "monad-right-unit");
    for (std::size_t n = 1; n <= cfg.max_card; ++n)
      for (const auto& v : first_order<M>(n, cfg, rng)) {
        auto lhs = M::template join<std::size_t>(M::unit(v));
        run.check(lhs, v, [&] { return "n=" + std::to_string(n) + " v=" + describe(v); });
      }
    out.push_back(run.finish());
  }
  {
    LawRun run("unit-injective", M::name(), cfg, true);
    for (std::size_t n = 1; n <= cfg.max_card; ++n)
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          run.check_bool((x == y) == (M::unit(x) == M::unit(y)),
                         [&] { return "n=" + std::to_string(n) + " x=" + std::to_string(x) + " y=" + std::to_string(y); },
                         "unit(x)==unit(y) iff x==y");
    out.push_back(run.finish());
  }
  {
    LawRun run("join-normalized", M::name(), cfg, ex);
    Rng rng = law_rng(cfg, "join-normalized");
    for (std::size_t n = 1; n <= cfg.max_card; ++n)
      for (const auto& v : second_order<M>(n, cfg, rng)) {
        auto j = M::template join<std::size_t>(v);
        run.check_bool(!row_problem<M>(j, n).has_value(), [&] { return "v=" + describe(v) + " join=" + describe(j); },
                       "join output normalized");
      }
    out.push_back(run.finish());
  }
  {
    LawRun run("fmap-functor", M::name(), cfg, ex);
    Rng rng = law_rng(cfg, "fmap-functor");
    for (std::size_t n = 1; n <= cfg.max_card; ++n) {
      const FiniteSpace s = card_space(n);
      auto values = first_order<M>(n, cfg, rng);
      for (const auto& v : values) run.check(push_forward<M>(DetMap::identity(s), v), v, [&] { return describe(v); });
      std::vector<DetMap> maps;
      for_each_det_map(s, s, [&](const DetMap& f) { maps.push_back(f); });
      for (std::size_t i = 0; i < cfg.samples; ++i) {
        const auto& f = maps[rng.below(maps.size())];
        const auto& g = maps[rng.below(maps.size())];
        const auto& v = values[rng.below(values.size())];
        run.check(push_forward<M>(det_compose(g, f), v), push_forward<M>(g, push_forward<M>(f, v)),
                  [&] { return "v=" + describe(v); });
      }
    }
    if (!ex) run.mark_sampled();
    out.push_back(run.finish());
  }
  {
    // T f . mu = mu . TT f and T f . eta = eta . f
    LawRun run("unit-join-natural", M::name(), cfg, ex);
    Rng rng = law_rng(cfg, "unit-join-natural");
    for (std::size_t n = 1; n <= cfg.max_card; ++n) {
      const FiniteSpace s = card_space(n);
      std::vector<DetMap> maps;
      for_each_det_map(s, s, [&](const DetMap& f) { maps.push_back(f); });
      for (const auto& f : maps)
        for (std::size_t x = 0; x < n; ++x)
          run.check(push_forward<M>(f, M::unit(x)), Row<M>(M::unit(f(x))), [&] { return "x=" + std::to_string(x); });
      auto values = second_order<M>(n, cfg, rng);
      each_pair(maps, values, cfg, rng, [&](const DetMap& f, const TT<M>& v) {
        auto lhs = push_forward<M>(f, M::template join<std::size_t>(v));
        auto rhs = M::template join<std::size_t>(
            M::template fmap<Row<M>>([&](const Row<M>& r) { return push_forward<M>(f, r); }, v));
        run.check(lhs, rhs, [&] { return "v=" + describe(v); });
      });
    }
    out.push_back(run.finish());
  }
  return out;
}

/// The six compatibility conditions between the independent joint and pi, nu, sigma, alpha, mu, eta.
template <Monad M>
std::vector<LawReport> check_gamma_coherence(const LawConfig& cfg) {
  using namespace detail;
  std::vector<LawReport> out;
  const bool ex = M::enumerable;

  auto pairs_law = [&](const std::string& name, auto&& body) {
    LawRun run(name, M::name(), cfg, ex);
    Rng rng = law_rng(cfg, name);
    bool full = true;
    for (std::size_t n = 1; n <= cfg.max_card; ++n)
      for (std::size_t m = 1; m <= cfg.max_card; ++m) {
        const FiniteSpace a = card_space(n), b = card_space(m);
        auto ps = first_order<M>(n, cfg, rng);
        auto qs = first_order<M>(m, cfg, rng);
        full &= each_pair(ps, qs, cfg, rng, [&](const Row<M>& p, const Row<M>& q) { body(run, a, b, p, q); });
      }
    if (!full) run.mark_sampled();
    out.push_back(run.finish());
  };

  pairs_law("gamma-pi", [](LawRun& run, const FiniteSpace& a, const FiniteSpace& b, const Row<M>& p, const Row<M>& q) {
    run.check(push_forward<M>(projection_left(a, b), pair_rows<M>(p, q, b.size())), p,
              [&] { return "p=" + describe(p) + " q=" + describe(q); });
  });
  pairs_law("gamma-nu", [](LawRun& run, const FiniteSpace& a, const FiniteSpace& b, const Row<M>& p, const Row<M>& q) {
    run.check(push_forward<M>(projection_right(a, b), pair_rows<M>(p, q, b.size())), q,
              [&] { return "p=" + describe(p) + " q=" + describe(q); });
  });
  pairs_law("gamma-sigma",
            [](LawRun& run, const FiniteSpace& a, const FiniteSpace& b, const Row<M>& p, const Row<M>& q) {
              run.check(push_forward<M>(swap_map(a, b), pair_rows<M>(p, q, b.size())), pair_rows<M>(q, p, a.size()),
                        [&] { return "p=" + describe(p) + " q=" + describe(q); });
            });

  {
    LawRun run("gamma-alpha", M::name(), cfg, ex);
    Rng rng = law_rng(cfg, "gamma-alpha");
    bool full = true;
    for (std::size_t n = 1; n <= cfg.max_card; ++n)
      for (std::size_t m = 1; m <= cfg.max_card; ++m)
        for (std::size_t k = 1; k <= cfg.max_card; ++k) {
          const FiniteSpace a = card_space(n), b = card_space(m), c = card_space(k);
          const DetMap alpha = associator(a, b, c);
          auto ps = first_order<M>(n, cfg, rng);
          auto qs = first_order<M>(m, cfg, rng);
          auto rs = first_order<M>(k, cfg, rng);
          full &= each_triple(ps, qs, rs, cfg, rng, [&](const Row<M>& p, const Row<M>& q, const Row<M>& r) {
            auto lhs = push_forward<M>(alpha, pair_rows<M>(pair_rows<M>(p, q, m), r, k));
            auto rhs = pair_rows<M>(p, pair_rows<M>(q, r, k), m * k);
            run.check(lhs, rhs, [&] { return "p=" + describe(p) + " q=" + describe(q) + " r=" + describe(r); });
          });
        }
    if (!full) run.mark_sampled();
    out.push_back(run.finish());
  }
  {
    LawRun run("gamma-mu", M::name(), cfg, ex);
    Rng rng = law_rng(cfg, "gamma-mu");
    bool full = true;
    for (std::size_t n = 1; n <= cfg.max_card; ++n)
      for (std::size_t m = 1; m <= cfg.max_card; ++m) {
        auto ps = second_order<M>(n, cfg, rng);
        auto qs = second_order<M>(m, cfg, rng);
        full &= each_pair(ps, qs, cfg, rng, [&](const TT<M>& pp, const TT<M>& qq) {
          auto outer = M::template gamma<Row<M>, Row<M>>(pp, qq);
          auto lhs = M::template join<std::size_t>(M::template fmap<std::pair<Row<M>, Row<M>>>(
              [m](const std::pair<Row<M>, Row<M>>& pq) { return pair_rows<M>(pq.first, pq.second, m); }, outer));
          auto rhs =
              pair_rows<M>(M::template join<std::size_t>(pp), M::template join<std::size_t>(qq), m);
          run.check(lhs, rhs, [&] { return "P=" + describe(pp) + " Q=" + describe(qq); });
        });
      }
    if (!full) run.mark_sampled();
    out.push_back(run.finish());
  }
  {
    LawRun run("gamma-eta", M::name(), cfg, true);
    for (std::size_t n = 1; n <= cfg.max_card; ++n)
      for (std::size_t m = 1; m <= cfg.max_card; ++m)
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t y = 0; y < m; ++y)
            run.check(pair_rows<M>(M::unit(x), M::unit(y), m), Row<M>(M::unit(x * m + y)),
                      [&] { return "x=" + std::to_string(x) + " y=" + std::to_string(y); });
    out.push_back(run.finish());
  }
  {
    LawRun run("gamma-normalized", M::name(), cfg, ex);
    Rng rng = law_rng(cfg, "gamma-normalized");
    bool full = true;
    for (std::size_t n = 1; n <= cfg.max_card; ++n)
      for (std::size_t m = 1; m <= cfg.max_card; ++m) {
        auto ps = first_order<M>(n, cfg, rng);
        auto qs = first_order<M>(m, cfg, rng);
        full &= each_pair(ps, qs, cfg, rng, [&](const Row<M>& p, const Row<M>& q) {
          auto j = pair_rows<M>(p, q, m);
          run.check_bool(!row_problem<M>(j, n * m).has_value(), [&] { return "joint=" + describe(j); },
                         "independent joint normalized");
        });
      }
    if (!full) run.mark_sampled();
    out.push_back(run.finish());
  }
  return out;
}

/// Category laws, the information-transformer axioms for products, naturality of
/// pi, nu, sigma over all arrows, and the diagonal check that is expected to fail
/// for every nondeterministic category.
template <Monad M>
std::vector<LawReport> check_it_axioms(const LawConfig& cfg) {
  using namespace detail;
  using Arrow = KleisliArrow<M>;
  std::vector<LawReport> out;
  const bool ex = M::enumerable;
  const std::size_t max_card = cfg.max_card;

  struct Pools {
    const LawConfig& cfg;
    Rng rng;
    bool complete = true;
    std::vector<std::vector<std::vector<Arrow>>> cache;
    const std::vector<Arrow>& get(std::size_t n, std::size_t m) {
      if (cache.empty()) cache.assign(cfg.max_card + 1, std::vector<std::vector<Arrow>>(cfg.max_card + 1));
      auto& slot = cache[n][m];
      if (slot.empty()) slot = arrow_pool<M>(card_space(n), card_space(m), cfg, rng, complete);
      return slot;
    }
  };
  Pools pools{cfg, Rng(cfg.seed ^ 0x9e3779b97f4a7c15ull)};
  LawConfig sampled_cfg = cfg;
  sampled_cfg.tuple_budget = 0;
  auto input2 = [](const Arrow& a, const Arrow& b) {
    return [&a, &b] { return "a=" + describe(a) + " b=" + describe(b); };
  };

  auto unary = [&](const std::string& name, bool expected, auto&& body) {
    LawRun run(name, M::name(), cfg, ex, expected);
    for (std::size_t n = 1; n <= max_card; ++n)
      for (std::size_t m = 1; m <= max_card; ++m)
        for (const auto& a : pools.get(n, m)) body(run, a);
    if (!pools.complete) run.mark_sampled();
    out.push_back(run.finish());
  };
  // Binary laws over arrows a : S_n -> S_m, b : S_k -> S_l (shared source when `same_src`).
  auto binary = [&](const std::string& name, bool same_src, auto&& body) {
    LawRun run(name, M::name(), cfg, ex);
    Rng rng = law_rng(cfg, name);
    bool full = pools.complete;
    for (std::size_t n = 1; n <= max_card; ++n)
      for (std::size_t m = 1; m <= max_card; ++m)
        for (std::size_t k = 1; k <= max_card; ++k)
          for (std::size_t l = 1; l <= max_card; ++l) {
            if (same_src && k != n) continue;
            const auto& as = pools.get(n, m);
            const auto& bs = pools.get(k, l);
            // Sampled pools already contain `samples` random arrows; pair them up at random too.
            full &= each_pair(as, bs, pools.complete ? cfg : sampled_cfg, rng,
                              [&](const Arrow& a, const Arrow& b) { body(run, a, b); });
          }
    if (!full || !pools.complete) run.mark_sampled();
    out.push_back(run.finish());
  };

  unary("category-identity", true, [](LawRun& run, const Arrow& a) {
    run.check(compose(identity_arrow<M>(a.dst()), a), a, [&] { return describe(a); });
    run.check(compose(a, identity_arrow<M>(a.src())), a, [&] { return describe(a); });
  });

  {
    LawRun run("category-associativity", M::name(), cfg, ex);
    Rng rng = law_rng(cfg, "category-associativity");
    bool full = true;
    for (std::size_t n = 1; n <= max_card; ++n)
      for (std::size_t m = 1; m <= max_card; ++m)
        for (std::size_t k = 1; k <= max_card; ++k)
          for (std::size_t l = 1; l <= max_card; ++l)
            full &= each_triple(pools.get(n, m), pools.get(m, k), pools.get(k, l), cfg, rng,
                                [&](const Arrow& a, const Arrow& b, const Arrow& c) {
                                  run.check(compose(compose(c, b), a), compose(c, compose(b, a)),
                                            [&] { return "a=" + describe(a) + " b=" + describe(b) + " c=" + describe(c); });
                                });
    if (!full || !pools.complete) run.mark_sampled();
    out.push_back(run.finish());
  }

  binary("kleisli-extension", false, [&](LawRun& run, const Arrow& a, const Arrow& b) {
    if (!(a.dst().size() == b.src().size())) return;
    Arrow bb(a.dst(), b.dst(), b.rows());
    run.check(compose(bb, a), compose_via_join(bb, a), input2(a, bb));
  });

  {
    LawRun run("lift-functorial", M::name(), cfg, true);
    for (std::size_t n = 1; n <= max_card; ++n)
      for (std::size_t m = 1; m <= max_card; ++m)
        for (std::size_t k = 1; k <= max_card; ++k)
          for_each_det_map(card_space(n), card_space(m), [&](const DetMap& f) {
            for_each_det_map(card_space(m), card_space(k), [&](const DetMap& g) {
              run.check(lift<M>(det_compose(g, f)), compose(lift<M>(g), lift<M>(f)),
                        [&] { return "f=" + describe(f) + " g=" + describe(g); });
            });
          });
    out.push_back(run.finish());
  }

  binary("product-extraction", true, [](LawRun& run, const Arrow& a, const Arrow& b) {
    auto ab = product(a, b);
    run.check(compose(lift<M>(projection_left(a.dst(), b.dst())), ab), a, [&] {
      return "a=" + describe(a) + " b=" + describe(b);
    });
    run.check(compose(lift<M>(projection_right(a.dst(), b.dst())), ab), b, [&] {
      return "a=" + describe(a) + " b=" + describe(b);
    });
  });

  binary("product-via-diagonal", true, [](LawRun& run, const Arrow& a, const Arrow& b) {
    run.check(product(a, b), product_via_diagonal(a, b),
              [&] { return "a=" + describe(a) + " b=" + describe(b); });
  });

  binary("product-commutative", true, [](LawRun& run, const Arrow& a, const Arrow& b) {
    run.check(compose(lift<M>(swap_map(a.dst(), b.dst())), product(a, b)), product(b, a),
              [&] { return "a=" + describe(a) + " b=" + describe(b); });
  });

  {
    LawRun run("product-associative", M::name(), cfg, ex);
    Rng rng = law_rng(cfg, "product-associative");
    bool full = true;
    for (std::size_t d = 1; d <= max_card; ++d)
      for (std::size_t n = 1; n <= max_card; ++n)
        for (std::size_t m = 1; m <= max_card; ++m)
          for (std::size_t k = 1; k <= max_card; ++k)
            full &= each_triple(pools.get(d, n), pools.get(d, m), pools.get(d, k), cfg, rng,
                                [&](const Arrow& a, const Arrow& b, const Arrow& c) {
                                  auto lhs = compose(lift<M>(associator(a.dst(), b.dst(), c.dst())),
                                                     product(product(a, b), c));
                                  run.check(lhs, product(a, product(b, c)), [&] {
                                    return "a=" + describe(a) + " b=" + describe(b) + " c=" + describe(c);
                                  });
                                });
    if (!full || !pools.complete) run.mark_sampled();
    out.push_back(run.finish());
  }

  {
    // (a#b).(c*d) = (a.c)*(b.d) with c : D->A, d : D->B, a : A->C, b : B->E
    LawRun run("tensor-interchange", M::name(), cfg, ex);
    Rng rng = law_rng(cfg, "tensor-interchange");
    bool full = true;
    for (std::size_t dd = 1; dd <= max_card; ++dd)
      for (std::size_t n = 1; n <= max_card; ++n)
        for (std::size_t m = 1; m <= max_card; ++m) {
          const std::size_t k = 1 + (n + m) % max_card, l = 1 + (dd + n) % max_card;
          const auto& cs = pools.get(dd, n);
          const auto& ds = pools.get(dd, m);
          const auto& as = pools.get(n, k);
          const auto& bs = pools.get(m, l);
          auto body = [&](const Arrow& a, const Arrow& b, const Arrow& c, const Arrow& d) {
            auto lhs = compose(tensor(a, b), product(c, d));
            auto rhs = product(compose(a, c), compose(b, d));
            run.check(lhs, rhs, [&] {
              return "a=" + describe(a) + " b=" + describe(b) + " c=" + describe(c) + " d=" + describe(d);
            });
          };
          if (as.size() * bs.size() * cs.size() * ds.size() <= cfg.tuple_budget) {
            for (const auto& a : as)
              for (const auto& b : bs)
                for (const auto& c : cs)
                  for (const auto& d : ds) body(a, b, c, d);
          } else {
            full = false;
            for (std::size_t i = 0; i < cfg.samples; ++i)
              body(as[rng.below(as.size())], bs[rng.below(bs.size())], cs[rng.below(cs.size())],
                   ds[rng.below(ds.size())]);
          }
        }
    if (!full || !pools.complete) run.mark_sampled();
    out.push_back(run.finish());
  }

  {
    LawRun run("terminal-object", M::name(), cfg, ex);
    const FiniteSpace z = FiniteSpace::terminal();
    for (const auto& r : grid_rows<M>(1, kSampleDenominator))
      run.check(r, Row<M>(M::unit(std::size_t{0})), [&] { return "row over Z"; });
    for (std::size_t n = 1; n <= max_card; ++n)
      for (std::size_t m = 1; m <= max_card; ++m)
        for (const auto& a : pools.get(n, m))
          run.check(compose(terminal_arrow<M>(a.dst()), a), terminal_arrow<M>(a.src()),
                    [&] { return describe(a); });
    if (!pools.complete) run.mark_sampled();
    out.push_back(run.finish());
  }

  if constexpr (M::enumerable) {
    LawRun run("isomorphisms-deterministic", M::name(), cfg, true);
    for (std::size_t n = 1; n <= std::min<std::size_t>(max_card, 3); ++n) {
      const FiniteSpace s = card_space(n);
      const auto id = identity_arrow<M>(s);
      auto arrows = all_arrows<M>(s, s);
      for (const auto& a : arrows)
        for (const auto& b : arrows) {
          if (!(compose(b, a) == id) || !(compose(a, b) == id)) continue;
          auto f = as_deterministic(a);
          run.check_bool(f && f->is_bijective(), [&] { return describe(a); }, "invertible arrow is a lifted bijection");
        }
    }
    out.push_back(run.finish());
  }

  binary("pi-natural", false, [](LawRun& run, const Arrow& a, const Arrow& b) {
    auto lhs = compose(lift<M>(projection_left(a.dst(), b.dst())), tensor(a, b));
    auto rhs = compose(a, lift<M>(projection_left(a.src(), b.src())));
    run.check(lhs, rhs, [&] { return "a=" + describe(a) + " b=" + describe(b); });
  });
  binary("nu-natural", false, [](LawRun& run, const Arrow& a, const Arrow& b) {
    auto lhs = compose(lift<M>(projection_right(a.dst(), b.dst())), tensor(a, b));
    auto rhs = compose(b, lift<M>(projection_right(a.src(), b.src())));
    run.check(lhs, rhs, [&] { return "a=" + describe(a) + " b=" + describe(b); });
  });
  binary("sigma-natural", false, [](LawRun& run, const Arrow& a, const Arrow& b) {
    auto lhs = compose(lift<M>(swap_map(a.dst(), b.dst())), tensor(a, b));
    auto rhs = compose(tensor(b, a), lift<M>(swap_map(a.src(), b.src())));
    run.check(lhs, rhs, [&] { return "a=" + describe(a) + " b=" + describe(b); });
  });

  // delta is natural only on deterministic arrows; a nondeterministic category must fail here.
  unary("delta-natural", M::tag == MonadTag::identity, [](LawRun& run, const Arrow& a) {
    auto lhs = compose(tensor(a, a), lift<M>(diagonal(a.src())));
    auto rhs = compose(lift<M>(diagonal(a.dst())), a);
    run.check(lhs, rhs, [&] { return describe(a); });
  });

  return out;
}

/// All three suites.
template <Monad M>
std::vector<LawReport> check_all_laws(const LawConfig& cfg) {
  auto out = check_monad_laws<M>(cfg);
  for (auto& r : check_gamma_coherence<M>(cfg)) out.push_back(std::move(r));
  for (auto& r : check_it_axioms<M>(cfg)) out.push_back(std::move(r));
  return out;
}

inline bool all_as_expected(const std::vector<LawReport>& reports) {
  for (const auto& r : reports)
    if (!r.as_expected()) return false;
  return true;
}

/// Human-readable report: one status line per law, counterexamples indented below.
inline void write_report(std::ostream& os, const std::vector<LawReport>& reports) {
  for (const auto& r : reports) {
    os << (r.as_expected() ? "PASS " : "FAIL ") << r.monad << " " << r.law << ": " << (r.holds() ? "holds" : "fails")
       << (r.expected_to_hold ? "" : " (expected to fail)") << ", " << r.instances << " instances, ";
    if (r.exhaustive)
      os << "exhaustive";
    else
      os << "sampled(seed=" << r.seed << ", samples=" << r.samples << ")";
    if (r.failures) os << ", " << r.failures << " failing";
    os << "\n";
    for (const auto& c : r.counterexamples) {
      os << "    counterexample: " << c.input << "\n";
      os << "      lhs: " << c.lhs << "\n";
      os << "      rhs: " << c.rhs << "\n";
    }
  }
}

/// Tab-separated: monad, law, verdict, holds, instances, strategy.
inline void write_machine_report(std::ostream& os, const std::vector<LawReport>& reports) {
  for (const auto& r : reports)
    os << r.monad << '\t' << r.law << '\t' << (r.as_expected() ? "PASS" : "FAIL") << '\t'
       << (r.holds() ? "holds" : "fails") << '\t' << r.instances << '\t'
       << (r.exhaustive ? std::string("exhaustive") : "sampled:" + std::to_string(r.seed) + ":" + std::to_string(r.samples))
       << '\n';
}

}  // namespace itcat
