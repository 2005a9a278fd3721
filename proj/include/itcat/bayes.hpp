#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "itcat/error.hpp"
#include "itcat/informativeness.hpp"
#include "itcat/kleisli.hpp"
#include "itcat/monads.hpp"
#include "itcat/rational.hpp"
#include "itcat/sampling.hpp"
#include "itcat/space.hpp"

namespace itcat {

/// A distribution on `a` is an arrow out of the terminal space.
template <Monad M>
KleisliArrow<M> distribution(const FiniteSpace& a, Row<M> row) {
  return KleisliArrow<M>(FiniteSpace::terminal(), a, {std::move(row)});
}

template <Monad M>
bool is_distribution(const KleisliArrow<M>& f) {
  return f.src().is_terminal();
}

namespace detail {

template <Monad M>
void require_distribution(const KleisliArrow<M>& f, const char* what) {
  if (!is_distribution(f)) throw MismatchError(std::string(what) + " must be a distribution (source Z), got source " + f.src().label());
}

template <Monad M>
void require_joint(const KleisliArrow<M>& h) {
  require_distribution(h, "joint");
  if (!h.dst().is_product()) throw MismatchError("joint distribution must live on a product space, got " + h.dst().label());
}

}  // namespace detail

/// The joint generated by `f` and `a`: h = (i * a) . f on A*B.
template <Monad M>
KleisliArrow<M> joint_from(const KleisliArrow<M>& f, const KleisliArrow<M>& a) {
  detail::require_distribution(f, "prior");
  return compose(product(identity_arrow<M>(a.src()), a), f);
}

template <Monad M>
std::pair<KleisliArrow<M>, KleisliArrow<M>> marginals(const KleisliArrow<M>& h) {
  detail::require_joint(h);
  const FiniteSpace l = h.dst().left(), r = h.dst().right();
  return {compose(lift<M>(projection_left(l, r)), h), compose(lift<M>(projection_right(l, r)), h)};
}

template <Monad M>
bool is_independent(const KleisliArrow<M>& h) {
  auto [f, g] = marginals(h);
  return product(f, g) == h;
}

enum class Wrt { first, second };

/// Conditional of a probability joint on A*B. With respect to the first factor
/// it is a : A -> B with a(x)(y) = h(x,y)/f(x); with respect to the second,
/// b : B -> A with b(y)(x) = h(x,y)/g(y). Rows at zero-mass points are set to
/// the other marginal.
inline KleisliArrow<ProbabilityMonad> conditional(const KleisliArrow<ProbabilityMonad>& h, Wrt wrt) {
  using M = ProbabilityMonad;
  detail::require_joint(h);
  const FiniteSpace l = h.dst().left(), r = h.dst().right();
  auto [f, g] = marginals(h);
  const auto& dense = to_dense<M>(h.rows()[0], h.dst().size());
  const auto fd = to_dense<M>(f.rows()[0], l.size());
  const auto gd = to_dense<M>(g.rows()[0], r.size());
  const bool first = wrt == Wrt::first;
  const FiniteSpace& given = first ? l : r;
  const FiniteSpace& other = first ? r : l;
  const auto& given_mass = first ? fd : gd;
  const auto& other_row = first ? g.rows()[0] : f.rows()[0];
  std::vector<Row<M>> rows;
  for (std::size_t x = 0; x < given.size(); ++x) {
    if (sgn(given_mass[x]) == 0) {
      rows.push_back(other_row);
      continue;
    }
    std::vector<Rational> row(other.size());
    for (std::size_t y = 0; y < other.size(); ++y)
      row[y] = (first ? dense[x * r.size() + y] : dense[y * r.size() + x]) / given_mass[x];
    rows.push_back(from_dense<M>(row));
  }
  return KleisliArrow<M>(given, other, std::move(rows));
}

/// Checks the defining equation: h = (i * a) . f for the first factor, h = (b * i) . g for the second.
template <Monad M>
bool is_conditional(const KleisliArrow<M>& h, const KleisliArrow<M>& c, Wrt wrt) {
  auto [f, g] = marginals(h);
  if (wrt == Wrt::first) return compose(product(identity_arrow<M>(f.dst()), c), f) == h;
  return compose(product(c, identity_arrow<M>(g.dst())), g) == h;
}

/// Signals D, decisions U, utility table over D*U, optional prior on D.
template <Monad M>
struct DecisionProblem {
  FiniteSpace signals;
  FiniteSpace decisions;
  std::vector<std::vector<Rational>> utility;
  std::optional<KleisliArrow<M>> prior;

  DecisionProblem(FiniteSpace d, FiniteSpace u, std::vector<std::vector<Rational>> table,
                  std::optional<KleisliArrow<M>> f = std::nullopt)
      : signals(std::move(d)), decisions(std::move(u)), utility(std::move(table)), prior(std::move(f)) {
    if (utility.size() != signals.size())
      throw MismatchError("utility has " + std::to_string(utility.size()) + " rows, signal space has " +
                          std::to_string(signals.size()));
    for (const auto& row : utility)
      if (row.size() != decisions.size())
        throw MismatchError("utility row has " + std::to_string(row.size()) + " entries, decision space has " +
                            std::to_string(decisions.size()));
    if (prior && (!is_distribution(*prior) || !(prior->dst() == signals)))
      throw MismatchError("prior must be a distribution on " + signals.label());
  }

  const Rational& u(std::size_t d, std::size_t x) const { return utility[d][x]; }
};

/// Expected utility of a probability joint on D*U.
inline Rational expected_utility(const KleisliArrow<ProbabilityMonad>& joint,
                                 const DecisionProblem<ProbabilityMonad>& p) {
  Rational total = 0;
  const std::size_t nu = p.decisions.size();
  for (const auto& [k, w] : joint.rows()[0]) total += w * p.u(k / nu, k % nu);
  return total;
}

struct OptSet {
  std::vector<DetMap> strategies;  // every maximizer, in enumeration order
  Rational value = 0;
};

inline bool operator==(const OptSet& a, const OptSet& b) { return a.value == b.value && a.strategies == b.strategies; }

inline std::size_t count_maps(std::size_t src, std::size_t dst, std::size_t cap) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < src; ++i) {
    if (n > cap / std::max<std::size_t>(dst, 1)) return cap + 1;
    n *= dst;
  }
  return n;
}

inline constexpr std::size_t kStrategyLimit = 200000;

namespace detail {

/// Maximizers of `score` over all deterministic strategies r : R -> U.
template <class Score>
OptSet best_strategies(const FiniteSpace& r, const FiniteSpace& u, Score&& score) {
  if (count_maps(r.size(), u.size(), kStrategyLimit) > kStrategyLimit)
    throw RangeError("too many deterministic strategies to enumerate");
  OptSet out;
  bool any = false;
  for_each_det_map(r, u, [&](const DetMap& s) {
    Rational v = score(s);
    if (!any || v > out.value) {
      out.value = v;
      out.strategies.clear();
      any = true;
    }
    if (v == out.value) out.strategies.push_back(s);
  });
  return out;
}

}  // namespace detail

/// Optimal deterministic strategies r : R -> U for the prior problem: maximize
/// the expected utility of (i * r.a) . f. Expected utility is affine in every
/// row of r, so some deterministic strategy attains the optimum over all strategies.
inline OptSet opt_set(const KleisliArrow<ProbabilityMonad>& f, const KleisliArrow<ProbabilityMonad>& a,
                      const DecisionProblem<ProbabilityMonad>& p) {
  using M = ProbabilityMonad;
  detail::require_distribution(f, "prior");
  if (!(f.dst() == p.signals) || !(a.src() == p.signals))
    throw MismatchError("prior and channel must live on the signal space " + p.signals.label());
  return detail::best_strategies(a.dst(), p.decisions, [&](const DetMap& r) {
    return expected_utility(joint_from(f, compose(lift<M>(r), a)), p);
  });
}

/// Pointwise-optimal decisions for the posterior value at each observation,
/// empty for observations of probability zero.
inline std::vector<std::vector<std::size_t>> pointwise_decisions(const KleisliArrow<ProbabilityMonad>& b,
                                                                 const KleisliArrow<ProbabilityMonad>& g,
                                                                 const DecisionProblem<ProbabilityMonad>& p) {
  std::vector<std::vector<std::size_t>> out(b.src().size());
  for (std::size_t y = 0; y < b.src().size(); ++y) {
    if (!g.rows()[0].weight_of(y)) continue;
    std::optional<Rational> best;
    for (std::size_t u = 0; u < p.decisions.size(); ++u) {
      Rational v = 0;
      for (const auto& [d, w] : b.rows()[y]) v += w * p.u(d, u);
      if (!best || v > *best) {
        best = v;
        out[y].clear();
      }
      if (v == *best) out[y].push_back(u);
    }
  }
  return out;
}

struct BayesReport {
  OptSet prior_side;
  OptSet posterior_side;
  std::vector<std::vector<std::size_t>> pointwise;  // per observation, optimal posterior decisions
  bool sets_equal = false;
  /// Opt equals the set of strategies choosing a pointwise-optimal decision at every observed y.
  bool pointwise_agrees = false;
};

/// Computes the optimal set from the prior side, (i * r.a) . f, and from the
/// posterior side, (b * r) . g with g = a.f and b the conditional with respect to R.
inline BayesReport bayes_principle_check(const KleisliArrow<ProbabilityMonad>& f,
                                         const KleisliArrow<ProbabilityMonad>& a,
                                         const DecisionProblem<ProbabilityMonad>& p) {
  using M = ProbabilityMonad;
  BayesReport rep;
  rep.prior_side = opt_set(f, a, p);
  const auto g = compose(a, f);
  const auto b = conditional(joint_from(f, a), Wrt::second);
  rep.posterior_side = detail::best_strategies(a.dst(), p.decisions, [&](const DetMap& r) {
    return expected_utility(compose(product(b, lift<M>(r)), g), p);
  });
  rep.sets_equal = rep.prior_side == rep.posterior_side;
  rep.pointwise = pointwise_decisions(b, g, p);
  std::vector<DetMap> pointwise_set;
  for_each_det_map(a.dst(), p.decisions, [&](const DetMap& r) {
    for (std::size_t y = 0; y < r.table().size(); ++y) {
      const auto& ok = rep.pointwise[y];
      if (!ok.empty() && std::find(ok.begin(), ok.end(), r(y)) == ok.end()) return;
    }
    pointwise_set.push_back(r);
  });
  rep.pointwise_agrees = pointwise_set == rep.prior_side.strategies;
  return rep;
}

/// Randomized strategies never beat the deterministic optimum: true when all
/// `samples` random strategies score at most the optimal value.
inline bool randomized_strategies_bounded(const KleisliArrow<ProbabilityMonad>& f,
                                          const KleisliArrow<ProbabilityMonad>& a,
                                          const DecisionProblem<ProbabilityMonad>& p, Rng& rng,
                                          std::size_t samples = 100) {
  const auto best = opt_set(f, a, p).value;
  for (std::size_t i = 0; i < samples; ++i) {
    auto r = random_arrow<ProbabilityMonad>(rng, a.dst(), p.decisions);
    if (expected_utility(joint_from(f, compose(r, a)), p) > best) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Semantical informativeness.

/// Per-signal score of an interpretable arrow c : D -> U: expected utility for
/// probability arrows, worst-case utility over the image set for multivalued ones.
template <Monad M>
std::vector<Rational> interpretable_score(const KleisliArrow<M>& c, const DecisionProblem<M>& p) {
  static_assert(M::tag == MonadTag::probability || M::tag == MonadTag::powerset,
                "scores are defined for probability and multivalued arrows");
  std::vector<Rational> s(c.src().size());
  for (std::size_t x = 0; x < c.src().size(); ++x) {
    if constexpr (M::tag == MonadTag::probability) {
      Rational v = 0;
      for (const auto& [u, w] : c.rows()[x]) v += w * p.u(x, u);
      s[x] = v;
    } else {
      std::optional<Rational> worst;
      for (const auto& e : c.rows()[x])
        if (!worst || p.u(x, e.first) < *worst) worst = p.u(x, e.first);
      s[x] = *worst;
    }
  }
  return s;
}

/// c >=Q d: with a prior, compare prior-expected scores; without, every signal's score.
template <Monad M>
bool quality_ge(const std::vector<Rational>& c, const std::vector<Rational>& d, const DecisionProblem<M>& p) {
  if constexpr (M::tag == MonadTag::probability) {
    if (p.prior) {
      Rational ec = 0, ed = 0;
      for (const auto& [x, w] : p.prior->rows()[0]) {
        ec += w * c[x];
        ed += w * d[x];
      }
      return ec >= ed;
    }
  }
  for (std::size_t x = 0; x < c.size(); ++x)
    if (c[x] < d[x]) return false;
  return true;
}

namespace detail {

/// Strategies A -> U enumerated for semantical comparison: all arrows for
/// multivalued categories, deterministic ones for probability.
template <Monad M>
std::vector<KleisliArrow<M>> strategies(const FiniteSpace& a, const FiniteSpace& u) {
  std::vector<KleisliArrow<M>> out;
  if constexpr (M::enumerable) {
    if (count_arrows<M>(a, u) > kStrategyLimit) throw RangeError("too many strategies to enumerate");
    for_each_arrow<M>(a, u, [&](const KleisliArrow<M>& s) { out.push_back(s); });
  } else {
    if (count_maps(a.size(), u.size(), kStrategyLimit) > kStrategyLimit)
      throw RangeError("too many strategies to enumerate");
    for_each_det_map(a, u, [&](const DetMap& s) { out.push_back(lift<M>(s)); });
  }
  return out;
}

}  // namespace detail

/// a >=S b for every listed problem: each strategy applied to b is matched or
/// beaten by some strategy applied to a.
template <Monad M>
bool semantical_le(const KleisliArrow<M>& a, const KleisliArrow<M>& b, const std::vector<DecisionProblem<M>>& problems) {
  if (!(a.src() == b.src())) throw MismatchError("semantical comparison needs a common source");
  for (const auto& p : problems) {
    if (!(p.signals == a.src())) throw MismatchError("problem signals must be the common source " + a.src().label());
    std::vector<std::vector<Rational>> from_a;
    for (const auto& s : detail::strategies<M>(a.dst(), p.decisions))
      from_a.push_back(interpretable_score(compose(s, a), p));
    for (const auto& s : detail::strategies<M>(b.dst(), p.decisions)) {
      auto target = interpretable_score(compose(s, b), p);
      if (std::none_of(from_a.begin(), from_a.end(),
                       [&](const std::vector<Rational>& c) { return quality_ge(c, target, p); }))
        return false;
    }
  }
  return true;
}

struct InformativenessAgreement {
  bool structural = false;
  bool semantical = false;
  bool agree() const noexcept { return structural == semantical; }
};

/// Structural informativeness by witness search against the semantical
/// comparison in the problem with decisions b.dst and the preorder
///   c >=Qb d  iff  (d >=acc b implies c >=acc b),
/// both sides evaluated by complete enumeration.
template <Monad M>
InformativenessAgreement structural_vs_semantical(Accuracy rel, const KleisliArrow<M>& a, const KleisliArrow<M>& b) {
  static_assert(M::enumerable, "needs complete enumeration of strategies");
  InformativenessAgreement out;
  auto verdict = more_informative(rel, a, b);
  if (!verdict.holds && !verdict.exhaustive) throw RangeError("witness search incomplete");
  out.structural = verdict.holds;

  auto a_strategies = all_arrows<M>(a.dst(), b.dst());
  auto good = [&](const KleisliArrow<M>& d) { return accuracy_le(rel, d, b); };
  out.semantical = true;
  for_each_arrow<M>(b.dst(), b.dst(), [&](const KleisliArrow<M>& bp) {
    if (!out.semantical) return;
    const bool d_good = good(compose(bp, b));
    const bool matched = std::any_of(a_strategies.begin(), a_strategies.end(), [&](const KleisliArrow<M>& ap) {
      return !d_good || good(compose(ap, a));
    });
    if (!matched) out.semantical = false;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Deterministic domination.

/// A deterministic map whose lift is at least as accurate as `a` under the
/// pointwise relation: each x goes to the first point of full grade in a(x).
template <Monad M>
DetMap dominating_deterministic(const KleisliArrow<M>& a) {
  std::vector<std::size_t> table;
  for (const auto& r : a.rows()) {
    if constexpr (M::tag == MonadTag::identity) {
      table.push_back(r);
    } else {
      std::optional<std::size_t> pick;
      for (const auto& [y, w] : r)
        if (!pick && w == M::weights::one()) pick = y;
      if (!pick) throw ValidationError("row has no point of full grade");
      table.push_back(*pick);
    }
  }
  return DetMap(a.src(), a.dst(), std::move(table));
}

}  // namespace itcat
