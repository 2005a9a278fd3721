#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "itcat/error.hpp"
#include "itcat/rational.hpp"
#include "itcat/space.hpp"

namespace itcat {

/// Weight of the Boolean (set-valued) monads: membership carries no grade.
struct Unit {
  friend constexpr bool operator==(Unit, Unit) noexcept { return true; }
  friend constexpr bool operator<(Unit, Unit) noexcept { return false; }
};

/// A finitely supported weighted collection of points. Entries are kept
/// sorted by point, without duplicates and without zero weights, so two
/// supports are equal exactly when their entry lists are equal.
template <class W, class X>
class Support {
 public:
  using weight_type = W;
  using value_type = X;
  using entry_type = std::pair<X, W>;
  using container = boost::container::small_vector<entry_type, 4>;

  Support() = default;
  explicit Support(container entries) : entries_(std::move(entries)) {}

  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const entry_type& operator[](std::size_t i) const { return entries_[i]; }

  const W* weight_of(const X& x) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), x,
                               [](const entry_type& e, const X& key) { return e.first < key; });
    if (it == entries_.end() || x < it->first) return nullptr;
    return &it->second;
  }

  friend bool operator==(const Support& a, const Support& b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end());
  }

  friend bool operator<(const Support& a, const Support& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }

 private:
  container entries_;
};

enum class MonadTag { identity, probability, powerset, fuzzy_min, fuzzy_prod };

inline std::string_view monad_tag_name(MonadTag tag) {
  switch (tag) {
    case MonadTag::identity: return "identity";
    case MonadTag::probability: return "probability";
    case MonadTag::powerset: return "powerset";
    case MonadTag::fuzzy_min: return "fuzzy-min";
    case MonadTag::fuzzy_prod: return "fuzzy-prod";
  }
  return "?";
}

/// Accepts the canonical names plus the category aliases set, stochastic and multivalued.
inline std::optional<MonadTag> parse_monad_tag(std::string_view s) {
  if (s == "identity" || s == "set") return MonadTag::identity;
  if (s == "probability" || s == "stochastic") return MonadTag::probability;
  if (s == "powerset" || s == "multivalued") return MonadTag::powerset;
  if (s == "fuzzy-min") return MonadTag::fuzzy_min;
  if (s == "fuzzy-prod") return MonadTag::fuzzy_prod;
  return std::nullopt;
}

// Weight structures. `plus` aggregates weights landing on the same point,
// `times` weighs an inner value by its outer grade, `pair` builds the grade
// of a pair in the independent joint.

struct ProbabilityWeights {
  using weight = Rational;
  static constexpr MonadTag tag = MonadTag::probability;
  static weight one() { return Rational(1); }
  static bool is_zero(const weight& w) { return sgn(w) == 0; }
  static bool in_range(const weight& w) { return sgn(w) > 0 && w <= 1; }
  static weight plus(const weight& a, const weight& b) { return a + b; }
  static weight times(const weight& a, const weight& b) { return a * b; }
  static weight pair(const weight& a, const weight& b) { return a * b; }
};

struct PowersetWeights {
  using weight = Unit;
  static constexpr MonadTag tag = MonadTag::powerset;
  static weight one() { return {}; }
  static bool is_zero(const weight&) { return false; }
  static bool in_range(const weight&) { return true; }
  static weight plus(const weight&, const weight&) { return {}; }
  static weight times(const weight&, const weight&) { return {}; }
  static weight pair(const weight&, const weight&) { return {}; }
};

/// Sup-min fuzzy sets.
struct FuzzyMinWeights {
  using weight = Rational;
  static constexpr MonadTag tag = MonadTag::fuzzy_min;
  static weight one() { return Rational(1); }
  static bool is_zero(const weight& w) { return sgn(w) == 0; }
  static bool in_range(const weight& w) { return sgn(w) > 0 && w <= 1; }
  static weight plus(const weight& a, const weight& b) { return a < b ? b : a; }
  static weight times(const weight& a, const weight& b) { return a < b ? a : b; }
  static weight pair(const weight& a, const weight& b) { return a < b ? a : b; }
};

/// Sup-product fuzzy sets.
struct FuzzyProdWeights {
  using weight = Rational;
  static constexpr MonadTag tag = MonadTag::fuzzy_prod;
  static weight one() { return Rational(1); }
  static bool is_zero(const weight& w) { return sgn(w) == 0; }
  static bool in_range(const weight& w) { return sgn(w) > 0 && w <= 1; }
  static weight plus(const weight& a, const weight& b) { return a < b ? b : a; }
  static weight times(const weight& a, const weight& b) { return a * b; }
  static weight pair(const weight& a, const weight& b) { return a * b; }
};

/// The monad of finitely supported S-weighted collections:
///   T X    = finite supports with weights in S
///   unit   = point with weight one
///   join   = flatten, weighting inner grades by outer grades
///   gamma  = independent joint of two supports
/// A value is normalized when its weights aggregate (by `plus`) to one:
/// probability rows sum to 1, subsets are nonempty, fuzzy rows have max 1.
template <class S>
struct SemiringMonad {
  using weights = S;
  using weight = typename S::weight;
  template <class X>
  using T = Support<weight, X>;

  static constexpr MonadTag tag = S::tag;
  static constexpr bool enumerable = std::is_same_v<weight, Unit>;

  static std::string_view name() { return monad_tag_name(tag); }

  template <class X>
  static T<X> normalize(typename T<X>::container raw) {
    using E = typename T<X>::entry_type;
    std::sort(raw.begin(), raw.end(), [](const E& a, const E& b) { return a.first < b.first; });
    typename T<X>::container out;
    out.reserve(raw.size());
    for (auto& e : raw) {
      if (!out.empty() && !(out.back().first < e.first))
        out.back().second = S::plus(out.back().second, e.second);
      else
        out.push_back(std::move(e));
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const E& e) { return S::is_zero(e.second); }), out.end());
    return T<X>(std::move(out));
  }

  template <class X>
  static T<X> unit(X x) {
    typename T<X>::container c;
    c.emplace_back(std::move(x), S::one());
    return T<X>(std::move(c));
  }

  template <class X, class F>
  static auto fmap(F&& f, const T<X>& v) {
    using Y = std::remove_cvref_t<std::invoke_result_t<F&, const X&>>;
    typename T<Y>::container raw;
    raw.reserve(v.size());
    for (const auto& [x, w] : v) raw.emplace_back(f(x), w);
    return normalize<Y>(std::move(raw));
  }

  /// Kleisli extension: `join(fmap(k, v))` computed in one pass.
  template <class X, class F>
  static auto bind(const T<X>& v, F&& k) {
    using R = std::remove_cvref_t<std::invoke_result_t<F&, const X&>>;
    using Y = typename R::value_type;
    typename T<Y>::container raw;
    for (const auto& [x, w] : v) {
      const auto& inner = k(x);
      for (const auto& [y, u] : inner) raw.emplace_back(y, S::times(w, u));
    }
    return normalize<Y>(std::move(raw));
  }

  template <class X>
  static T<X> join(const T<T<X>>& v) {
    return bind(v, [](const T<X>& inner) -> const T<X>& { return inner; });
  }

  template <class X, class Y>
  static T<std::pair<X, Y>> gamma(const T<X>& p, const T<Y>& q) {
    typename T<std::pair<X, Y>>::container raw;
    raw.reserve(p.size() * q.size());
    for (const auto& [x, w] : p)
      for (const auto& [y, u] : q) raw.emplace_back(std::pair<X, Y>(x, y), S::pair(w, u));
    return normalize<std::pair<X, Y>>(std::move(raw));
  }

  template <class X>
  static weight total(const T<X>& v) {
    auto it = v.begin();
    weight acc = it->second;
    for (++it; it != v.end(); ++it) acc = S::plus(acc, it->second);
    return acc;
  }

  template <class X>
  static bool valid(const T<X>& v) {
    if (v.empty()) return false;
    for (const auto& e : v)
      if (!S::in_range(e.second)) return false;
    return total(v) == S::one();
  }

  /// Pointwise accuracy: every grade of `a` is at most the grade of `b`.
  template <class X>
  static bool le(const T<X>& a, const T<X>& b) {
    for (const auto& [x, w] : a) {
      const weight* wb = b.weight_of(x);
      if (!wb || *wb < w) return false;
    }
    return true;
  }

  template <class X, class F>
  static void for_each_point(const T<X>& v, F&& f) {
    for (const auto& e : v) f(e.first);
  }
};

using ProbabilityMonad = SemiringMonad<ProbabilityWeights>;
using PowersetMonad = SemiringMonad<PowersetWeights>;
using FuzzyMinMonad = SemiringMonad<FuzzyMinWeights>;
using FuzzyProdMonad = SemiringMonad<FuzzyProdWeights>;

/// T X = X. Its Kleisli category is the category of finite sets and maps.
struct IdentityMonad {
  using weight = Unit;
  template <class X>
  using T = X;

  static constexpr MonadTag tag = MonadTag::identity;
  static constexpr bool enumerable = true;

  static std::string_view name() { return monad_tag_name(tag); }

  template <class X>
  static X unit(X x) {
    return x;
  }

  template <class X, class F>
  static auto fmap(F&& f, const X& v) {
    return f(v);
  }

  template <class X, class F>
  static auto bind(const X& v, F&& k) {
    return std::remove_cvref_t<std::invoke_result_t<F&, const X&>>(k(v));
  }

  template <class X>
  static X join(const X& v) {
    return v;
  }

  template <class X, class Y>
  static std::pair<X, Y> gamma(const X& p, const Y& q) {
    return {p, q};
  }

  template <class X>
  static bool valid(const X&) {
    return true;
  }

  template <class X>
  static bool le(const X& a, const X& b) {
    return a == b;
  }

  template <class X, class F>
  static void for_each_point(const X& v, F&& f) {
    f(v);
  }
};

template <class M>
concept Monad = requires {
  { M::tag } -> std::convertible_to<MonadTag>;
  { M::enumerable } -> std::convertible_to<bool>;
  typename M::template T<std::size_t>;
};

/// A distribution-value over the elements of a finite space.
template <class M>
using Row = typename M::template T<std::size_t>;

// Printing of nested values, used in reports and counterexamples.

template <std::integral I>
std::string describe(I v) {
  return std::to_string(v);
}
inline std::string describe(const Rational& r) { return r.get_str(); }
inline std::string describe(Unit) { return ""; }
template <class A, class B>
std::string describe(const std::pair<A, B>& p);
template <class W, class X>
std::string describe(const Support<W, X>& s);

template <class A, class B>
std::string describe(const std::pair<A, B>& p) {
  return "(" + describe(p.first) + "," + describe(p.second) + ")";
}

template <class W, class X>
std::string describe(const Support<W, X>& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [x, w] : s) {
    if (!first) out += ", ";
    first = false;
    if constexpr (!std::is_same_v<W, Unit>) out += describe(w) + "@";
    out += describe(x);
  }
  return out + "}";
}

/// Row as a dense vector over `card` elements: probabilities, grades, or 0/1 membership.
template <Monad M>
std::vector<Rational> to_dense(const Row<M>& row, std::size_t card) {
  std::vector<Rational> dense(card, Rational(0));
  if constexpr (M::tag == MonadTag::identity) {
    dense.at(row) = 1;
  } else {
    for (const auto& [x, w] : row) {
      if constexpr (std::is_same_v<typename M::weight, Unit>)
        dense.at(x) = 1;
      else
        dense.at(x) = w;
    }
  }
  return dense;
}

/// Reasons a row fails the value invariants, or nullopt when it is a valid value over `card` elements.
template <Monad M>
std::optional<std::string> row_problem(const Row<M>& row, std::size_t card) {
  std::optional<std::string> out_of_range;
  M::for_each_point(row, [&](std::size_t x) {
    if (x >= card) out_of_range = "element " + std::to_string(x) + " out of range";
  });
  if (out_of_range) return out_of_range;
  if constexpr (M::tag == MonadTag::identity) {
    return std::nullopt;
  } else {
    if (row.empty()) {
      if constexpr (M::tag == MonadTag::powerset) return std::string("empty image set");
      else if constexpr (M::tag == MonadTag::probability) return std::string("sums to 0, expected 1");
      else return std::string("not normed (max grade 0)");
    }
    if (M::valid(row)) return std::nullopt;
    if constexpr (M::tag == MonadTag::probability) {
      for (const auto& e : row)
        if (sgn(e.second) < 0) return std::string("has a negative probability");
      return "sums to " + describe(M::total(row)) + ", expected 1";
    } else if constexpr (M::tag == MonadTag::fuzzy_min || M::tag == MonadTag::fuzzy_prod) {
      for (const auto& e : row)
        if (sgn(e.second) < 0 || e.second > 1) return std::string("has a grade outside [0,1]");
      return "not normed (max grade " + describe(M::total(row)) + ")";
    } else {
      return std::string("invalid value");
    }
  }
}

/// Inverse of `to_dense`; performs the encoding checks (0/1 membership, single
/// element for the identity monad) but not normalization, see `row_problem`.
template <Monad M>
Row<M> from_dense(const std::vector<Rational>& dense) {
  if constexpr (M::tag == MonadTag::identity) {
    std::optional<std::size_t> hit;
    for (std::size_t i = 0; i < dense.size(); ++i) {
      if (dense[i] == 0) continue;
      if (dense[i] != 1 || hit) throw ValidationError("deterministic row must contain exactly one 1");
      hit = i;
    }
    if (!hit) throw ValidationError("deterministic row must contain exactly one 1");
    return *hit;
  } else {
    typename Row<M>::container c;
    for (std::size_t i = 0; i < dense.size(); ++i) {
      if (dense[i] == 0) continue;
      if constexpr (std::is_same_v<typename M::weight, Unit>) {
        if (dense[i] != 1) throw ValidationError("membership entries must be 0 or 1");
        c.emplace_back(i, Unit{});
      } else {
        c.emplace_back(i, dense[i]);
      }
    }
    return Row<M>(std::move(c));
  }
}

/// Transport a row along a deterministic map.
template <Monad M>
Row<M> push_forward(const DetMap& f, const Row<M>& v) {
  return M::template fmap<std::size_t>([&](std::size_t x) { return f(x); }, v);
}

/// The independent joint of two rows, indexed over `product_space(A, B)`.
template <Monad M>
Row<M> pair_rows(const Row<M>& p, const Row<M>& q, std::size_t right_card) {
  auto joint = M::template gamma<std::size_t, std::size_t>(p, q);
  return M::template fmap<std::pair<std::size_t, std::size_t>>(
      [right_card](const std::pair<std::size_t, std::size_t>& xy) { return xy.first * right_card + xy.second; },
      joint);
}

}  // namespace itcat
