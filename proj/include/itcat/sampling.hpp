#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "itcat/kleisli.hpp"
#include "itcat/monads.hpp"
#include "itcat/rational.hpp"

namespace itcat {

/// Seeded generator. Only raw engine output is used, so sequences are identical
/// across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  std::size_t below(std::size_t n) { return n <= 1 ? 0 : static_cast<std::size_t>(engine_() % n); }
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }

 private:
  std::mt19937_64 engine_;
};

/// Default denominator bound of sampled rational grades.
inline constexpr std::size_t kSampleDenominator = 6;

/// `k` weights that aggregate to one under the monad's `plus`.
template <Monad M>
std::vector<typename M::weight> random_weights(Rng& rng, std::size_t k, std::size_t max_den = kSampleDenominator) {
  using W = typename M::weight;
  std::vector<W> w(k);
  if constexpr (M::tag == MonadTag::probability) {
    const std::size_t d = rng.between(k, std::max(k, max_den));
    std::vector<long> units(k, 1);
    for (std::size_t i = k; i < d; ++i) ++units[rng.below(k)];
    for (std::size_t i = 0; i < k; ++i) w[i] = make_rational(units[i], static_cast<long>(d));
  } else if constexpr (M::tag == MonadTag::fuzzy_min || M::tag == MonadTag::fuzzy_prod) {
    for (auto& g : w) {
      const auto d = static_cast<long>(rng.between(1, max_den));
      g = make_rational(static_cast<long>(rng.between(1, static_cast<std::size_t>(d))), d);
    }
    w[rng.below(k)] = 1;
  }
  return w;
}

/// A random normalized value supported on 1 to 3 distinct points of `pool`.
template <Monad M, class X>
typename M::template T<X> random_value(Rng& rng, const std::vector<X>& pool, std::size_t max_support = 3) {
  if constexpr (M::tag == MonadTag::identity) {
    return pool[rng.below(pool.size())];
  } else {
    const std::size_t k = rng.between(1, std::min(max_support, pool.size()));
    std::vector<std::size_t> idx(pool.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    for (std::size_t i = 0; i < k; ++i) std::swap(idx[i], idx[i + rng.below(idx.size() - i)]);
    auto w = random_weights<M>(rng, k);
    typename M::template T<X>::container raw;
    for (std::size_t i = 0; i < k; ++i) raw.emplace_back(pool[idx[i]], w[i]);
    return M::template normalize<X>(std::move(raw));
  }
}

inline std::vector<std::size_t> index_pool(std::size_t card) {
  std::vector<std::size_t> v(card);
  for (std::size_t i = 0; i < card; ++i) v[i] = i;
  return v;
}

template <Monad M>
Row<M> random_row(Rng& rng, std::size_t card) {
  return random_value<M>(rng, index_pool(card));
}

/// Point masses plus the "uniform" value (equal probabilities, the full set, all grades 1).
template <Monad M>
std::vector<Row<M>> corner_rows(std::size_t card) {
  std::vector<Row<M>> out;
  for (std::size_t i = 0; i < card; ++i) out.push_back(M::unit(i));
  if constexpr (M::tag != MonadTag::identity) {
    if (card > 1) {
      typename Row<M>::container raw;
      for (std::size_t i = 0; i < card; ++i) {
        if constexpr (M::tag == MonadTag::probability)
          raw.emplace_back(i, make_rational(1, static_cast<long>(card)));
        else
          raw.emplace_back(i, typename M::weight(M::weights::one()));
      }
      out.push_back(M::template normalize<std::size_t>(std::move(raw)));
    }
  }
  return out;
}

/// Every normalized value over `pool` (enumerable monads only).
template <Monad M, class X>
std::vector<typename M::template T<X>> all_values(const std::vector<X>& pool) {
  static_assert(M::enumerable, "value enumeration needs a finite value set");
  std::vector<typename M::template T<X>> out;
  if constexpr (M::tag == MonadTag::identity) {
    out = pool;
  } else {
    if (pool.size() >= 24) throw RangeError("too many points to enumerate all subsets");
    const std::uint64_t n = std::uint64_t{1} << pool.size();
    for (std::uint64_t mask = 1; mask < n; ++mask) {
      typename M::template T<X>::container raw;
      for (std::size_t i = 0; i < pool.size(); ++i)
        if (mask >> i & 1) raw.emplace_back(pool[i], Unit{});
      out.push_back(M::template normalize<X>(std::move(raw)));
    }
  }
  return out;
}

template <Monad M>
std::vector<Row<M>> all_rows(std::size_t card) {
  return all_values<M>(index_pool(card));
}

/// Rows whose entries are rationals with denominator at most `max_den`:
/// the full value set for enumerable monads, a finite grid otherwise.
template <Monad M>
std::vector<Row<M>> grid_rows(std::size_t card, std::size_t max_den) {
  if constexpr (M::enumerable) {
    return all_rows<M>(card);
  } else {
    std::set<std::vector<Rational>> dense;
    if constexpr (M::tag == MonadTag::probability) {
      for (std::size_t d = 1; d <= max_den; ++d) {
        std::vector<long> units(card, 0);
        // All compositions of d into `card` nonnegative parts.
        auto rec = [&](auto&& self, std::size_t i, long left) -> void {
          if (i + 1 == card) {
            units[i] = left;
            std::vector<Rational> row(card);
            for (std::size_t j = 0; j < card; ++j) row[j] = make_rational(units[j], static_cast<long>(d));
            dense.insert(std::move(row));
            return;
          }
          for (long u = 0; u <= left; ++u) {
            units[i] = u;
            self(self, i + 1, left - u);
          }
        };
        rec(rec, 0, static_cast<long>(d));
      }
    } else {
      std::set<Rational> grades;
      for (std::size_t d = 1; d <= max_den; ++d)
        for (std::size_t k = 0; k <= d; ++k) grades.insert(make_rational(static_cast<long>(k), static_cast<long>(d)));
      std::vector<Rational> g(grades.begin(), grades.end());
      std::vector<std::size_t> digit(card, 0);
      while (true) {
        std::vector<Rational> row(card);
        bool normed = false;
        for (std::size_t j = 0; j < card; ++j) {
          row[j] = g[digit[j]];
          normed = normed || row[j] == 1;
        }
        if (normed) dense.insert(std::move(row));
        std::size_t i = 0;
        while (i < card && ++digit[i] == g.size()) digit[i++] = 0;
        if (i == card) break;
      }
    }
    std::vector<Row<M>> out;
    out.reserve(dense.size());
    for (const auto& d : dense) out.push_back(from_dense<M>(d));
    return out;
  }
}

template <Monad M>
KleisliArrow<M> random_arrow(Rng& rng, const FiniteSpace& src, const FiniteSpace& dst) {
  std::vector<Row<M>> rows;
  rows.reserve(src.size());
  for (std::size_t x = 0; x < src.size(); ++x) rows.push_back(random_row<M>(rng, dst.size()));
  return KleisliArrow<M>(src, dst, std::move(rows));
}

/// Number of arrows src -> dst of an enumerable monad (saturates at SIZE_MAX).
template <Monad M>
std::size_t count_arrows(const FiniteSpace& src, const FiniteSpace& dst) {
  static_assert(M::enumerable);
  const std::size_t per_row = M::tag == MonadTag::identity ? dst.size() : (std::size_t{1} << dst.size()) - 1;
  std::size_t n = 1;
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (n > SIZE_MAX / per_row) return SIZE_MAX;
    n *= per_row;
  }
  return n;
}

/// Calls `f(arrow)` for every arrow src -> dst built from `rows` (odometer order).
template <Monad M, class F>
void for_each_arrow_over(const FiniteSpace& src, const FiniteSpace& dst, const std::vector<Row<M>>& rows, F&& f) {
  if (rows.empty()) return;
  std::vector<std::size_t> digit(src.size(), 0);
  std::vector<Row<M>> current(src.size(), rows[0]);
  while (true) {
    f(KleisliArrow<M>(src, dst, current));
    std::size_t i = 0;
    while (i < digit.size() && ++digit[i] == rows.size()) {
      digit[i] = 0;
      current[i] = rows[0];
      ++i;
    }
    if (i == digit.size()) return;
    current[i] = rows[digit[i]];
  }
}

/// Every arrow src -> dst of an enumerable monad.
template <Monad M, class F>
void for_each_arrow(const FiniteSpace& src, const FiniteSpace& dst, F&& f) {
  for_each_arrow_over<M>(src, dst, all_rows<M>(dst.size()), f);
}

template <Monad M>
std::vector<KleisliArrow<M>> all_arrows(const FiniteSpace& src, const FiniteSpace& dst) {
  std::vector<KleisliArrow<M>> out;
  for_each_arrow<M>(src, dst, [&](const KleisliArrow<M>& a) { out.push_back(a); });
  return out;
}

}  // namespace itcat
