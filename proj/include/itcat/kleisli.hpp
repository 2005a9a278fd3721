#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "itcat/error.hpp"
#include "itcat/monads.hpp"
#include "itcat/space.hpp"

namespace itcat {

/// An information transformer `src -> dst` of the Kleisli category of `M`,
/// stored as one distribution-value over `dst` per element of `src`.
template <Monad M>
class KleisliArrow {
 public:
  using monad = M;
  using row_type = Row<M>;

  KleisliArrow(FiniteSpace src, FiniteSpace dst, std::vector<row_type> rows)
      : src_(std::move(src)), dst_(std::move(dst)), rows_(std::move(rows)) {
    if (rows_.size() != src_.size())
      throw MismatchError("arrow has " + std::to_string(rows_.size()) + " rows, source " + src_.label() + " has " +
                          std::to_string(src_.size()) + " elements");
    for (std::size_t x = 0; x < rows_.size(); ++x)
      if (auto why = row_problem<M>(rows_[x], dst_.size()))
        throw ValidationError("row " + std::to_string(x + 1) + " " + *why);
  }

  const FiniteSpace& src() const noexcept { return src_; }
  const FiniteSpace& dst() const noexcept { return dst_; }
  const std::vector<row_type>& rows() const noexcept { return rows_; }

  const row_type& row(std::size_t x) const {
    if (x >= rows_.size()) throw RangeError("element index " + std::to_string(x) + " out of range for " + src_.label());
    return rows_[x];
  }

  friend bool operator==(const KleisliArrow& a, const KleisliArrow& b) {
    return a.src_ == b.src_ && a.dst_ == b.dst_ && a.rows_ == b.rows_;
  }

 private:
  FiniteSpace src_, dst_;
  std::vector<row_type> rows_;
};

inline std::string describe(const DetMap& f) {
  std::string out = f.src().label() + "->" + f.dst().label() + " [";
  for (std::size_t x = 0; x < f.table().size(); ++x) out += (x ? "," : "") + std::to_string(f.table()[x]);
  return out + "]";
}

template <Monad M>
std::string describe(const KleisliArrow<M>& a) {
  std::string out = a.src().label() + "->" + a.dst().label() + " [";
  for (std::size_t x = 0; x < a.rows().size(); ++x) {
    if (x) out += "; ";
    out += describe(a.rows()[x]);
  }
  return out + "]";
}

/// Row of `a` at `x`; the stored value itself.
template <Monad M>
const Row<M>& apply(const KleisliArrow<M>& a, std::size_t x) {
  return a.row(x);
}

/// Deterministic embedding: the row at x is the unit at f(x).
template <Monad M>
KleisliArrow<M> lift(const DetMap& f) {
  std::vector<Row<M>> rows;
  rows.reserve(f.src().size());
  for (std::size_t y : f.table()) rows.push_back(M::unit(y));
  return KleisliArrow<M>(f.src(), f.dst(), std::move(rows));
}

template <Monad M>
KleisliArrow<M> identity_arrow(const FiniteSpace& a) {
  return lift<M>(DetMap::identity(a));
}

/// The unique arrow `z_D : D -> Z`.
template <Monad M>
KleisliArrow<M> terminal_arrow(const FiniteSpace& d) {
  return lift<M>(DetMap::to_terminal(d));
}

/// `b . a` via the Kleisli extension of the monad.
template <Monad M>
KleisliArrow<M> compose(const KleisliArrow<M>& b, const KleisliArrow<M>& a) {
  if (!(a.dst() == b.src()))
    throw MismatchError("cannot compose: " + a.dst().label() + " is not " + b.src().label());
  std::vector<Row<M>> rows;
  rows.reserve(a.src().size());
  const auto& b_rows = b.rows();
  for (const auto& r : a.rows())
    rows.push_back(M::template bind<std::size_t>(r, [&](std::size_t y) -> const Row<M>& { return b_rows[y]; }));
  return KleisliArrow<M>(a.src(), b.dst(), std::move(rows));
}

/// `b . a` computed literally as `mu . T b' . a'`. Slower than `compose`; kept as a cross-check.
template <Monad M>
KleisliArrow<M> compose_via_join(const KleisliArrow<M>& b, const KleisliArrow<M>& a) {
  if (!(a.dst() == b.src()))
    throw MismatchError("cannot compose: " + a.dst().label() + " is not " + b.src().label());
  std::vector<Row<M>> rows;
  const auto& b_rows = b.rows();
  for (const auto& r : a.rows()) {
    auto second_order = M::template fmap<std::size_t>([&](std::size_t y) { return b_rows[y]; }, r);
    rows.push_back(M::template join<std::size_t>(second_order));
  }
  return KleisliArrow<M>(a.src(), b.dst(), std::move(rows));
}

/// `a*b : D -> A*B`, row-wise the independent joint `gamma(a(x), b(x))`.
template <Monad M>
KleisliArrow<M> product(const KleisliArrow<M>& a, const KleisliArrow<M>& b) {
  if (!(a.src() == b.src()))
    throw MismatchError("cannot take product of arrows with sources " + a.src().label() + " and " + b.src().label());
  FiniteSpace dst = product_space(a.dst(), b.dst());
  std::vector<Row<M>> rows;
  rows.reserve(a.src().size());
  for (std::size_t x = 0; x < a.src().size(); ++x)
    rows.push_back(pair_rows<M>(a.rows()[x], b.rows()[x], b.dst().size()));
  return KleisliArrow<M>(a.src(), std::move(dst), std::move(rows));
}

/// Functorial product `a#b : A*B -> C*D`, equal to `(a.pi)*(b.nu)`.
template <Monad M>
KleisliArrow<M> tensor(const KleisliArrow<M>& a, const KleisliArrow<M>& b) {
  FiniteSpace src = product_space(a.src(), b.src());
  FiniteSpace dst = product_space(a.dst(), b.dst());
  std::vector<Row<M>> rows;
  rows.reserve(src.size());
  for (std::size_t k = 0; k < src.size(); ++k) {
    auto [x, y] = src.unpair(k);
    rows.push_back(pair_rows<M>(a.rows()[x], b.rows()[y], b.dst().size()));
  }
  return KleisliArrow<M>(std::move(src), std::move(dst), std::move(rows));
}

/// `(a#b) . delta`. Agrees with `product` in every Kleisli category built here.
template <Monad M>
KleisliArrow<M> product_via_diagonal(const KleisliArrow<M>& a, const KleisliArrow<M>& b) {
  return compose(tensor(a, b), lift<M>(diagonal(a.src())));
}

/// The underlying map when every row is a unit, nullopt otherwise.
template <Monad M>
std::optional<DetMap> as_deterministic(const KleisliArrow<M>& a) {
  std::vector<std::size_t> table;
  table.reserve(a.src().size());
  for (const auto& r : a.rows()) {
    std::optional<std::size_t> only;
    bool single = true;
    M::for_each_point(r, [&](std::size_t y) {
      if (only) single = false;
      only = y;
    });
    if (!single || !only || !(r == M::unit(*only))) return std::nullopt;
    table.push_back(*only);
  }
  return DetMap(a.src(), a.dst(), std::move(table));
}

template <Monad M>
bool is_deterministic(const KleisliArrow<M>& a) {
  return as_deterministic(a).has_value();
}

/// Dense rows (probabilities, grades or 0/1) for printing and file output.
template <Monad M>
std::vector<std::vector<Rational>> dense_rows(const KleisliArrow<M>& a) {
  std::vector<std::vector<Rational>> out;
  for (const auto& r : a.rows()) out.push_back(to_dense<M>(r, a.dst().size()));
  return out;
}

template <Monad M>
KleisliArrow<M> arrow_from_dense(const FiniteSpace& src, const FiniteSpace& dst,
                                 const std::vector<std::vector<Rational>>& rows) {
  std::vector<Row<M>> out;
  for (std::size_t x = 0; x < rows.size(); ++x) {
    if (rows[x].size() != dst.size())
      throw MismatchError("row " + std::to_string(x + 1) + " has " + std::to_string(rows[x].size()) +
                          " entries, expected " + std::to_string(dst.size()));
    try {
      out.push_back(from_dense<M>(rows[x]));
    } catch (const ValidationError& e) {
      throw ValidationError("row " + std::to_string(x + 1) + ": " + e.what());
    }
  }
  return KleisliArrow<M>(src, dst, std::move(out));
}

}  // namespace itcat
