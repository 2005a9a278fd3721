#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "itcat/error.hpp"
#include "itcat/kleisli.hpp"
#include "itcat/monads.hpp"
#include "itcat/sampling.hpp"
#include "itcat/space.hpp"

namespace itcat {

/// Accuracy relation on hom-sets. `pointwise` is subset inclusion for
/// multivalued arrows and grade-wise <= for fuzzy ones; for probability and
/// deterministic arrows it coincides with equality.
enum class Accuracy { equality, pointwise };

inline std::string_view accuracy_name(Accuracy rel) { return rel == Accuracy::equality ? "equality" : "pointwise"; }

inline std::optional<Accuracy> parse_accuracy(std::string_view s) {
  if (s == "equality") return Accuracy::equality;
  if (s == "pointwise") return Accuracy::pointwise;
  return std::nullopt;
}

/// `a` at least as accurate as `b` at a single source element.
template <Monad M>
bool row_accuracy_le(Accuracy rel, const Row<M>& a, const Row<M>& b) {
  return rel == Accuracy::equality ? a == b : M::le(a, b);
}

/// `a` more accurate than `b` (written a >=acc b).
template <Monad M>
bool accuracy_le(Accuracy rel, const KleisliArrow<M>& a, const KleisliArrow<M>& b) {
  if (!(a.src() == b.src()) || !(a.dst() == b.dst()))
    throw MismatchError("accuracy compares arrows of one hom-set, got " + a.src().label() + "->" + a.dst().label() +
                        " and " + b.src().label() + "->" + b.dst().label());
  for (std::size_t x = 0; x < a.src().size(); ++x)
    if (!row_accuracy_le<M>(rel, a.rows()[x], b.rows()[x])) return false;
  return true;
}

struct SearchOptions {
  /// Denominator bound of grid rows tried for probability and fuzzy witnesses.
  std::size_t grid_denominator = 4;
  /// Backtracking nodes before the search gives up.
  std::size_t node_limit = 2'000'000;
};

template <Monad M>
struct InfoVerdict {
  bool holds = false;
  /// A negative verdict is a proof only when the search covered the whole hom-set.
  bool exhaustive = false;
  std::optional<KleisliArrow<M>> witness;

  std::string_view label() const { return holds ? "YES" : exhaustive ? "NO" : "NO-WITHIN-SEARCH"; }
};

namespace detail {

/// Can `r`, weighted by `w`, be one contribution to a row that is at most `bx`?
/// Aggregation is monotone in every monad here, so this is necessary for c.a <=acc b.
template <Monad M>
bool contribution_fits(const typename M::weight& w, const Row<M>& r, const Row<M>& bx) {
  using S = typename M::weights;
  for (const auto& [z, u] : r) {
    const auto* bz = bx.weight_of(z);
    if (!bz) return false;
    if constexpr (!std::is_same_v<typename M::weight, Unit>) {
      if (*bz < S::times(w, u)) return false;
    }
  }
  return true;
}

template <Monad M>
void add_unique(std::vector<Row<M>>& rows, const Row<M>& r) {
  if (std::find(rows.begin(), rows.end(), r) == rows.end()) rows.push_back(r);
}

template <Monad M>
bool witness_ok(Accuracy rel, const KleisliArrow<M>& c, const KleisliArrow<M>& a, const KleisliArrow<M>& b) {
  return accuracy_le(rel, compose(c, a), b);
}

}  // namespace detail

/// Searches for `c : a.dst -> b.dst` with `c . a` at least as accurate as `b`.
/// Enumerable monads are searched completely by backtracking over rows of `c`,
/// pruned by each row's contribution bound. Other monads try, in order: lifted
/// maps, arrows from `pool`, two-step composites of those, and then rows of `c`
/// drawn from a rational grid together with the rows of `b` and of `pool`.
template <Monad M>
InfoVerdict<M> more_informative(Accuracy rel, const KleisliArrow<M>& a, const KleisliArrow<M>& b,
                                const std::vector<KleisliArrow<M>>& pool = {}, const SearchOptions& opt = {}) {
  if (!(a.src() == b.src()))
    throw MismatchError("informativeness compares arrows with one source, got " + a.src().label() + " and " +
                        b.src().label());
  const FiniteSpace& A = a.dst();
  const FiniteSpace& B = b.dst();
  InfoVerdict<M> out;

  if constexpr (!M::enumerable) {
    std::vector<KleisliArrow<M>> direct;
    if (A.size() <= 6 && B.size() <= 6 && std::pow(double(B.size()), double(A.size())) <= 4096)
      for_each_det_map(A, B, [&](const DetMap& f) { direct.push_back(lift<M>(f)); });
    for (const auto& p : pool)
      if (p.src() == A && p.dst() == B) direct.push_back(p);
    for (const auto& c : direct)
      if (detail::witness_ok(rel, c, a, b)) {
        out.holds = true;
        out.witness = c;
        return out;
      }
    for (const auto& c1 : pool) {
      if (!(c1.src() == A)) continue;
      for (const auto& c2 : pool) {
        if (!(c2.src() == c1.dst()) || !(c2.dst() == B)) continue;
        auto c = compose(c2, c1);
        if (detail::witness_ok(rel, c, a, b)) {
          out.holds = true;
          out.witness = c;
          return out;
        }
      }
    }
  }

  // Candidate rows for c, shared by all y.
  std::vector<Row<M>> base;
  if constexpr (M::enumerable) {
    base = all_rows<M>(B.size());
  } else {
    for (std::size_t z = 0; z < B.size(); ++z) detail::add_unique<M>(base, M::unit(z));
    for (const auto& r : b.rows()) detail::add_unique<M>(base, r);
    for (const auto& p : pool)
      if (p.dst() == B)
        for (const auto& r : p.rows()) detail::add_unique<M>(base, r);
    for (const auto& r : grid_rows<M>(B.size(), opt.grid_denominator)) detail::add_unique<M>(base, r);
  }

  const std::size_t n = A.size();
  std::vector<std::vector<std::size_t>> touching(n);  // x with y in supp a(x)
  std::vector<std::vector<std::size_t>> check_at(n);  // x whose last support point is y
  for (std::size_t x = 0; x < a.src().size(); ++x) {
    std::size_t last = 0;
    M::for_each_point(a.rows()[x], [&](std::size_t y) {
      touching[y].push_back(x);
      last = std::max(last, y);
    });
    check_at[last].push_back(x);
  }

  std::vector<std::vector<const Row<M>*>> cand(n);
  for (std::size_t y = 0; y < n; ++y) {
    if (touching[y].empty()) {
      cand[y].push_back(&base.front());
      continue;
    }
    for (const auto& r : base) {
      bool fits = true;
      for (std::size_t x : touching[y]) {
        if constexpr (M::tag == MonadTag::identity) {
          fits = fits && r == b.rows()[x];
        } else {
          fits = fits && detail::contribution_fits<M>(*a.rows()[x].weight_of(y), r, b.rows()[x]);
        }
        if (!fits) break;
      }
      if (fits) cand[y].push_back(&r);
    }
    if (cand[y].empty()) {
      out.exhaustive = M::enumerable;
      return out;
    }
  }

  std::vector<const Row<M>*> chosen(n, nullptr);
  std::size_t nodes = 0;
  bool aborted = false;
  auto row_ok = [&](std::size_t x) {
    auto r = M::template bind<std::size_t>(a.rows()[x], [&](std::size_t y) -> const Row<M>& { return *chosen[y]; });
    return row_accuracy_le<M>(rel, r, b.rows()[x]);
  };
  auto dfs = [&](auto&& self, std::size_t y) -> bool {
    if (y == n) return true;
    for (const Row<M>* r : cand[y]) {
      if (++nodes > opt.node_limit) {
        aborted = true;
        return false;
      }
      chosen[y] = r;
      bool ok = true;
      for (std::size_t x : check_at[y])
        if (!row_ok(x)) {
          ok = false;
          break;
        }
      if (ok && self(self, y + 1)) return true;
      if (aborted) return false;
    }
    return false;
  };
  if (dfs(dfs, 0)) {
    std::vector<Row<M>> rows;
    rows.reserve(n);
    for (const auto* r : chosen) rows.push_back(*r);
    out.holds = true;
    out.witness = KleisliArrow<M>(A, B, std::move(rows));
    return out;
  }
  out.exhaustive = M::enumerable && !aborted;
  return out;
}

enum class Comparison { more, less, equivalent, incomparable };

inline std::string_view comparison_name(Comparison c) {
  switch (c) {
    case Comparison::more: return "MORE";
    case Comparison::less: return "LESS";
    case Comparison::equivalent: return "EQUIVALENT";
    case Comparison::incomparable: return "INCOMPARABLE";
  }
  return "?";
}

template <Monad M>
struct ComparisonResult {
  Comparison verdict = Comparison::incomparable;
  InfoVerdict<M> forward;   // a >= b
  InfoVerdict<M> backward;  // b >= a
  /// Every negative half of the verdict is backed by a complete search.
  bool exhaustive() const {
    return (forward.holds || forward.exhaustive) && (backward.holds || backward.exhaustive);
  }
};

template <Monad M>
ComparisonResult<M> compare_informativeness(Accuracy rel, const KleisliArrow<M>& a, const KleisliArrow<M>& b,
                                            const std::vector<KleisliArrow<M>>& pool = {},
                                            const SearchOptions& opt = {}) {
  ComparisonResult<M> r;
  r.forward = more_informative(rel, a, b, pool, opt);
  r.backward = more_informative(rel, b, a, pool, opt);
  if (r.forward.holds && r.backward.holds)
    r.verdict = Comparison::equivalent;
  else if (r.forward.holds)
    r.verdict = Comparison::more;
  else if (r.backward.holds)
    r.verdict = Comparison::less;
  else
    r.verdict = Comparison::incomparable;
  return r;
}

// ---------------------------------------------------------------------------
// Coverings of the source set by multivalued arrows.

enum class CoveringMode { weak, strong };

/// Subsets of the ground set {0..ground-1} are bitmasks.
struct Covering {
  std::size_t ground = 0;
  CoveringMode mode = CoveringMode::weak;
  /// Maximal members; the weak family is their downward closure.
  std::vector<std::uint64_t> maximal;
  /// Strong mode only: the members, listed explicitly.
  std::vector<std::uint64_t> family;
};

inline constexpr std::size_t kMaxCoveringGround = 20;

inline bool subset_of(std::uint64_t a, std::uint64_t b) { return (a & ~b) == 0; }

inline std::string describe_subset(std::uint64_t s, std::size_t ground) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < ground; ++i)
    if (s >> i & 1) {
      if (!first) out += ",";
      first = false;
      out += std::to_string(i);
    }
  return out + "}";
}

inline std::string describe(const Covering& c) {
  const auto& sets = c.mode == CoveringMode::weak ? c.maximal : c.family;
  std::string out = "{";
  for (std::size_t i = 0; i < sets.size(); ++i) out += (i ? "," : "") + describe_subset(sets[i], c.ground);
  return out + "}";
}

/// Preimages a^-(y) = {x : y in a(x)}, nonempty ones only, sorted and deduplicated.
inline std::vector<std::uint64_t> covering_generators(const KleisliArrow<PowersetMonad>& a) {
  if (a.src().size() > kMaxCoveringGround) throw RangeError("covering needs a source of at most 20 elements");
  std::vector<std::uint64_t> pre(a.dst().size(), 0);
  for (std::size_t x = 0; x < a.src().size(); ++x)
    for (const auto& e : a.rows()[x]) pre[e.first] |= std::uint64_t{1} << x;
  std::erase(pre, 0);
  std::sort(pre.begin(), pre.end());
  pre.erase(std::unique(pre.begin(), pre.end()), pre.end());
  return pre;
}

inline std::vector<std::uint64_t> maximal_sets(std::vector<std::uint64_t> sets) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t s : sets) {
    bool dominated = false;
    for (std::uint64_t t : sets)
      if (t != s && subset_of(s, t)) dominated = true;
    if (!dominated) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Weak mode keeps the maximal generators. Strong mode lists every union of
/// generators that fits inside a single generator.
inline Covering covering_of(const KleisliArrow<PowersetMonad>& a, CoveringMode mode) {
  Covering c;
  c.ground = a.src().size();
  c.mode = mode;
  auto gens = covering_generators(a);
  c.maximal = maximal_sets(gens);
  if (mode == CoveringMode::strong) {
    std::set<std::uint64_t> family;
    for (std::uint64_t top : c.maximal) {
      std::vector<std::uint64_t> inside;
      for (std::uint64_t g : gens)
        if (subset_of(g, top)) inside.push_back(g);
      if (inside.size() > kMaxCoveringGround) throw RangeError("too many generators for an explicit strong family");
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << inside.size()); ++mask) {
        std::uint64_t u = 0;
        for (std::size_t i = 0; i < inside.size(); ++i)
          if (mask >> i & 1) u |= inside[i];
        family.insert(u);
      }
    }
    c.family.assign(family.begin(), family.end());
  }
  return c;
}

/// `p1` more informative than `p2`.
inline bool covering_le(const Covering& p1, const Covering& p2) {
  if (p1.ground != p2.ground || p1.mode != p2.mode) throw MismatchError("coverings differ in ground set or mode");
  if (p1.mode == CoveringMode::weak) {
    for (std::uint64_t a : p1.maximal)
      if (std::none_of(p2.maximal.begin(), p2.maximal.end(), [&](std::uint64_t b) { return subset_of(a, b); }))
        return false;
    return true;
  }
  for (std::uint64_t a : p1.family)
    if (std::none_of(p2.family.begin(), p2.family.end(), [&](std::uint64_t b) { return subset_of(a, b); }))
      return false;
  for (std::uint64_t b : p2.family) {
    std::uint64_t u = 0;
    for (std::uint64_t a : p1.family)
      if (subset_of(a, b)) u |= a;
    if (u != b) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Equivalence classes and their monoid.

/// A partition as a restricted growth string: block index of each element,
/// blocks numbered in order of first appearance.
using Partition = std::vector<std::size_t>;

inline Partition canonical_partition(const std::vector<std::size_t>& labels) {
  std::map<std::size_t, std::size_t> block;
  Partition p(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, fresh] = block.try_emplace(labels[i], block.size());
    p[i] = it->second;
  }
  return p;
}

inline std::vector<Partition> all_partitions(std::size_t n) {
  std::vector<Partition> out;
  if (n == 0) return out;
  Partition p(n, 0);
  auto rec = [&](auto&& self, std::size_t i, std::size_t blocks) -> void {
    if (i == n) {
      out.push_back(p);
      return;
    }
    for (std::size_t b = 0; b <= blocks; ++b) {
      p[i] = b;
      self(self, i + 1, std::max(blocks, b + 1));
    }
  };
  p[0] = 0;
  rec(rec, 1, 1);
  return out;
}

/// Every block of `p` lies inside a block of `q`.
inline bool refines(const Partition& p, const Partition& q) {
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] == p[j] && q[i] != q[j]) return false;
  return true;
}

inline Partition common_refinement(const Partition& p, const Partition& q) {
  if (p.size() != q.size()) throw MismatchError("partitions of different sets");
  std::vector<std::size_t> labels(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) labels[i] = p[i] * p.size() + q[i];
  return canonical_partition(labels);
}

inline Partition kernel_partition(const DetMap& f) { return canonical_partition(f.table()); }

inline std::string describe_partition(const Partition& p) {
  std::size_t blocks = 0;
  for (std::size_t b : p) blocks = std::max(blocks, b + 1);
  std::string out = "{";
  for (std::size_t b = 0; b < blocks; ++b) {
    out += b ? ",{" : "{";
    bool first = true;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p[i] == b) {
        out += (first ? "" : ",") + std::to_string(i);
        first = false;
      }
    out += "}";
  }
  return out + "}";
}

/// Classes of arrows out of a fixed source, with more[i][j] meaning class i is
/// more informative than class j, and product[i][j] the class of the product.
struct InfoClassMonoid {
  std::vector<std::string> labels;
  std::vector<std::vector<bool>> more;
  std::vector<std::vector<std::size_t>> product;
  std::size_t zero = 0;
  std::size_t one = 0;

  std::size_t size() const noexcept { return labels.size(); }
};

/// Classes of deterministic arrows: partitions ordered by refinement, multiplied by common refinement.
inline InfoClassMonoid partition_monoid(std::size_t n) {
  if (n == 0 || n > 6) throw RangeError("partition monoid supports 1 to 6 elements, got " + std::to_string(n));
  auto parts = all_partitions(n);
  InfoClassMonoid m;
  const std::size_t k = parts.size();
  m.more.assign(k, std::vector<bool>(k));
  m.product.assign(k, std::vector<std::size_t>(k));
  for (const auto& p : parts) m.labels.push_back(describe_partition(p));
  auto index_of = [&](const Partition& p) {
    return static_cast<std::size_t>(std::find(parts.begin(), parts.end(), p) - parts.begin());
  };
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      m.more[i][j] = refines(parts[i], parts[j]);
      m.product[i][j] = index_of(common_refinement(parts[i], parts[j]));
    }
  m.zero = index_of(Partition(n, 0));
  Partition discrete(n);
  for (std::size_t i = 0; i < n; ++i) discrete[i] = i;
  m.one = index_of(discrete);
  return m;
}

/// Names of violated monoid properties: partial order, commutative and
/// associative product, neutral bottom, absorbing top, product above factors,
/// and monotone product.
inline std::vector<std::string> check_monoid_properties(const InfoClassMonoid& m) {
  std::vector<std::string> bad;
  const std::size_t k = m.size();
  auto ge = [&](std::size_t i, std::size_t j) { return bool(m.more[i][j]); };
  auto note = [&](const std::string& what) {
    if (std::find(bad.begin(), bad.end(), what) == bad.end()) bad.push_back(what);
  };
  for (std::size_t i = 0; i < k; ++i) {
    if (!ge(i, i)) note("reflexive");
    if (m.product[m.zero][i] != i) note("zero-neutral");
    if (m.product[m.one][i] != m.one) note("one-absorbing");
    if (!ge(i, m.zero) || !ge(m.one, i)) note("bounds");
    for (std::size_t j = 0; j < k; ++j) {
      if (i != j && ge(i, j) && ge(j, i)) note("antisymmetric");
      if (m.product[i][j] != m.product[j][i]) note("commutative");
      if (!ge(m.product[i][j], i) || !ge(m.product[i][j], j)) note("product-above-factors");
      for (std::size_t l = 0; l < k; ++l) {
        if (ge(i, j) && ge(j, l) && !ge(i, l)) note("transitive");
        if (m.product[m.product[i][j]][l] != m.product[i][m.product[j][l]]) note("associative");
        for (std::size_t e = 0; e < k; ++e)
          if (ge(i, j) && ge(l, e) && !ge(m.product[i][l], m.product[j][e])) note("monotone");
      }
    }
  }
  return bad;
}

template <Monad M>
struct SearchedClasses {
  InfoClassMonoid monoid;
  std::vector<KleisliArrow<M>> representatives;
};

/// Informativeness classes of all arrows from `d` into spaces of cardinality
/// up to `max_dst_card`, closed under products, computed by witness search.
template <Monad M>
SearchedClasses<M> class_monoid_by_search(const FiniteSpace& d, std::size_t max_dst_card, Accuracy rel,
                                          const SearchOptions& opt = {}) {
  static_assert(M::enumerable, "class enumeration needs complete witness search");
  SearchedClasses<M> out;
  auto& reps = out.representatives;
  auto equivalent = [&](const KleisliArrow<M>& x, const KleisliArrow<M>& y) {
    auto f = more_informative(rel, x, y, {}, opt);
    if (!f.exhaustive && !f.holds) throw RangeError("witness search incomplete while classifying arrows");
    if (!f.holds) return false;
    auto g = more_informative(rel, y, x, {}, opt);
    if (!g.exhaustive && !g.holds) throw RangeError("witness search incomplete while classifying arrows");
    return g.holds;
  };
  auto class_of = [&](const KleisliArrow<M>& x) {
    for (std::size_t i = 0; i < reps.size(); ++i)
      if (equivalent(x, reps[i])) return i;
    reps.push_back(x);
    return reps.size() - 1;
  };
  const std::size_t zero = class_of(terminal_arrow<M>(d));
  const std::size_t one = class_of(identity_arrow<M>(d));
  for (std::size_t k = 1; k <= max_dst_card; ++k)
    for_each_arrow<M>(d, FiniteSpace::plain("B" + std::to_string(k), k), [&](const KleisliArrow<M>& x) { class_of(x); });

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> prod;
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (std::size_t j = 0; j < reps.size(); ++j)
        if (!prod.count({i, j})) {
          auto p = product(reps[i], reps[j]);
          prod[{i, j}] = class_of(p);
          grew = true;
        }
  }
  auto& m = out.monoid;
  m.zero = zero;
  m.one = one;
  const std::size_t k = reps.size();
  m.product.assign(k, std::vector<std::size_t>(k));
  for (const auto& [ij, c] : prod) m.product[ij.first][ij.second] = c;
  m.more.assign(k, std::vector<bool>(k));
  for (std::size_t i = 0; i < k; ++i) {
    m.labels.push_back(describe(reps[i]));
    for (std::size_t j = 0; j < k; ++j) m.more[i][j] = more_informative(rel, reps[i], reps[j], {}, opt).holds;
  }
  return out;
}

}  // namespace itcat
