#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "itcat/error.hpp"

namespace itcat {

/// A finite labeled set. Plain spaces carry user labels, products are built
/// eagerly with lexicographic element order, and there is a single terminal
/// space `Z = {*}`. Values are immutable and cheap to copy.
class FiniteSpace {
 public:
  enum class Kind { plain, product, terminal };

  FiniteSpace() : node_(terminal_node()) {}

  static FiniteSpace plain(std::string label, std::size_t cardinality) {
    std::vector<std::string> elements;
    elements.reserve(cardinality);
    for (std::size_t i = 0; i < cardinality; ++i) elements.push_back(std::to_string(i));
    return plain(std::move(label), std::move(elements));
  }

  static FiniteSpace plain(std::string label, std::vector<std::string> elements) {
    if (elements.empty()) throw RangeError("space '" + label + "' must have at least one element");
    for (std::size_t i = 0; i < elements.size(); ++i)
      for (std::size_t j = i + 1; j < elements.size(); ++j)
        if (elements[i] == elements[j])
          throw ValidationError("space '" + label + "' has duplicate element '" + elements[i] + "'");
    auto node = std::make_shared<Node>();
    node->kind = Kind::plain;
    node->label = std::move(label);
    node->elements = std::move(elements);
    return FiniteSpace(std::move(node));
  }

  static FiniteSpace terminal() { return FiniteSpace(); }

  static FiniteSpace product(const FiniteSpace& left, const FiniteSpace& right) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::product;
    node->label = wrap(left) + "*" + wrap(right);
    node->elements.reserve(left.size() * right.size());
    for (const auto& x : left.elements())
      for (const auto& y : right.elements()) node->elements.push_back("(" + x + "," + y + ")");
    node->left = left.node_;
    node->right = right.node_;
    return FiniteSpace(std::move(node));
  }

  Kind kind() const noexcept { return node_->kind; }
  bool is_product() const noexcept { return node_->kind == Kind::product; }
  bool is_terminal() const noexcept { return node_->kind == Kind::terminal; }
  std::size_t size() const noexcept { return node_->elements.size(); }
  const std::string& label() const noexcept { return node_->label; }
  const std::vector<std::string>& elements() const noexcept { return node_->elements; }

  const std::string& element(std::size_t i) const {
    if (i >= size()) throw RangeError("element index " + std::to_string(i) + " out of range for " + label());
    return node_->elements[i];
  }

  FiniteSpace left() const {
    require_product();
    return FiniteSpace(node_->left);
  }

  FiniteSpace right() const {
    require_product();
    return FiniteSpace(node_->right);
  }

  std::size_t pair_index(std::size_t i, std::size_t j) const {
    require_product();
    return i * node_->right->elements.size() + j;
  }

  std::pair<std::size_t, std::size_t> unpair(std::size_t k) const {
    require_product();
    const std::size_t n = node_->right->elements.size();
    return {k / n, k % n};
  }

  friend bool operator==(const FiniteSpace& a, const FiniteSpace& b) { return same(a.node_.get(), b.node_.get()); }

 private:
  struct Node {
    Kind kind = Kind::terminal;
    std::string label;
    std::vector<std::string> elements;
    std::shared_ptr<const Node> left, right;
  };

  explicit FiniteSpace(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static std::shared_ptr<const Node> terminal_node() {
    static const std::shared_ptr<const Node> z = [] {
      auto node = std::make_shared<Node>();
      node->kind = Kind::terminal;
      node->label = "Z";
      node->elements = {"*"};
      return node;
    }();
    return z;
  }

  static std::string wrap(const FiniteSpace& s) { return s.is_product() ? "(" + s.label() + ")" : s.label(); }

  static bool same(const Node* a, const Node* b) {
    if (a == b) return true;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
      case Kind::terminal: return true;
      case Kind::plain: return a->label == b->label && a->elements == b->elements;
      case Kind::product: return same(a->left.get(), b->left.get()) && same(a->right.get(), b->right.get());
    }
    return false;
  }

  void require_product() const {
    if (!is_product()) throw MismatchError("space " + label() + " is not a product");
  }

  std::shared_ptr<const Node> node_;
};

inline FiniteSpace product_space(const FiniteSpace& a, const FiniteSpace& b) { return FiniteSpace::product(a, b); }

/// A morphism of the deterministic subcategory: a plain map between finite spaces.
class DetMap {
 public:
  DetMap(FiniteSpace src, FiniteSpace dst, std::vector<std::size_t> table)
      : src_(std::move(src)), dst_(std::move(dst)), table_(std::move(table)) {
    if (table_.size() != src_.size())
      throw MismatchError("map table has " + std::to_string(table_.size()) + " entries, source " + src_.label() +
                          " has " + std::to_string(src_.size()));
    for (std::size_t y : table_)
      if (y >= dst_.size()) throw RangeError("map entry " + std::to_string(y) + " out of range for " + dst_.label());
  }

  static DetMap identity(const FiniteSpace& a) {
    std::vector<std::size_t> t(a.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = i;
    return DetMap(a, a, std::move(t));
  }

  static DetMap constant(const FiniteSpace& src, const FiniteSpace& dst, std::size_t y) {
    return DetMap(src, dst, std::vector<std::size_t>(src.size(), y));
  }

  /// The unique map into the terminal space.
  static DetMap to_terminal(const FiniteSpace& src) { return constant(src, FiniteSpace::terminal(), 0); }

  const FiniteSpace& src() const noexcept { return src_; }
  const FiniteSpace& dst() const noexcept { return dst_; }
  const std::vector<std::size_t>& table() const noexcept { return table_; }

  std::size_t operator()(std::size_t x) const {
    if (x >= table_.size()) throw RangeError("element index " + std::to_string(x) + " out of range for " + src_.label());
    return table_[x];
  }

  bool is_bijective() const {
    if (src_.size() != dst_.size()) return false;
    std::vector<bool> hit(dst_.size(), false);
    for (std::size_t y : table_) {
      if (hit[y]) return false;
      hit[y] = true;
    }
    return true;
  }

  friend bool operator==(const DetMap& a, const DetMap& b) {
    return a.src_ == b.src_ && a.dst_ == b.dst_ && a.table_ == b.table_;
  }

 private:
  FiniteSpace src_, dst_;
  std::vector<std::size_t> table_;
};

/// g after f.
inline DetMap det_compose(const DetMap& g, const DetMap& f) {
  if (!(f.dst() == g.src()))
    throw MismatchError("cannot compose: " + f.dst().label() + " is not " + g.src().label());
  std::vector<std::size_t> t(f.src().size());
  for (std::size_t x = 0; x < t.size(); ++x) t[x] = g.table()[f.table()[x]];
  return DetMap(f.src(), g.dst(), std::move(t));
}

/// The pairing `a*b`, the unique map with `pi.(a*b) = a` and `nu.(a*b) = b`.
inline DetMap det_product(const DetMap& a, const DetMap& b) {
  if (!(a.src() == b.src()))
    throw MismatchError("cannot pair maps with sources " + a.src().label() + " and " + b.src().label());
  FiniteSpace dst = product_space(a.dst(), b.dst());
  std::vector<std::size_t> t(a.src().size());
  for (std::size_t x = 0; x < t.size(); ++x) t[x] = dst.pair_index(a.table()[x], b.table()[x]);
  return DetMap(a.src(), std::move(dst), std::move(t));
}

/// Functorial product `f#g : A*B -> C*D` of deterministic maps.
inline DetMap det_tensor(const DetMap& f, const DetMap& g) {
  FiniteSpace src = product_space(f.src(), g.src());
  FiniteSpace dst = product_space(f.dst(), g.dst());
  std::vector<std::size_t> t(src.size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    auto [x, y] = src.unpair(k);
    t[k] = dst.pair_index(f.table()[x], g.table()[y]);
  }
  return DetMap(std::move(src), std::move(dst), std::move(t));
}

enum class CanonicalIso { pi, nu, sigma, alpha, lambda, rho, delta };

inline std::size_t canonical_arity(CanonicalIso which) {
  switch (which) {
    case CanonicalIso::pi:
    case CanonicalIso::nu:
    case CanonicalIso::sigma: return 2;
    case CanonicalIso::alpha: return 3;
    default: return 1;
  }
}

inline const char* canonical_name(CanonicalIso which) {
  switch (which) {
    case CanonicalIso::pi: return "pi";
    case CanonicalIso::nu: return "nu";
    case CanonicalIso::sigma: return "sigma";
    case CanonicalIso::alpha: return "alpha";
    case CanonicalIso::lambda: return "lambda";
    case CanonicalIso::rho: return "rho";
    case CanonicalIso::delta: return "delta";
  }
  return "?";
}

/// Structural maps of the deterministic subcategory.
///   pi, nu    : A*B -> A, A*B -> B            (spaces A, B)
///   sigma     : A*B -> B*A                    (spaces A, B)
///   alpha     : (A*B)*C -> A*(B*C)            (spaces A, B, C)
///   lambda    : Z*A -> A,  rho : A*Z -> A     (space A)
///   delta     : C -> C*C                      (space C)
inline DetMap canonical_iso(CanonicalIso which, std::span<const FiniteSpace> spaces) {
  if (spaces.size() != canonical_arity(which))
    throw MismatchError(std::string(canonical_name(which)) + " expects " + std::to_string(canonical_arity(which)) +
                        " spaces, got " + std::to_string(spaces.size()));
  const FiniteSpace z = FiniteSpace::terminal();
  switch (which) {
    case CanonicalIso::pi:
    case CanonicalIso::nu: {
      FiniteSpace src = product_space(spaces[0], spaces[1]);
      std::vector<std::size_t> t(src.size());
      for (std::size_t k = 0; k < t.size(); ++k) {
        auto [x, y] = src.unpair(k);
        t[k] = which == CanonicalIso::pi ? x : y;
      }
      return DetMap(src, which == CanonicalIso::pi ? spaces[0] : spaces[1], std::move(t));
    }
    case CanonicalIso::sigma: {
      FiniteSpace src = product_space(spaces[0], spaces[1]);
      FiniteSpace dst = product_space(spaces[1], spaces[0]);
      std::vector<std::size_t> t(src.size());
      for (std::size_t k = 0; k < t.size(); ++k) {
        auto [x, y] = src.unpair(k);
        t[k] = dst.pair_index(y, x);
      }
      return DetMap(std::move(src), std::move(dst), std::move(t));
    }
    case CanonicalIso::alpha: {
      FiniteSpace ab = product_space(spaces[0], spaces[1]);
      FiniteSpace bc = product_space(spaces[1], spaces[2]);
      FiniteSpace src = product_space(ab, spaces[2]);
      FiniteSpace dst = product_space(spaces[0], bc);
      std::vector<std::size_t> t(src.size());
      for (std::size_t k = 0; k < t.size(); ++k) {
        auto [xy, w] = src.unpair(k);
        auto [x, y] = ab.unpair(xy);
        t[k] = dst.pair_index(x, bc.pair_index(y, w));
      }
      return DetMap(std::move(src), std::move(dst), std::move(t));
    }
    case CanonicalIso::lambda: {
      FiniteSpace src = product_space(z, spaces[0]);
      std::vector<std::size_t> t(src.size());
      for (std::size_t k = 0; k < t.size(); ++k) t[k] = src.unpair(k).second;
      return DetMap(std::move(src), spaces[0], std::move(t));
    }
    case CanonicalIso::rho: {
      FiniteSpace src = product_space(spaces[0], z);
      std::vector<std::size_t> t(src.size());
      for (std::size_t k = 0; k < t.size(); ++k) t[k] = src.unpair(k).first;
      return DetMap(std::move(src), spaces[0], std::move(t));
    }
    case CanonicalIso::delta: {
      auto id = DetMap::identity(spaces[0]);
      return det_product(id, id);
    }
  }
  throw MismatchError("unknown canonical map");
}

inline DetMap projection_left(const FiniteSpace& a, const FiniteSpace& b) {
  const FiniteSpace s[] = {a, b};
  return canonical_iso(CanonicalIso::pi, s);
}

inline DetMap projection_right(const FiniteSpace& a, const FiniteSpace& b) {
  const FiniteSpace s[] = {a, b};
  return canonical_iso(CanonicalIso::nu, s);
}

inline DetMap swap_map(const FiniteSpace& a, const FiniteSpace& b) {
  const FiniteSpace s[] = {a, b};
  return canonical_iso(CanonicalIso::sigma, s);
}

inline DetMap associator(const FiniteSpace& a, const FiniteSpace& b, const FiniteSpace& c) {
  const FiniteSpace s[] = {a, b, c};
  return canonical_iso(CanonicalIso::alpha, s);
}

inline DetMap diagonal(const FiniteSpace& c) {
  const FiniteSpace s[] = {c};
  return canonical_iso(CanonicalIso::delta, s);
}

/// Calls `f(map)` for every map src -> dst, in odometer order over the table.
template <class F>
void for_each_det_map(const FiniteSpace& src, const FiniteSpace& dst, F&& f) {
  std::vector<std::size_t> t(src.size(), 0);
  while (true) {
    f(DetMap(src, dst, t));
    std::size_t i = 0;
    while (i < t.size() && ++t[i] == dst.size()) t[i++] = 0;
    if (i == t.size()) return;
  }
}

}  // namespace itcat
