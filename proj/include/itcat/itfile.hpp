#pragma once

#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "itcat/bayes.hpp"
#include "itcat/error.hpp"
#include "itcat/kleisli.hpp"
#include "itcat/linear.hpp"
#include "itcat/monads.hpp"
#include "itcat/rational.hpp"
#include "itcat/space.hpp"

namespace itcat {

/// Calls `f(std::type_identity<M>{})` with the monad named by `tag`.
template <class F>
decltype(auto) visit_monad(MonadTag tag, F&& f) {
  switch (tag) {
    case MonadTag::identity: return f(std::type_identity<IdentityMonad>{});
    case MonadTag::probability: return f(std::type_identity<ProbabilityMonad>{});
    case MonadTag::powerset: return f(std::type_identity<PowersetMonad>{});
    case MonadTag::fuzzy_min: return f(std::type_identity<FuzzyMinMonad>{});
    case MonadTag::fuzzy_prod: return f(std::type_identity<FuzzyProdMonad>{});
  }
  throw UnsupportedError("unknown category");
}

/// Contents of an IT description file.
///
///   # comment
///   category stochastic            identity|set, probability|stochastic,
///                                  powerset|multivalued, fuzzy-min, fuzzy-prod, linear
///   object D 2                     finite categories
///   space X 2                      linear category
///   arrow a D R                    then |D| rows of |R| entries
///   1/2 1/2
///   0 1
///   utility u D U                  then |D| rows of |U| rationals
///
/// Linear arrows list `A` and its rows (dst x src) and then `Sigma` and its
/// rows (dst x dst). Spaces may be written as products `D*R` and the terminal
/// space is `Z`.
struct ItFile {
  struct Object {
    std::string name;
    std::size_t size = 0;
    friend bool operator==(const Object&, const Object&) = default;
  };
  struct Arrow {
    std::string name, src, dst;
    std::vector<std::vector<Rational>> rows;  // finite categories
    Matrix A, Sigma;                          // linear category
    std::size_t line = 0;
  };
  struct Utility {
    std::string name, signals, decisions;
    std::vector<std::vector<Rational>> rows;
    std::size_t line = 0;
  };

  /// nullopt for the linear category.
  std::optional<MonadTag> monad;
  std::vector<Object> objects;
  std::vector<Arrow> arrows;
  std::vector<Utility> utilities;

  bool linear() const noexcept { return !monad.has_value(); }
  std::string category_name() const { return monad ? std::string(monad_tag_name(*monad)) : std::string("linear"); }

  const Arrow& arrow_decl(std::string_view name) const {
    for (const auto& a : arrows)
      if (a.name == name) return a;
    throw ValidationError("no arrow named '" + std::string(name) + "'");
  }

  const Utility& utility_decl(std::string_view name) const {
    for (const auto& u : utilities)
      if (u.name == name) return u;
    throw ValidationError("no utility named '" + std::string(name) + "'");
  }

  /// Finite space for a space expression: an object name, `Z`, or a product `X*Y`.
  FiniteSpace space(std::string_view expr) const {
    std::size_t pos = 0;
    FiniteSpace s = parse_product(expr, pos);
    if (pos != expr.size()) throw ValidationError("malformed space '" + std::string(expr) + "'");
    return s;
  }

  /// Dimension of a linear space expression.
  Eigen::Index dimension(std::string_view expr) const {
    if (expr == "Z") return 0;
    Eigen::Index total = 0;
    std::size_t start = 0;
    while (start <= expr.size()) {
      std::size_t star = expr.find('*', start);
      std::string_view part = expr.substr(start, star == std::string_view::npos ? std::string_view::npos : star - start);
      if (part != "Z") total += static_cast<Eigen::Index>(object(part).size);
      if (star == std::string_view::npos) break;
      start = star + 1;
    }
    return total;
  }

  template <Monad M>
  KleisliArrow<M> arrow(std::string_view name) const {
    if (!monad || *monad != M::tag) throw MismatchError("file category is " + category_name());
    const Arrow& a = arrow_decl(name);
    return arrow_from_dense<M>(space(a.src), space(a.dst), a.rows);
  }

  LinearIT linear_arrow(std::string_view name) const {
    if (!linear()) throw MismatchError("file category is " + category_name());
    const Arrow& a = arrow_decl(name);
    return LinearIT(a.A, a.Sigma);
  }

  template <Monad M>
  DecisionProblem<M> problem(std::string_view utility, std::optional<KleisliArrow<M>> prior = std::nullopt) const {
    const Utility& u = utility_decl(utility);
    return DecisionProblem<M>(space(u.signals), space(u.decisions), u.rows, std::move(prior));
  }

  friend bool operator==(const ItFile& x, const ItFile& y) {
    if (x.monad != y.monad || x.objects != y.objects || x.arrows.size() != y.arrows.size() ||
        x.utilities.size() != y.utilities.size())
      return false;
    for (std::size_t i = 0; i < x.arrows.size(); ++i) {
      const auto &a = x.arrows[i], &b = y.arrows[i];
      if (a.name != b.name || a.src != b.src || a.dst != b.dst || a.rows != b.rows) return false;
      if (a.A.rows() != b.A.rows() || a.A.cols() != b.A.cols() || a.A != b.A) return false;
      if (a.Sigma.rows() != b.Sigma.rows() || a.Sigma.cols() != b.Sigma.cols() || a.Sigma != b.Sigma) return false;
    }
    for (std::size_t i = 0; i < x.utilities.size(); ++i) {
      const auto &a = x.utilities[i], &b = y.utilities[i];
      if (a.name != b.name || a.signals != b.signals || a.decisions != b.decisions || a.rows != b.rows) return false;
    }
    return true;
  }

 private:
  const Object& object(std::string_view name) const {
    for (const auto& o : objects)
      if (o.name == name) return o;
    throw ValidationError("unknown space '" + std::string(name) + "'");
  }

  FiniteSpace parse_product(std::string_view expr, std::size_t& pos) const {
    FiniteSpace s = parse_factor(expr, pos);
    while (pos < expr.size() && expr[pos] == '*') {
      ++pos;
      s = product_space(s, parse_factor(expr, pos));
    }
    return s;
  }

  FiniteSpace parse_factor(std::string_view expr, std::size_t& pos) const {
    if (pos < expr.size() && expr[pos] == '(') {
      ++pos;
      FiniteSpace s = parse_product(expr, pos);
      if (pos >= expr.size() || expr[pos] != ')') throw ValidationError("unbalanced parentheses in '" + std::string(expr) + "'");
      ++pos;
      return s;
    }
    std::size_t end = expr.find_first_of("*()", pos);
    if (end == std::string_view::npos) end = expr.size();
    std::string_view name = expr.substr(pos, end - pos);
    pos = end;
    if (name.empty()) throw ValidationError("malformed space '" + std::string(expr) + "'");
    if (name == "Z") return FiniteSpace::terminal();
    return FiniteSpace::plain(std::string(name), object(name).size);
  }
};

namespace detail {

inline std::vector<std::string> tokens(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

inline bool valid_name(std::string_view s) {
  if (s.empty() || s == "Z") return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) return false;
  return true;
}

inline double parse_real(const std::string& t, std::size_t line) {
  if (auto r = parse_rational(t)) return r->get_d();
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v)) throw ParseError(line, "not a number: '" + t + "'");
  return v;
}

inline std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

/// Parses and validates an IT file.
inline ItFile parse_it_file(std::string_view text) {
  ItFile f;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> lines;
  {
    std::size_t n = 0, start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      ++n;
      auto t = detail::tokens(text.substr(start, end - start));
      if (!t.empty()) lines.emplace_back(n, std::move(t));
      if (end == text.size()) break;
      start = end + 1;
    }
  }
  bool have_category = false;
  std::map<std::string, bool> names;
  auto claim = [&](const std::string& name, std::size_t line) {
    if (!detail::valid_name(name)) throw ParseError(line, "invalid name '" + name + "'");
    if (!names.emplace(name, true).second) throw ParseError(line, "name '" + name + "' declared twice");
  };
  auto need_category = [&](std::size_t line) {
    if (!have_category) throw ParseError(line, "the first declaration must be 'category <tag>'");
  };
  auto resolve = [&](const std::string& expr, std::size_t line) {
    try {
      if (f.linear()) return static_cast<std::size_t>(f.dimension(expr));
      return f.space(expr).size();
    } catch (const Error& e) {
      throw ParseError(line, e.what());
    }
  };

  std::size_t i = 0;
  auto rows_of = [&](std::size_t count, std::size_t width, std::size_t decl_line, const std::string& what) {
    std::vector<std::vector<std::string>> out;
    for (std::size_t r = 0; r < count; ++r) {
      if (i >= lines.size()) throw ParseError(decl_line, what + " needs " + std::to_string(count) + " rows");
      const auto& [ln, t] = lines[i];
      if (t.size() != width)
        throw ParseError(ln, "row " + std::to_string(r + 1) + " of " + what + " has " + std::to_string(t.size()) +
                                 " entries, expected " + std::to_string(width));
      out.push_back(t);
      ++i;
    }
    return out;
  };

  while (i < lines.size()) {
    const auto [ln, t] = lines[i++];
    const std::string& kw = t[0];
    if (kw == "category") {
      if (have_category) throw ParseError(ln, "category declared twice");
      if (t.size() != 2) throw ParseError(ln, "usage: category <tag>");
      if (t[1] == "linear") {
        f.monad.reset();
      } else if (auto tag = parse_monad_tag(t[1])) {
        f.monad = *tag;
      } else {
        throw ParseError(ln, "unknown category '" + t[1] + "'");
      }
      have_category = true;
    } else if (kw == "object" || kw == "space") {
      need_category(ln);
      if (f.linear() != (kw == "space"))
        throw ParseError(ln, f.linear() ? "linear files declare 'space <name> <dim>'" : "finite files declare 'object <name> <cardinality>'");
      if (t.size() != 3) throw ParseError(ln, "usage: " + kw + " <name> <size>");
      claim(t[1], ln);
      auto n = parse_rational(t[2]);
      if (!n || n->get_den() != 1 || sgn(*n) < 0 || (!f.linear() && sgn(*n) == 0) || *n > 1000000)
        throw ParseError(ln, "invalid size '" + t[2] + "'");
      f.objects.push_back({t[1], static_cast<std::size_t>(n->get_num().get_ui())});
    } else if (kw == "arrow") {
      need_category(ln);
      if (t.size() != 4) throw ParseError(ln, "usage: arrow <name> <src> <dst>");
      claim(t[1], ln);
      ItFile::Arrow a;
      a.name = t[1];
      a.src = t[2];
      a.dst = t[3];
      a.line = ln;
      const std::size_t ns = resolve(a.src, ln), nd = resolve(a.dst, ln);
      const std::string what = "arrow " + a.name;
      if (!f.linear()) {
        for (const auto& row : rows_of(ns, nd, ln, what)) {
          std::vector<Rational> r;
          for (const auto& cell : row) {
            auto v = parse_rational(cell);
            if (!v) throw ParseError(lines[i - 1].first, "not a rational: '" + cell + "'");
            r.push_back(*v);
          }
          a.rows.push_back(std::move(r));
        }
        visit_monad(*f.monad, [&](auto m) {
          using M = typename decltype(m)::type;
          for (std::size_t r = 0; r < a.rows.size(); ++r) {
            const std::size_t row_line = lines[i - a.rows.size() + r].first;
            std::optional<std::string> why;
            try {
              why = row_problem<M>(from_dense<M>(a.rows[r]), nd);
            } catch (const ValidationError& e) {
              why = e.what();
            }
            if (why) throw ValidationError("line " + std::to_string(row_line) + ": row " + std::to_string(r + 1) +
                                           " of arrow " + a.name + " " + *why);
          }
        });
      } else {
        auto section = [&](const char* label, std::size_t count, std::size_t width) {
          if (i >= lines.size() || lines[i].second.size() != 1 || lines[i].second[0] != label)
            throw ParseError(i < lines.size() ? lines[i].first : ln, std::string("expected '") + label + "' after arrow " + a.name);
          const std::size_t at = lines[i++].first;
          Matrix m(count, width);
          auto rows = rows_of(width == 0 ? 0 : count, width, at, std::string(label) + " of arrow " + a.name);
          for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t c = 0; c < width; ++c) m(r, c) = detail::parse_real(rows[r][c], lines[i - rows.size() + r].first);
          return m;
        };
        a.A = section("A", nd, ns);
        a.Sigma = section("Sigma", nd, nd);
        try {
          LinearIT check(a.A, a.Sigma);
        } catch (const Error& e) {
          throw ValidationError("line " + std::to_string(ln) + ": arrow " + a.name + ": " + e.what());
        }
      }
      f.arrows.push_back(std::move(a));
    } else if (kw == "utility") {
      need_category(ln);
      if (f.linear()) throw ParseError(ln, "utility tables belong to finite categories");
      if (t.size() != 4) throw ParseError(ln, "usage: utility <name> <signals> <decisions>");
      claim(t[1], ln);
      ItFile::Utility u;
      u.name = t[1];
      u.signals = t[2];
      u.decisions = t[3];
      u.line = ln;
      const std::size_t nd = resolve(u.signals, ln), nu = resolve(u.decisions, ln);
      for (const auto& row : rows_of(nd, nu, ln, "utility " + u.name)) {
        std::vector<Rational> r;
        for (const auto& cell : row) {
          auto v = parse_rational(cell);
          if (!v) throw ParseError(lines[i - 1].first, "not a rational: '" + cell + "'");
          r.push_back(*v);
        }
        u.rows.push_back(std::move(r));
      }
      f.utilities.push_back(std::move(u));
    } else {
      throw ParseError(ln, "unknown declaration '" + kw + "'");
    }
  }
  if (!have_category) throw ParseError(1, "missing 'category <tag>'");
  return f;
}

/// Canonical text of a file; parsing it gives back an equal ItFile.
inline std::string serialize(const ItFile& f) {
  std::ostringstream out;
  out << "category " << f.category_name() << "\n";
  for (const auto& o : f.objects) out << (f.linear() ? "space " : "object ") << o.name << " " << o.size << "\n";
  for (const auto& a : f.arrows) {
    out << "arrow " << a.name << " " << a.src << " " << a.dst << "\n";
    if (!f.linear()) {
      for (const auto& row : a.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j].get_str();
        out << "\n";
      }
    } else {
      auto dump = [&](const char* label, const Matrix& m) {
        out << label << "\n";
        if (m.cols() == 0) return;
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
          for (Eigen::Index c = 0; c < m.cols(); ++c) out << (c ? " " : "") << detail::format_real(m(r, c));
          out << "\n";
        }
      };
      dump("A", a.A);
      dump("Sigma", a.Sigma);
    }
  }
  for (const auto& u : f.utilities) {
    out << "utility " << u.name << " " << u.signals << " " << u.decisions << "\n";
    for (const auto& row : u.rows) {
      for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j].get_str();
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace itcat
