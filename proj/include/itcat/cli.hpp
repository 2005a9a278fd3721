#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "itcat/bayes.hpp"
#include "itcat/error.hpp"
#include "itcat/informativeness.hpp"
#include "itcat/itfile.hpp"
#include "itcat/laws.hpp"
#include "itcat/linear.hpp"

namespace itcat::cli {

enum Exit : int { ok = 0, negative = 1, input_error = 2 };

/// Seed from ITCAT_SEED, 0 when unset.
inline std::uint64_t default_seed() {
  const char* env = std::getenv("ITCAT_SEED");
  if (!env || !*env) return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0') throw ValidationError(std::string("ITCAT_SEED is not a nonnegative integer: '") + env + "'");
  return v;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::string format_real(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline void write_matrix(std::ostream& os, const char* label, const Matrix& m, const char* indent = "  ") {
  os << indent << label << " (" << m.rows() << "x" << m.cols() << ")";
  if (m.size() == 0) {
    os << " empty\n";
    return;
  }
  os << "\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    os << indent << "  ";
    for (Eigen::Index c = 0; c < m.cols(); ++c) os << (c ? " " : "") << format_real(m(r, c));
    os << "\n";
  }
}

template <Monad M>
void write_rows(std::ostream& os, const KleisliArrow<M>& a, const char* indent = "  ") {
  for (std::size_t x = 0; x < a.src().size(); ++x) {
    os << indent << a.src().element(x) << ":";
    for (const auto& v : to_dense<M>(a.rows()[x], a.dst().size())) os << " " << v.get_str();
    os << "\n";
  }
}

inline std::string describe_strategy(const DetMap& r) {
  std::string s;
  for (std::size_t y = 0; y < r.table().size(); ++y)
    s += (y ? ", " : "") + r.src().element(y) + "->" + r.dst().element(r(y));
  return s.empty() ? "(empty)" : s;
}

/// Splits a space expression at its last top-level `*`.
inline std::pair<std::string, std::string> split_product(const std::string& expr) {
  int depth = 0;
  std::size_t at = std::string::npos;
  for (std::size_t i = 0; i < expr.size(); ++i) {
    if (expr[i] == '(') ++depth;
    if (expr[i] == ')') --depth;
    if (expr[i] == '*' && depth == 0) at = i;
  }
  if (at == std::string::npos) throw ValidationError("'" + expr + "' is not a product space");
  return {expr.substr(0, at), expr.substr(at + 1)};
}

// ---------------------------------------------------------------------------

struct LawsArgs {
  std::string category;
  std::size_t max_card = 2;
  std::size_t samples = 50;
  std::uint64_t seed = 0;
};

inline int cmd_laws(const LawsArgs& args, bool machine, std::ostream& out) {
  auto tag = parse_monad_tag(args.category);
  if (!tag) throw ValidationError("unknown category '" + args.category + "'");
  if (args.max_card < 1 || args.max_card > 4) throw RangeError("--max-card must be between 1 and 4");
  LawConfig cfg;
  cfg.max_card = args.max_card;
  cfg.samples = args.samples;
  cfg.seed = args.seed;
  auto reports = visit_monad(*tag, [&](auto m) { return check_all_laws<typename decltype(m)::type>(cfg); });
  const bool good = all_as_expected(reports);
  if (machine) {
    write_machine_report(out, reports);
  } else {
    out << "laws category=" << monad_tag_name(*tag) << " max-card=" << args.max_card << " samples=" << args.samples
        << " seed=" << args.seed << "\n";
    write_report(out, reports);
    std::size_t bad = 0;
    for (const auto& r : reports) bad += !r.as_expected();
    out << (good ? "PASS" : "FAIL") << ": " << reports.size() - bad << "/" << reports.size() << " laws as expected\n";
  }
  return good ? ok : negative;
}

struct CompareArgs {
  std::string file, a, b, accuracy = "equality";
};

template <Monad M>
int compare_finite(const ItFile& f, const CompareArgs& args, Accuracy rel, bool machine, std::ostream& out) {
  const auto a = f.arrow<M>(args.a);
  const auto b = f.arrow<M>(args.b);
  std::vector<KleisliArrow<M>> pool;
  for (const auto& decl : f.arrows) pool.push_back(f.arrow<M>(decl.name));
  const auto res = compare_informativeness(rel, a, b, pool);
  std::string verdict(comparison_name(res.verdict));
  if (res.verdict == Comparison::incomparable && !res.exhaustive()) verdict += "-WITHIN-SEARCH";
  if (machine) {
    out << "verdict\t" << verdict << "\nforward\t" << res.forward.label() << "\nbackward\t" << res.backward.label()
        << "\n";
  } else {
    out << "compare " << args.a << " " << args.b << " category=" << f.category_name()
        << " accuracy=" << accuracy_name(rel) << "\n";
    auto side = [&](const std::string& x, const std::string& y, const InfoVerdict<M>& v) {
      out << x << " >= " << y << ": " << v.label() << "\n";
      if (v.witness) {
        out << "  witness " << v.witness->src().label() << " -> " << v.witness->dst().label() << "\n";
        write_rows(out, *v.witness, "    ");
      }
    };
    side(args.a, args.b, res.forward);
    side(args.b, args.a, res.backward);
    out << "verdict: " << verdict << "\n";
  }
  return res.forward.holds ? ok : negative;
}

inline int compare_linear(const ItFile& f, const CompareArgs& args, bool machine, std::ostream& out) {
  const LinearIT a = f.linear_arrow(args.a), b = f.linear_arrow(args.b);
  if (a.src_dim() != b.src_dim()) throw MismatchError("informativeness compares arrows with one source");
  const LinearClass ca = lin_canonical_class(a), cb = lin_canonical_class(b);
  const bool forward = lin_class_le(ca, cb), backward = lin_class_le(cb, ca);
  const char* verdict = forward && backward ? "EQUIVALENT" : forward ? "MORE" : backward ? "LESS" : "INCOMPARABLE";
  if (machine) {
    out << "verdict\t" << verdict << "\nforward\t" << (forward ? "YES" : "NO") << "\nbackward\t"
        << (backward ? "YES" : "NO") << "\n";
  } else {
    out << "compare " << args.a << " " << args.b << " category=linear\n";
    auto side = [&](const std::string& x, const std::string& y, bool holds, const LinearIT& p, const LinearIT& q) {
      out << x << " >= " << y << ": " << (holds ? "YES" : "NO") << "\n";
      if (!holds) return;
      const LinearIT c = lin_witness(p, q);
      out << "  witness R^" << c.src_dim() << " -> R^" << c.dst_dim() << "\n";
      write_matrix(out, "A", c.A(), "    ");
      out << "    accuracy check: " << (lin_accuracy_le(lin_compose(c, p), q) ? "YES" : "NO") << "\n";
    };
    side(args.a, args.b, forward, a, b);
    side(args.b, args.a, backward, b, a);
    out << "verdict: " << verdict << "\n";
  }
  return forward ? ok : negative;
}

inline int cmd_compare(const CompareArgs& args, bool machine, std::ostream& out) {
  const ItFile f = parse_it_file(read_file(args.file));
  auto rel = parse_accuracy(args.accuracy);
  if (!rel) throw ValidationError("unknown accuracy '" + args.accuracy + "'");
  if (f.linear()) return compare_linear(f, args, machine, out);
  return visit_monad(*f.monad, [&](auto m) {
    return compare_finite<typename decltype(m)::type>(f, args, *rel, machine, out);
  });
}

struct ConditionalArgs {
  std::string file, joint, wrt = "first";
};

inline int cmd_conditional(const ConditionalArgs& args, bool machine, std::ostream& out) {
  const ItFile f = parse_it_file(read_file(args.file));
  if (args.wrt != "first" && args.wrt != "second") throw ValidationError("--wrt must be first or second");
  const bool first = args.wrt == "first";
  if (f.linear()) {
    const auto& decl = f.arrow_decl(args.joint);
    const LinearIT h = f.linear_arrow(args.joint);
    if (h.src_dim() != 0) throw MismatchError("joint must be a distribution (input dimension 0)");
    const auto n = f.dimension(split_product(decl.dst).first);
    const LinearIT c = lin_conditional_joint(h, n, first);
    // Check against the joint rebuilt from the marginal and c.
    const Eigen::Index m = h.dst_dim() - n;
    const LinearIT marginal = lin_compose(first ? lin_projection_left(n, m) : lin_projection_right(n, m), h);
    const LinearIT rebuilt =
        first ? lin_joint_from(marginal, c)
              : lin_compose(lin_product(c, lin_identity(m)), marginal);
    const double residual = std::max(max_norm(rebuilt.A() - h.A()), max_norm(rebuilt.Sigma() - h.Sigma()));
    const bool good = residual <= kEqualTol;
    if (machine) {
      out << "residual\t" << format_real(residual) << "\ncheck\t" << (good ? "YES" : "NO") << "\n";
    } else {
      out << "conditional of " << args.joint << " wrt " << args.wrt << ": R^" << c.src_dim() << " -> R^"
          << c.dst_dim() << "\n";
      write_matrix(out, "A", c.A());
      write_matrix(out, "Sigma", c.Sigma());
      out << "joint equation: " << (good ? "YES" : "NO") << " (max-norm residual " << format_real(residual) << ")\n";
    }
    return good ? ok : negative;
  }
  if (*f.monad != MonadTag::probability)
    throw UnsupportedError("conditionals are implemented for the probability and linear categories");
  using M = ProbabilityMonad;
  const auto h = f.arrow<M>(args.joint);
  const auto c = conditional(h, first ? Wrt::first : Wrt::second);
  const bool good = is_conditional(h, c, first ? Wrt::first : Wrt::second);
  if (machine) {
    for (std::size_t x = 0; x < c.src().size(); ++x) {
      out << c.src().element(x);
      for (const auto& v : to_dense<M>(c.rows()[x], c.dst().size())) out << '\t' << v.get_str();
      out << "\n";
    }
    out << "check\t" << (good ? "YES" : "NO") << "\n";
  } else {
    out << "conditional of " << args.joint << " wrt " << args.wrt << ": " << c.src().label() << " -> "
        << c.dst().label() << "\n";
    write_rows(out, c);
    out << "joint equation: " << (good ? "YES" : "NO") << "\n";
  }
  return good ? ok : negative;
}

struct BayesArgs {
  std::string file, prior, channel, utility;
};

inline int cmd_bayes(const BayesArgs& args, bool machine, std::ostream& out) {
  const ItFile f = parse_it_file(read_file(args.file));
  if (f.linear() || *f.monad != MonadTag::probability)
    throw UnsupportedError("bayes needs a probability category file");
  using M = ProbabilityMonad;
  const auto prior = f.arrow<M>(args.prior);
  const auto channel = f.arrow<M>(args.channel);
  const auto problem = f.problem<M>(args.utility);
  const BayesReport rep = bayes_principle_check(prior, channel, problem);
  const bool good = rep.sets_equal && rep.pointwise_agrees;
  auto write_set = [&](const char* label, const OptSet& s) {
    if (machine) {
      out << label << "\t" << s.value.get_str();
      for (const auto& r : s.strategies) out << "\t" << describe_strategy(r);
      out << "\n";
      return;
    }
    out << label << ": value " << s.value.get_str() << ", " << s.strategies.size() << " strategies\n";
    for (const auto& r : s.strategies) out << "  " << describe_strategy(r) << "\n";
  };
  if (!machine)
    out << "bayes prior=" << args.prior << " channel=" << args.channel << " utility=" << args.utility << "\n";
  write_set("OptPrior", rep.prior_side);
  write_set("OptPosterior", rep.posterior_side);
  if (machine) {
    out << "equal\t" << (rep.sets_equal ? "YES" : "NO") << "\npointwise\t" << (rep.pointwise_agrees ? "YES" : "NO")
        << "\n";
  } else {
    out << "pointwise posterior decisions:\n";
    for (std::size_t y = 0; y < rep.pointwise.size(); ++y) {
      out << "  " << channel.dst().element(y) << ":";
      if (rep.pointwise[y].empty()) out << " (probability 0)";
      for (auto u : rep.pointwise[y]) out << " " << problem.decisions.element(u);
      out << "\n";
    }
    out << "OptPrior == OptPosterior : " << (rep.sets_equal ? "YES" : "NO") << "\n";
    out << "Opt == pointwise posterior optimum : " << (rep.pointwise_agrees ? "YES" : "NO") << "\n";
  }
  return good ? ok : negative;
}

struct ClassesArgs {
  std::string category, accuracy = "equality";
  std::size_t card = 3;
};

inline void write_monoid(std::ostream& os, const InfoClassMonoid& m, bool machine) {
  const std::size_t n = m.size();
  if (machine) {
    for (std::size_t i = 0; i < n; ++i) os << "class\t" << i << "\t" << m.labels[i] << "\n";
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        os << "entry\t" << i << "\t" << j << "\t" << (m.more[i][j] ? 1 : 0) << "\t" << m.product[i][j] << "\n";
    return;
  }
  os << "classes: " << n << " (bottom " << m.zero << ", top " << m.one << ")\n";
  for (std::size_t i = 0; i < n; ++i) os << "  " << i << ": " << m.labels[i] << "\n";
  os << "order (row >= column):\n";
  for (std::size_t i = 0; i < n; ++i) {
    os << "  ";
    for (std::size_t j = 0; j < n; ++j) os << (j ? " " : "") << (m.more[i][j] ? '1' : '0');
    os << "\n";
  }
  os << "product:\n";
  for (std::size_t i = 0; i < n; ++i) {
    os << "  ";
    for (std::size_t j = 0; j < n; ++j) os << (j ? " " : "") << m.product[i][j];
    os << "\n";
  }
}

inline int cmd_classes(const ClassesArgs& args, bool machine, std::ostream& out) {
  auto tag = parse_monad_tag(args.category);
  auto rel = parse_accuracy(args.accuracy);
  if (!rel) throw ValidationError("unknown accuracy '" + args.accuracy + "'");
  InfoClassMonoid m;
  if (tag == MonadTag::identity) {
    m = partition_monoid(args.card);
  } else if (tag == MonadTag::powerset) {
    if (args.card < 1 || args.card > 2) throw RangeError("powerset classes are enumerated for --card 1 or 2");
    m = class_monoid_by_search<PowersetMonad>(FiniteSpace::plain("D", args.card), args.card + 1, *rel).monoid;
  } else {
    throw UnsupportedError("classes are enumerated for the set and powerset categories");
  }
  const auto violations = check_monoid_properties(m);
  if (!machine)
    out << "classes category=" << monad_tag_name(*tag) << " card=" << args.card
        << (tag == MonadTag::powerset ? " accuracy=" + std::string(accuracy_name(*rel)) : std::string()) << "\n";
  write_monoid(out, m, machine);
  if (machine) {
    out << "violations\t" << violations.size() << "\n";
  } else {
    out << "properties: ";
    if (violations.empty()) out << "all hold";
    for (std::size_t i = 0; i < violations.size(); ++i) out << (i ? ", " : "violated ") << violations[i];
    out << "\n";
  }
  return violations.empty() ? ok : negative;
}

// ---------------------------------------------------------------------------

/// Runs one command line (without the program name). Output goes to `out`,
/// diagnostics and usage to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Checks and comparisons for information transformers", "itcat"};
  app.require_subcommand(1);
  app.fallthrough();
  bool machine = false;
  app.add_flag("--machine", machine, "Tab-separated output");

  std::uint64_t seed = 0;
  try {
    seed = default_seed();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  }

  LawsArgs laws;
  laws.seed = seed;
  auto* laws_cmd = app.add_subcommand("laws", "Check monad, coherence and IT-category laws");
  laws_cmd->add_option("--category", laws.category, "identity|set, probability|stochastic, powerset|multivalued, fuzzy-min, fuzzy-prod")
      ->required();
  laws_cmd->add_option("--max-card", laws.max_card, "Largest space cardinality")->required();
  laws_cmd->add_option("--samples", laws.samples, "Samples per law where enumeration is too large");
  laws_cmd->add_option("--seed", laws.seed, "Sampling seed (default ITCAT_SEED or 0)");

  CompareArgs compare;
  auto* compare_cmd = app.add_subcommand("compare", "Compare the informativeness of two arrows");
  compare_cmd->add_option("file", compare.file)->required();
  compare_cmd->add_option("a", compare.a)->required();
  compare_cmd->add_option("b", compare.b)->required();
  compare_cmd->add_option("--accuracy", compare.accuracy, "equality|pointwise");

  ConditionalArgs cond;
  auto* cond_cmd = app.add_subcommand("conditional", "Conditional of a joint distribution");
  cond_cmd->add_option("file", cond.file)->required();
  cond_cmd->add_option("joint", cond.joint)->required();
  cond_cmd->add_option("--wrt", cond.wrt, "first|second")->required();

  BayesArgs bayes;
  auto* bayes_cmd = app.add_subcommand("bayes", "Optimal strategies from the prior and posterior sides");
  bayes_cmd->add_option("file", bayes.file)->required();
  bayes_cmd->add_option("--prior", bayes.prior)->required();
  bayes_cmd->add_option("--channel", bayes.channel)->required();
  bayes_cmd->add_option("--utility", bayes.utility)->required();

  ClassesArgs classes;
  auto* classes_cmd = app.add_subcommand("classes", "Informativeness classes and their monoid");
  classes_cmd->add_option("--category", classes.category, "set|powerset")->required();
  classes_cmd->add_option("--card", classes.card, "Source cardinality")->required();
  classes_cmd->add_option("--accuracy", classes.accuracy, "equality|pointwise (powerset only)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return input_error;
  }

  try {
    if (laws_cmd->parsed()) return cmd_laws(laws, machine, out);
    if (compare_cmd->parsed()) return cmd_compare(compare, machine, out);
    if (cond_cmd->parsed()) return cmd_conditional(cond, machine, out);
    if (bayes_cmd->parsed()) return cmd_bayes(bayes, machine, out);
    return cmd_classes(classes, machine, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  }
}

}  // namespace itcat::cli
