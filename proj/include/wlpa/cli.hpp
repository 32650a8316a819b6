#pragma once

// Command-line front end. run() is stream-based so it can be tested in-process.
//
// Exit codes: 0 success, 1 input or usage error, 2 internal error,
// 3 semantic negative (Condition (LPA) violated, witness requested for a
// graph satisfying it, or failed family verification).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wlpa/algebra.hpp"
#include "wlpa/enumerate.hpp"
#include "wlpa/error.hpp"
#include "wlpa/expression.hpp"
#include "wlpa/field.hpp"
#include "wlpa/graph.hpp"
#include "wlpa/lpa.hpp"
#include "wlpa/records.hpp"
#include "wlpa/unweighting.hpp"
#include "wlpa/word.hpp"

namespace wlpa::cli {

enum Exit : int { kOk = 0, kInputError = 1, kInternal = 2, kNegative = 3 };

struct Options {
  std::string command;
  std::string input = "-";
  std::string format = "text";
  std::string field = "rational";
  std::string special;
  std::string method = "dp";
  std::size_t budget = kDefaultBudget;
  std::string source, range, degree;
  std::string expression;
  std::size_t n = 0;
  bool verify = false;
};

namespace detail {

inline bool machine(const Options& o) { return o.format == "machine"; }

inline std::vector<int> parse_degree(const std::string& text) {
  std::vector<int> d;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      d.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error("malformed degree component '" + item + "'");
    }
  }
  return d;
}

template <class Field>
int algebra_command(const Options& o, const WeightedGraph& g, const Field& field, std::ostream& out,
                    std::ostream& err) {
  const SpecialEdgeChoice choice = parse_special_overrides(g, o.special);

  if (o.command == "eval") {
    const Algebra<Field> alg(g, choice, field);
    const auto x = evaluate(alg, o.expression);
    if (machine(o))
      out << element_record(alg, x).dump(2) << "\n";
    else
      out << alg.format(x) << "\n";
    return kOk;
  }

  if (o.command == "basis") {
    NodwordFilter filter;
    if (!o.source.empty()) filter.source = g.vertex(o.source);
    if (!o.range.empty()) filter.range = g.vertex(o.range);
    if (!o.degree.empty()) filter.degree = parse_degree(o.degree);
    const Enumeration e = enumerate_nodwords(g, choice, o.n, filter, o.budget);
    if (e.truncated) err << "warning: enumeration truncated after " << o.budget << " frontier words\n";
    if (machine(o)) {
      Json words = Json::array();
      for (const Word& w : e.words) words.push_back(word_record(g, w));
      out << Json{{"max_len", o.n}, {"truncated", e.truncated}, {"words", std::move(words)}}.dump(2) << "\n";
    } else {
      for (const Word& w : e.words) out << format_word(g, w) << "\n";
      if (e.truncated) out << "# truncated\n";
    }
    return kOk;
  }

  if (o.command == "growth") {
    std::vector<std::string> table;
    bool truncated = false;
    if (o.method == "dp") {
      for (const auto& c : growth_table(g, choice, o.n)) table.push_back(c.str());
    } else if (o.method == "enumerate") {
      const GrowthEnumeration e = growth_by_enumeration(g, choice, o.n, o.budget);
      for (auto c : e.table) table.push_back(std::to_string(c));
      truncated = e.truncated;
      if (truncated)
        err << "warning: enumeration truncated after " << o.budget << " frontier words; table stops at length "
            << table.size() - 1 << "\n";
    } else {
      throw Error("unknown growth method '" + o.method + "' (expected dp or enumerate)");
    }
    if (machine(o)) {
      out << Json{{"method", o.method}, {"truncated", truncated}, {"growth", table}}.dump(2) << "\n";
    } else {
      out << "# n growth(n)\n";
      for (std::size_t k = 0; k < table.size(); ++k) out << k << " " << table[k] << "\n";
      if (truncated) out << "# truncated\n";
    }
    return kOk;
  }

  if (o.command == "zero-dim") {
    const auto c = zero_component_count(g, choice, o.n);
    if (machine(o))
      out << Json{{"max_len", o.n}, {"count", c.str()}}.dump(2) << "\n";
    else
      out << c.str() << "\n";
    return kOk;
  }

  if (o.command == "witness") {
    try {
      const Word w = witness_nodpath(g, choice);
      if (machine(o))
        out << Json{{"word", word_record(g, w)}, {"length", w.size()}}.dump(2) << "\n";
      else
        out << format_word(g, w) << "\n";
      return kOk;
    } catch (const LpaSatisfied& e) {
      err << e.what() << "\n";
      return kNegative;
    }
  }

  if (o.command == "transform") {
    std::optional<std::pair<Graph, TransformTrace>> result;
    try {
      result = to_unweighted(g);
    } catch (const LpaViolated& e) {
      err << "error: " << e.what() << "\n";
      for (const auto& x : e.report().violations) err << format_violation(g, x) << "\n";
      return kNegative;
    }
    const Graph& F = result->first;
    const TransformTrace& trace = result->second;
    std::optional<VerifyReport> report;
    if (o.verify) {
      const Algebra<Field> source(g, field);
      const Algebra<Field> target(F.weighted(), field);
      const auto fam = family_maps(source, target, trace);
      report = verify_families(source, target, fam.forward, fam.backward);
    }
    if (machine(o)) {
      Json j{{"stage1", graph_record(trace.stage1)},
             {"stage2", graph_record(F.weighted(), false)},
             {"trace", trace_record(trace)}};
      if (report) j["verify"] = verify_record(*report);
      out << j.dump(2) << "\n";
    } else {
      const WeightedGraph& s1 = trace.stage1;
      out << "# stage 1: ranges of weighted edges are sinks\n# Z =";
      for (VertexIndex v : trace.Z) out << " " << s1.vertex_name(v);
      out << "\n" << serialize(s1);
      out << "# stage 2: unweighted graph\n";
      for (const auto& [v, e] : trace.gv) out << "# g^" << s1.vertex_name(v) << " = " << s1.edge(e).id << "\n";
      out << serialize(F);
      if (report) {
        out << "# verify: " << (report->ok ? "ok" : "FAILED") << "\n";
        for (int k = 1; k <= 4; ++k) {
          const auto name = to_string(static_cast<RelationKind>(k));
          out << "# relations (" << name << "): forward " << report->forward[k].checked << " checked, "
              << report->forward[k].failed << " failed; backward " << report->backward[k].checked << " checked, "
              << report->backward[k].failed << " failed\n";
        }
        out << "# round trips: source " << report->forward_roundtrip.checked << " checked, "
            << report->forward_roundtrip.failed << " failed; target " << report->backward_roundtrip.checked
            << " checked, " << report->backward_roundtrip.failed << " failed\n";
        if (report->counterexample) out << "# counterexample: " << *report->counterexample << "\n";
      }
    }
    if (report && !report->ok) {
      err << "error: family verification failed\n";
      return kNegative;
    }
    return kOk;
  }

  throw Error("unknown command '" + o.command + "'");
}

inline std::string read_input(const std::string& path, std::istream& in) {
  std::stringstream ss;
  if (path == "-") {
    ss << in.rdbuf();
  } else {
    std::ifstream f(path);
    if (!f) throw Error("cannot open '" + path + "'");
    ss << f.rdbuf();
  }
  return ss.str();
}

inline int execute(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const WeightedGraph g = parse_weighted_graph(read_input(o.input, in));

  if (o.command == "validate") {
    const auto weighted = weighted_edges(g).size();
    if (machine(o))
      out << Json{{"valid", true}, {"graph", graph_record(g)}}.dump(2) << "\n";
    else
      out << "valid: " << g.vertex_count() << " vertices, " << g.edge_count() << " edges (" << weighted
          << " weighted)\n";
    return kOk;
  }

  if (o.command == "check-lpa") {
    const LpaReport report = check_lpa(g);
    if (machine(o)) {
      out << report_record(g, report).dump(2) << "\n";
    } else {
      out << (report.satisfied ? "satisfied" : "violated") << "\n";
      for (const auto& x : report.violations) out << format_violation(g, x) << "\n";
    }
    return report.satisfied ? kOk : kNegative;
  }

  if (o.field == "rational") return algebra_command(o, g, RationalField{}, out, err);
  if (o.field.rfind("mod:", 0) == 0) {
    std::uint64_t p = 0;
    try {
      std::size_t used = 0;
      p = std::stoull(o.field.substr(4), &used);
      if (used != o.field.size() - 4) throw std::invalid_argument(o.field);
    } catch (const std::exception&) {
      throw Error("malformed field '" + o.field + "'");
    }
    return algebra_command(o, g, PrimeField(p), out, err);
  }
  throw Error("unknown field '" + o.field + "' (expected rational or mod:<prime>)");
}

}  // namespace detail

/// argv excludes the program name.
inline int run(const std::vector<std::string>& argv, std::istream& in, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Weighted Leavitt path algebras: Condition (LPA), unweighting, normal forms", "wlpa"};
  app.require_subcommand(1);
  app.add_option("--input,-i", o.input, "graph file ('-' for stdin)");
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "machine"}));
  app.add_option("--field", o.field, "scalar field: rational or mod:<prime>");
  app.add_option("--special", o.special, "special-edge overrides v=e,u=f");
  app.set_help_all_flag("--help-all");
  app.fallthrough();

  auto* validate = app.add_subcommand("validate", "parse and validate a weighted graph");
  auto* check = app.add_subcommand("check-lpa", "decide Condition (LPA) and list violations");
  auto* transform = app.add_subcommand("transform", "compile to an unweighted graph");
  transform->add_flag("--verify", o.verify, "check the generator families relation by relation");
  auto* eval = app.add_subcommand("eval", "normal form of an expression");
  eval->add_option("expression", o.expression, "expression")->required();
  auto* basis = app.add_subcommand("basis", "list nod-words of length <= N");
  basis->add_option("n", o.n, "maximal length")->required();
  basis->add_option("--source", o.source, "source vertex filter");
  basis->add_option("--range", o.range, "range vertex filter");
  basis->add_option("--degree", o.degree, "multidegree filter, comma separated");
  basis->add_option("--budget", o.budget, "frontier budget");
  auto* growth_cmd = app.add_subcommand("growth", "number of nod-words of length <= k for k <= N");
  growth_cmd->add_option("n", o.n, "maximal length")->required();
  growth_cmd->add_option("--method", o.method, "dp or enumerate")->check(CLI::IsMember({"dp", "enumerate"}));
  growth_cmd->add_option("--budget", o.budget, "frontier budget for --method enumerate");
  auto* zero = app.add_subcommand("zero-dim", "number of degree-0 nod-words of length <= N");
  zero->add_option("n", o.n, "maximal length")->required();
  auto* witness = app.add_subcommand("witness", "nod-word e_2 ... e_2^* for a graph violating (LPA)");

  for (auto* sub : {validate, check, transform, eval, basis, growth_cmd, zero, witness})
    sub->callback([&o, sub] { o.command = sub->get_name(); });

  try {
    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    return detail::execute(o, in, out, err);
  } catch (const ParseError& e) {
    err << "error: " << (o.input == "-" ? "<stdin>" : o.input) << ": " << e.what() << "\n";
    return kInputError;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace wlpa::cli
