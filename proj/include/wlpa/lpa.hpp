#pragma once

// Condition (LPA) with replayable violation witnesses, and the nod-word
// e_2 ... e_2^* that exists exactly when the condition fails.

#include <algorithm>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "wlpa/enumerate.hpp"
#include "wlpa/error.hpp"
#include "wlpa/graph.hpp"
#include "wlpa/word.hpp"

namespace wlpa {

enum class LpaKind { LPA1 = 1, LPA2 = 2, LPA3 = 3, LPA4 = 4 };

inline std::string to_string(LpaKind k) { return "LPA" + std::to_string(static_cast<int>(k)); }

/// Witness of a failed condition. Field use by kind:
///   LPA1  vertex emits weighted[0], weighted[1]
///   LPA2  vertex in T(r(weighted[0])) via path, emits emitted[0], emitted[1]
///   LPA3  weighted[0], weighted[1] not in line, vertex in both trees
///   LPA4  cycle based at vertex in T(r(weighted[0])) via path, weighted[0] not in cycle
struct LpaViolation {
  LpaKind kind = LpaKind::LPA1;
  VertexIndex vertex = 0;
  std::vector<EdgeIndex> weighted;
  std::vector<EdgeIndex> emitted;
  std::optional<GraphPath> path;
  std::optional<GraphPath> cycle;

  friend bool operator==(const LpaViolation& a, const LpaViolation& b) {
    auto same = [](const std::optional<GraphPath>& x, const std::optional<GraphPath>& y) {
      if (x.has_value() != y.has_value()) return false;
      return !x || (x->base == y->base && x->edges == y->edges);
    };
    return a.kind == b.kind && a.vertex == b.vertex && a.weighted == b.weighted && a.emitted == b.emitted &&
           same(a.path, b.path) && same(a.cycle, b.cycle);
  }
};

struct LpaReport {
  bool satisfied = true;
  std::vector<LpaViolation> violations;

  bool violates(LpaKind k) const {
    return std::any_of(violations.begin(), violations.end(), [k](const LpaViolation& v) { return v.kind == k; });
  }
};

class LpaViolated : public Error {
 public:
  explicit LpaViolated(LpaReport report)
      : Error("weighted graph violates Condition (LPA)"), report_(std::move(report)) {}
  const LpaReport& report() const noexcept { return report_; }

 private:
  LpaReport report_;
};

class LpaSatisfied : public Error {
 public:
  LpaSatisfied() : Error("weighted graph satisfies Condition (LPA); no witness nod-word exists") {}
};

namespace detail {

/// Shortest cycle based at v that avoids edge `skip` (ties by edge order).
inline std::optional<GraphPath> shortest_cycle_avoiding(const WeightedGraph& g, VertexIndex v, EdgeIndex skip) {
  std::vector<std::optional<EdgeIndex>> via(g.vertex_count());
  std::vector<char> seen(g.vertex_count(), 0);
  std::deque<VertexIndex> queue;
  std::optional<EdgeIndex> closing;
  auto relax = [&](VertexIndex from) {
    for (EdgeIndex e : g.out_edges(from)) {
      if (e == skip) continue;
      const VertexIndex r = g.edge(e).range;
      if (r == v) {
        closing = e;
        return;
      }
      if (seen[r]) continue;
      seen[r] = 1;
      via[r] = e;
      queue.push_back(r);
    }
  };
  seen[v] = 1;
  relax(v);
  while (!closing && !queue.empty()) {
    const VertexIndex at = queue.front();
    queue.pop_front();
    relax(at);
  }
  if (!closing) return std::nullopt;
  std::vector<EdgeIndex> edges{*closing};
  for (VertexIndex at = g.edge(*closing).source; at != v; at = g.edge(*via[at]).source) edges.push_back(*via[at]);
  std::reverse(edges.begin(), edges.end());
  return GraphPath{v, std::move(edges)};
}

inline std::vector<char> as_mask(const WeightedGraph& g, const std::vector<VertexIndex>& vs) {
  std::vector<char> m(g.vertex_count(), 0);
  for (VertexIndex v : vs) m[v] = 1;
  return m;
}

}  // namespace detail

/// Decides Condition (LPA). Violations are grouped by kind, each kind in graph scan order.
inline LpaReport check_lpa(const WeightedGraph& g) {
  LpaReport report;
  const std::vector<EdgeIndex> we = weighted_edges(g);
  std::vector<std::vector<char>> trees;
  for (EdgeIndex e : we) trees.push_back(detail::as_mask(g, tree(g, g.edge(e).range)));

  // LPA1
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    std::vector<EdgeIndex> mine;
    for (EdgeIndex e : g.out_edges(v))
      if (g.edge(e).weight > 1) mine.push_back(e);
    if (mine.size() >= 2) report.violations.push_back({LpaKind::LPA1, v, {mine[0], mine[1]}, {}, {}, {}});
  }

  // LPA2
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (g.out_edges(v).size() < 2) continue;
    for (std::size_t k = 0; k < we.size(); ++k) {
      if (!trees[k][v]) continue;
      const EdgeIndex e = we[k];
      report.violations.push_back({LpaKind::LPA2, v, {e}, {g.out_edges(v)[0], g.out_edges(v)[1]},
                                   shortest_path(g, g.edge(e).range, v), {}});
      break;
    }
  }

  // LPA3
  for (std::size_t a = 0; a < we.size(); ++a) {
    for (std::size_t b = a + 1; b < we.size(); ++b) {
      if (in_line(g, we[a], we[b])) continue;
      for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
        if (trees[a][v] && trees[b][v]) {
          report.violations.push_back({LpaKind::LPA3, v, {we[a], we[b]}, {}, {}, {}});
          break;
        }
      }
    }
  }

  // LPA4
  for (std::size_t k = 0; k < we.size(); ++k) {
    const EdgeIndex e = we[k];
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
      if (!trees[k][v]) continue;
      auto c = detail::shortest_cycle_avoiding(g, v, e);
      if (!c) continue;
      report.violations.push_back({LpaKind::LPA4, v, {e}, {}, shortest_path(g, g.edge(e).range, v), std::move(c)});
    }
  }

  report.satisfied = report.violations.empty();
  return report;
}

/// Replays a witness against the graph using tree, reaches and cycles_through only.
inline bool verify_violation(const WeightedGraph& g, const LpaViolation& x) {
  auto valid_edge = [&](EdgeIndex e) { return e < g.edge_count(); };
  auto weighted = [&](EdgeIndex e) { return valid_edge(e) && g.edge(e).weight > 1; };
  auto in_tree = [&](VertexIndex root, VertexIndex v) {
    const auto t = tree(g, root);
    return std::find(t.begin(), t.end(), v) != t.end();
  };
  if (x.vertex >= g.vertex_count()) return false;
  switch (x.kind) {
    case LpaKind::LPA1:
      return x.weighted.size() == 2 && x.weighted[0] != x.weighted[1] && weighted(x.weighted[0]) &&
             weighted(x.weighted[1]) && g.edge(x.weighted[0]).source == x.vertex &&
             g.edge(x.weighted[1]).source == x.vertex;
    case LpaKind::LPA2: {
      if (x.weighted.size() != 1 || !weighted(x.weighted[0]) || x.emitted.size() != 2) return false;
      if (x.emitted[0] == x.emitted[1] || !valid_edge(x.emitted[0]) || !valid_edge(x.emitted[1])) return false;
      if (g.edge(x.emitted[0]).source != x.vertex || g.edge(x.emitted[1]).source != x.vertex) return false;
      const VertexIndex r = g.edge(x.weighted[0]).range;
      if (!x.path || !is_path(g, *x.path) || x.path->source(g) != r || x.path->range(g) != x.vertex) return false;
      return reaches(g, r, x.vertex);
    }
    case LpaKind::LPA3: {
      if (x.weighted.size() != 2 || !weighted(x.weighted[0]) || !weighted(x.weighted[1])) return false;
      const Edge& e = g.edge(x.weighted[0]);
      const Edge& f = g.edge(x.weighted[1]);
      if (x.weighted[0] == x.weighted[1] || reaches(g, e.range, f.source) || reaches(g, f.range, e.source))
        return false;
      return in_tree(e.range, x.vertex) && in_tree(f.range, x.vertex);
    }
    case LpaKind::LPA4: {
      if (x.weighted.size() != 1 || !weighted(x.weighted[0]) || !x.cycle) return false;
      const EdgeIndex e = x.weighted[0];
      const VertexIndex r = g.edge(e).range;
      if (!x.path || !is_path(g, *x.path) || x.path->source(g) != r || x.path->range(g) != x.vertex) return false;
      if (!in_tree(r, x.vertex)) return false;
      const auto cycles = cycles_through(g, x.vertex);
      const bool listed = std::any_of(cycles.begin(), cycles.end(),
                                      [&](const GraphPath& c) { return c.edges == x.cycle->edges; });
      const auto& ce = x.cycle->edges;
      return listed && std::find(ce.begin(), ce.end(), e) == ce.end();
    }
  }
  return false;
}

inline std::string format_violation(const WeightedGraph& g, const LpaViolation& x) {
  const auto& v = g.vertex_name(x.vertex);
  auto e = [&](std::size_t i) -> const std::string& { return g.edge(x.weighted.at(i)).id; };
  switch (x.kind) {
    case LpaKind::LPA1:
      return "LPA1: vertex " + v + " emits weighted edges " + e(0) + " and " + e(1);
    case LpaKind::LPA2:
      return "LPA2: vertex " + v + " lies in T(r(" + e(0) + ")) via path " + format_path(g, *x.path) +
             " and emits " + g.edge(x.emitted[0]).id + " and " + g.edge(x.emitted[1]).id;
    case LpaKind::LPA3:
      return "LPA3: weighted edges " + e(0) + " and " + e(1) + " are not in line; " + v + " lies in both trees";
    case LpaKind::LPA4:
      return "LPA4: cycle " + format_path(g, *x.cycle) + " based at " + v + " in T(r(" + e(0)
             + ")) via path " + format_path(g, *x.path) + " does not contain " + e(0);
  }
  return {};
}

/// A nod-word e_2 ... e_2^* for some weighted edge e. The LPA4 construction
/// e_2 p_1 c_1 p_1^* e_2^* is tried first; otherwise breadth-first search.
inline Word witness_nodpath(const WeightedGraph& g, const SpecialEdgeChoice& choice) {
  const LpaReport report = check_lpa(g);
  if (report.satisfied) throw LpaSatisfied();
  for (const LpaViolation& x : report.violations) {
    if (x.kind != LpaKind::LPA4) continue;
    const EdgeIndex e = x.weighted[0];
    // Enter the cycle at the first of its vertices reached from r(e).
    const GraphPath& c = *x.cycle;
    const VertexIndex r = g.edge(e).range;
    std::optional<GraphPath> best;
    std::size_t rotate = 0;
    for (std::size_t k = 0; k < c.edges.size(); ++k) {
      auto p = shortest_path(g, r, g.edge(c.edges[k]).source);
      if (p && (!best || p->length() < best->length())) {
        best = std::move(p);
        rotate = k;
      }
    }
    Word w{Letter::edge(e, 2)};
    for (EdgeIndex h : best->edges) w.push_back(Letter::edge(h, 1));
    for (std::size_t k = 0; k < c.edges.size(); ++k)
      w.push_back(Letter::edge(c.edges[(rotate + k) % c.edges.size()], 1));
    for (auto it = best->edges.rbegin(); it != best->edges.rend(); ++it) w.push_back(Letter::star(*it, 1));
    w.push_back(Letter::star(e, 2));
    if (is_nodword(g, choice, w)) return w;
  }
  const std::size_t bound = key_search_bound(g);
  for (std::size_t len = 3;; len = std::min(2 * len, bound)) {
    if (auto w = find_key_nodpath(g, choice, len)) return *w;
    if (len == bound) break;
  }
  throw InternalError("no nod-word of the form e_2 ... e_2^* within the length bound although (LPA) fails");
}

}  // namespace wlpa
