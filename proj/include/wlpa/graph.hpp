#pragma once

// Finite weighted directed graphs and the graph-theoretic primitives used by
// the (LPA) decision procedure: reachability, trees, the in-line relation and
// cycle enumeration. Vertices and edges keep insertion (file) order, and every
// set-valued result is reported in that order.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wlpa/error.hpp"

namespace wlpa {

using VertexIndex = std::size_t;
using EdgeIndex = std::size_t;

/// True iff `token` is a nonempty string over [A-Za-z0-9_^()].
inline bool is_valid_identifier(std::string_view token) {
  if (token.empty()) return false;
  return std::all_of(token.begin(), token.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
           c == '^' || c == '(' || c == ')';
  });
}

/// Name of the i-th copy of an entity, e.g. `a` -> `a^(2)` and `h^(1)` -> `(h^(1))^(2)`.
inline std::string superscript(std::string_view name, unsigned i) {
  std::string base(name);
  if (base.find('^') != std::string::npos) base = "(" + base + ")";
  return base + "^(" + std::to_string(i) + ")";
}

struct Edge {
  std::string id;
  VertexIndex source = 0;
  VertexIndex range = 0;
  unsigned weight = 1;
};

/// A finite directed graph with positive integer edge weights.
///
/// Built incrementally with add_vertex/add_edge and treated as an immutable
/// value afterwards.
class WeightedGraph {
 public:
  VertexIndex add_vertex(std::string id) {
    if (!is_valid_identifier(id)) throw GraphError("invalid vertex id '" + id + "'");
    if (vertex_index_.count(id) != 0) throw GraphError("duplicate vertex id '" + id + "'");
    const VertexIndex v = vertices_.size();
    vertex_index_.emplace(id, v);
    vertices_.push_back(std::move(id));
    out_.emplace_back();
    in_.emplace_back();
    return v;
  }

  EdgeIndex add_edge(std::string id, VertexIndex source, VertexIndex range, unsigned weight = 1) {
    if (!is_valid_identifier(id)) throw GraphError("invalid edge id '" + id + "'");
    if (edge_index_.count(id) != 0) throw GraphError("duplicate edge id '" + id + "'");
    if (source >= vertices_.size() || range >= vertices_.size())
      throw GraphError("edge '" + id + "' has an endpoint outside the vertex set");
    if (weight < 1) throw GraphError("edge '" + id + "' has weight < 1");
    const EdgeIndex e = edges_.size();
    edge_index_.emplace(id, e);
    edges_.push_back(Edge{std::move(id), source, range, weight});
    out_[source].push_back(e);
    in_[range].push_back(e);
    max_weight_ = std::max(max_weight_, weight);
    return e;
  }

  EdgeIndex add_edge(std::string id, std::string_view source, std::string_view range, unsigned weight = 1) {
    return add_edge(std::move(id), vertex(source), vertex(range), weight);
  }

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::vector<std::string>& vertex_names() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  const std::string& vertex_name(VertexIndex v) const { return vertices_.at(v); }
  const Edge& edge(EdgeIndex e) const { return edges_.at(e); }

  std::optional<VertexIndex> find_vertex(std::string_view id) const {
    auto it = vertex_index_.find(std::string(id));
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<EdgeIndex> find_edge(std::string_view id) const {
    auto it = edge_index_.find(std::string(id));
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
  }

  VertexIndex vertex(std::string_view id) const {
    if (auto v = find_vertex(id)) return *v;
    throw GraphError("unknown vertex '" + std::string(id) + "'");
  }
  EdgeIndex edge_index(std::string_view id) const {
    if (auto e = find_edge(id)) return *e;
    throw GraphError("unknown edge '" + std::string(id) + "'");
  }

  /// Edges emitted by v, in graph order.
  const std::vector<EdgeIndex>& out_edges(VertexIndex v) const { return out_.at(v); }
  /// Edges received by v, in graph order.
  const std::vector<EdgeIndex>& in_edges(VertexIndex v) const { return in_.at(v); }

  bool is_sink(VertexIndex v) const { return out_.at(v).empty(); }

  /// Largest edge weight; 0 for a graph without edges.
  unsigned max_weight() const noexcept { return max_weight_; }

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    if (a.vertices_ != b.vertices_ || a.edges_.size() != b.edges_.size()) return false;
    for (std::size_t i = 0; i < a.edges_.size(); ++i) {
      const Edge& x = a.edges_[i];
      const Edge& y = b.edges_[i];
      if (x.id != y.id || x.source != y.source || x.range != y.range || x.weight != y.weight) return false;
    }
    return true;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeIndex>> out_;
  std::vector<std::vector<EdgeIndex>> in_;
  std::unordered_map<std::string, VertexIndex> vertex_index_;
  std::unordered_map<std::string, EdgeIndex> edge_index_;
  unsigned max_weight_ = 0;
};

/// A graph whose edges all have weight 1.
class Graph {
 public:
  Graph() = default;
  explicit Graph(WeightedGraph g) : g_(std::move(g)) {
    for (const Edge& e : g_.edges())
      if (e.weight != 1) throw GraphError("edge '" + e.id + "' of an unweighted graph has weight " + std::to_string(e.weight));
  }

  const WeightedGraph& weighted() const noexcept { return g_; }
  std::size_t vertex_count() const noexcept { return g_.vertex_count(); }
  std::size_t edge_count() const noexcept { return g_.edge_count(); }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  WeightedGraph g_;
};

/// A path: either a single vertex (length 0) or a composable edge sequence.
struct GraphPath {
  VertexIndex base = 0;
  std::vector<EdgeIndex> edges;

  std::size_t length() const noexcept { return edges.size(); }
  VertexIndex source(const WeightedGraph& g) const { return edges.empty() ? base : g.edge(edges.front()).source; }
  VertexIndex range(const WeightedGraph& g) const { return edges.empty() ? base : g.edge(edges.back()).range; }

  friend bool operator==(const GraphPath&, const GraphPath&) = default;
};

/// True iff consecutive edges compose and the path starts at `base`.
inline bool is_path(const WeightedGraph& g, const GraphPath& p) {
  if (p.base >= g.vertex_count()) return false;
  VertexIndex at = p.base;
  for (EdgeIndex e : p.edges) {
    if (e >= g.edge_count() || g.edge(e).source != at) return false;
    at = g.edge(e).range;
  }
  return true;
}

/// w(v): maximum weight of an edge emitted by v, 0 for sinks.
namespace detail {

inline void check_vertex(const WeightedGraph& g, VertexIndex v) {
  if (v >= g.vertex_count()) throw GraphError("unknown vertex index " + std::to_string(v));
}

}  // namespace detail

inline unsigned vertex_weight(const WeightedGraph& g, VertexIndex v) {
  detail::check_vertex(g, v);
  unsigned w = 0;
  for (EdgeIndex e : g.out_edges(v)) w = std::max(w, g.edge(e).weight);
  return w;
}

inline std::vector<EdgeIndex> weighted_edges(const WeightedGraph& g) {
  std::vector<EdgeIndex> out;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e)
    if (g.edge(e).weight > 1) out.push_back(e);
  return out;
}

namespace detail {

inline std::vector<char> reachable_mask(const WeightedGraph& g, std::span<const VertexIndex> from) {
  std::vector<char> seen(g.vertex_count(), 0);
  std::deque<VertexIndex> queue;
  for (VertexIndex v : from) {
    check_vertex(g, v);
    if (!seen[v]) {
      seen[v] = 1;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const VertexIndex u = queue.front();
    queue.pop_front();
    for (EdgeIndex e : g.out_edges(u)) {
      const VertexIndex r = g.edge(e).range;
      if (!seen[r]) {
        seen[r] = 1;
        queue.push_back(r);
      }
    }
  }
  return seen;
}

}  // namespace detail

/// u >= v: there is a path (possibly of length 0) from u to v.
inline bool reaches(const WeightedGraph& g, VertexIndex u, VertexIndex v) {
  detail::check_vertex(g, v);
  const VertexIndex from[] = {u};
  return detail::reachable_mask(g, from)[v] != 0;
}

/// T(X): every vertex reachable from some vertex of X, in graph order.
inline std::vector<VertexIndex> tree(const WeightedGraph& g, std::span<const VertexIndex> roots) {
  const auto seen = detail::reachable_mask(g, roots);
  std::vector<VertexIndex> out;
  for (VertexIndex v = 0; v < seen.size(); ++v)
    if (seen[v]) out.push_back(v);
  return out;
}

inline std::vector<VertexIndex> tree(const WeightedGraph& g, VertexIndex root) {
  const VertexIndex roots[] = {root};
  return tree(g, roots);
}

/// e and f are in line iff e = f, r(e) >= s(f) or r(f) >= s(e).
inline bool in_line(const WeightedGraph& g, EdgeIndex e, EdgeIndex f) {
  if (e >= g.edge_count() || f >= g.edge_count()) throw GraphError("unknown edge index");
  if (e == f) return true;
  return reaches(g, g.edge(e).range, g.edge(f).source) || reaches(g, g.edge(f).range, g.edge(e).source);
}

/// Shortest path from u to v (BFS, ties broken by edge order), if any.
inline std::optional<GraphPath> shortest_path(const WeightedGraph& g, VertexIndex u, VertexIndex v) {
  detail::check_vertex(g, u);
  detail::check_vertex(g, v);
  if (u == v) return GraphPath{u, {}};
  std::vector<std::optional<EdgeIndex>> via(g.vertex_count());
  std::vector<char> seen(g.vertex_count(), 0);
  std::deque<VertexIndex> queue{u};
  seen[u] = 1;
  while (!queue.empty()) {
    const VertexIndex x = queue.front();
    queue.pop_front();
    for (EdgeIndex e : g.out_edges(x)) {
      const VertexIndex r = g.edge(e).range;
      if (seen[r]) continue;
      seen[r] = 1;
      via[r] = e;
      if (r == v) {
        GraphPath p{u, {}};
        for (VertexIndex at = v; at != u; at = g.edge(*via[at]).source) p.edges.push_back(*via[at]);
        std::reverse(p.edges.begin(), p.edges.end());
        return p;
      }
      queue.push_back(r);
    }
  }
  return std::nullopt;
}

/// All cycles based at v: closed paths from v whose edges have pairwise
/// distinct sources. Depth-first in edge order, so the output is deterministic.
inline std::vector<GraphPath> cycles_through(const WeightedGraph& g, VertexIndex v) {
  detail::check_vertex(g, v);
  std::vector<GraphPath> out;
  std::vector<char> on_path(g.vertex_count(), 0);
  std::vector<EdgeIndex> stack;
  on_path[v] = 1;
  auto dfs = [&](auto&& self, VertexIndex at) -> void {
    for (EdgeIndex e : g.out_edges(at)) {
      const VertexIndex r = g.edge(e).range;
      stack.push_back(e);
      if (r == v) {
        out.push_back(GraphPath{v, stack});
      } else if (!on_path[r]) {
        on_path[r] = 1;
        self(self, r);
        on_path[r] = 0;
      }
      stack.pop_back();
    }
  };
  dfs(dfs, v);
  return out;
}

// ---------------------------------------------------------------------------
// Text format
//
//   # comment (also allowed after the fields of a line)
//   vertex <id>
//   edge <id> <source-id> <range-id> [<weight>]
// ---------------------------------------------------------------------------

namespace detail {

struct Token {
  std::string_view text;
  std::size_t column;
};

inline std::vector<Token> split_tokens(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    out.push_back(Token{line.substr(start, i - start), start + 1});
  }
  return out;
}

inline WeightedGraph parse_graph_text(std::string_view text, bool unweighted) {
  struct PendingEdge {
    Token id, source, range;
    unsigned weight;
    std::size_t line;
  };
  WeightedGraph g;
  std::vector<PendingEdge> pending;
  std::unordered_map<std::string, std::size_t> edge_lines;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    auto tokens = split_tokens(line);
    const auto comment = std::find_if(tokens.begin(), tokens.end(), [](const Token& t) { return t.text.front() == '#'; });
    tokens.erase(comment, tokens.end());
    if (tokens.empty()) continue;
    const Token& head = tokens.front();
    auto require_id = [&](const Token& t) {
      if (!is_valid_identifier(t.text))
        throw ParseError(ParseErrorKind::Syntax, "invalid identifier '" + std::string(t.text) + "'", line_no, t.column);
    };
    if (head.text == "vertex") {
      if (tokens.size() != 2)
        throw ParseError(ParseErrorKind::Syntax, "expected 'vertex <id>'", line_no,
                         tokens.size() > 2 ? tokens[2].column : head.column + head.text.size());
      require_id(tokens[1]);
      if (g.find_vertex(tokens[1].text))
        throw ParseError(ParseErrorKind::DuplicateId, "duplicate vertex id '" + std::string(tokens[1].text) + "'",
                         line_no, tokens[1].column);
      g.add_vertex(std::string(tokens[1].text));
    } else if (head.text == "edge") {
      if (tokens.size() != 4 && tokens.size() != 5)
        throw ParseError(ParseErrorKind::Syntax, "expected 'edge <id> <source> <range> [<weight>]'", line_no,
                         tokens.size() > 5 ? tokens[5].column : head.column + head.text.size());
      for (std::size_t i = 1; i < 4; ++i) require_id(tokens[i]);
      unsigned weight = 1;
      if (tokens.size() == 5) {
        const Token& w = tokens[4];
        const bool digits = std::all_of(w.text.begin(), w.text.end(), [](char c) { return c >= '0' && c <= '9'; });
        if (!digits || w.text.size() > 9)
          throw ParseError(ParseErrorKind::BadWeight, "weight must be a positive integer", line_no, w.column);
        weight = static_cast<unsigned>(std::stoul(std::string(w.text)));
        if (weight < 1) throw ParseError(ParseErrorKind::BadWeight, "weight must be at least 1", line_no, w.column);
        if (unweighted && weight != 1)
          throw ParseError(ParseErrorKind::BadWeight, "unweighted graph edges must have weight 1", line_no, w.column);
      }
      const std::string id(tokens[1].text);
      if (!edge_lines.emplace(id, line_no).second)
        throw ParseError(ParseErrorKind::DuplicateId, "duplicate edge id '" + id + "'", line_no, tokens[1].column);
      pending.push_back(PendingEdge{tokens[1], tokens[2], tokens[3], weight, line_no});
    } else {
      throw ParseError(ParseErrorKind::Syntax, "unknown directive '" + std::string(head.text) + "'", line_no,
                       head.column);
    }
  }
  // Endpoints may reference vertices declared later in the file.
  for (const PendingEdge& p : pending) {
    const auto s = g.find_vertex(p.source.text);
    if (!s)
      throw ParseError(ParseErrorKind::DanglingEndpoint, "unknown source vertex '" + std::string(p.source.text) + "'",
                       p.line, p.source.column);
    const auto r = g.find_vertex(p.range.text);
    if (!r)
      throw ParseError(ParseErrorKind::DanglingEndpoint, "unknown range vertex '" + std::string(p.range.text) + "'",
                       p.line, p.range.column);
    g.add_edge(std::string(p.id.text), *s, *r, p.weight);
  }
  return g;
}

}  // namespace detail

inline WeightedGraph parse_weighted_graph(std::string_view text) { return detail::parse_graph_text(text, false); }

/// Same format; weights must be absent or 1.
inline Graph parse_graph(std::string_view text) { return Graph(detail::parse_graph_text(text, true)); }

/// Canonical text: all vertex lines, then all edge lines, in graph order.
inline std::string serialize(const WeightedGraph& g) {
  std::ostringstream os;
  for (const auto& v : g.vertex_names()) os << "vertex " << v << '\n';
  for (const Edge& e : g.edges())
    os << "edge " << e.id << ' ' << g.vertex_name(e.source) << ' ' << g.vertex_name(e.range) << ' ' << e.weight
       << '\n';
  return os.str();
}

/// Unweighted graphs omit the weight column.
inline std::string serialize(const Graph& graph) {
  const WeightedGraph& g = graph.weighted();
  std::ostringstream os;
  for (const auto& v : g.vertex_names()) os << "vertex " << v << '\n';
  for (const Edge& e : g.edges())
    os << "edge " << e.id << ' ' << g.vertex_name(e.source) << ' ' << g.vertex_name(e.range) << '\n';
  return os.str();
}

inline std::string format_path(const WeightedGraph& g, const GraphPath& p) {
  if (p.edges.empty()) return g.vertex_name(p.base);
  std::string out;
  for (EdgeIndex e : p.edges) {
    if (!out.empty()) out += ' ';
    out += g.edge(e).id;
  }
  return out;
}

}  // namespace wlpa
