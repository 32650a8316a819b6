#pragma once

// Generators v, e_i, e_i^* of a weighted Leavitt path algebra, words over
// them, special-edge choices and the nod-word predicate.
//
// Text syntax for letters: `v` (vertex), `e.2` (edge strand), `e.2*` (ghost
// strand). Words are letters separated by whitespace.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wlpa/error.hpp"
#include "wlpa/graph.hpp"

namespace wlpa {

enum class LetterKind : std::uint8_t { Vertex, Edge, Star };

/// One generator. Ordering: all vertices in graph order, then per edge in
/// graph order e_1..e_w followed by e_1^*..e_w^*.
class Letter {
 public:
  constexpr Letter() = default;

  static constexpr Letter vertex(VertexIndex v) { return Letter(static_cast<std::uint64_t>(v) << kIdShift); }
  static constexpr Letter edge(EdgeIndex e, unsigned strand) {
    return Letter(kEdgeGroup | (static_cast<std::uint64_t>(e) << kIdShift) | strand);
  }
  static constexpr Letter star(EdgeIndex e, unsigned strand) {
    return Letter(kEdgeGroup | (static_cast<std::uint64_t>(e) << kIdShift) | kStarBit | strand);
  }

  constexpr LetterKind kind() const {
    if ((code_ & kEdgeGroup) == 0) return LetterKind::Vertex;
    return (code_ & kStarBit) != 0 ? LetterKind::Star : LetterKind::Edge;
  }
  constexpr bool is_vertex() const { return kind() == LetterKind::Vertex; }
  /// Vertex or edge index depending on kind().
  constexpr std::size_t id() const { return static_cast<std::size_t>((code_ & ~kEdgeGroup) >> kIdShift); }
  constexpr unsigned strand() const { return static_cast<unsigned>(code_ & kStrandMask); }

  /// e_i <-> e_i^*; vertices are fixed.
  constexpr Letter conjugate() const {
    if (is_vertex()) return *this;
    return Letter(code_ ^ kStarBit);
  }

  constexpr std::uint64_t code() const { return code_; }

  friend constexpr auto operator<=>(const Letter&, const Letter&) = default;

 private:
  static constexpr std::uint64_t kEdgeGroup = std::uint64_t{1} << 63;
  static constexpr unsigned kIdShift = 24;
  static constexpr std::uint64_t kStarBit = std::uint64_t{1} << 23;
  static constexpr std::uint64_t kStrandMask = kStarBit - 1;

  constexpr explicit Letter(std::uint64_t code) : code_(code) {}
  std::uint64_t code_ = 0;
};

using Word = std::vector<Letter>;

/// Length-then-lexicographic order on words.
struct ShortLex {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

/// Path length of a word: 0 for a vertex, otherwise the number of letters.
inline std::size_t path_length(const Word& w) {
  return w.size() == 1 && w.front().is_vertex() ? 0 : w.size();
}

inline bool is_valid_letter(const WeightedGraph& g, Letter x) {
  if (x.is_vertex()) return x.id() < g.vertex_count();
  return x.id() < g.edge_count() && x.strand() >= 1 && x.strand() <= g.edge(x.id()).weight;
}

inline void check_letter(const WeightedGraph& g, Letter x) {
  if (!is_valid_letter(g, x)) {
    if (x.is_vertex()) throw InvalidLetter("unknown vertex index " + std::to_string(x.id()));
    if (x.id() >= g.edge_count()) throw InvalidLetter("unknown edge index " + std::to_string(x.id()));
    throw InvalidLetter("strand " + std::to_string(x.strand()) + " out of range for edge '" + g.edge(x.id()).id +
                        "' of weight " + std::to_string(g.edge(x.id()).weight));
  }
}

/// s(v)=v, s(e_i)=s(e), s(e_i^*)=r(e).
inline VertexIndex letter_source(const WeightedGraph& g, Letter x) {
  switch (x.kind()) {
    case LetterKind::Vertex: return x.id();
    case LetterKind::Edge: return g.edge(x.id()).source;
    case LetterKind::Star: return g.edge(x.id()).range;
  }
  return 0;
}

/// r(v)=v, r(e_i)=r(e), r(e_i^*)=s(e).
inline VertexIndex letter_range(const WeightedGraph& g, Letter x) {
  switch (x.kind()) {
    case LetterKind::Vertex: return x.id();
    case LetterKind::Edge: return g.edge(x.id()).range;
    case LetterKind::Star: return g.edge(x.id()).source;
  }
  return 0;
}

/// The fixed choice of a special edge e^v with w(e^v) = w(v) for every non-sink v.
class SpecialEdgeChoice {
 public:
  SpecialEdgeChoice() = default;

  /// Validates totality over non-sinks and weight-maximality.
  SpecialEdgeChoice(const WeightedGraph& g, std::vector<std::optional<EdgeIndex>> map) : map_(std::move(map)) {
    if (map_.size() != g.vertex_count()) throw GraphError("special-edge map does not cover the vertex set");
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
      const auto& choice = map_[v];
      if (g.is_sink(v)) {
        if (choice) throw GraphError("sink '" + g.vertex_name(v) + "' cannot have a special edge");
        continue;
      }
      if (!choice) throw GraphError("vertex '" + g.vertex_name(v) + "' has no special edge");
      if (*choice >= g.edge_count() || g.edge(*choice).source != v)
        throw GraphError("special edge of '" + g.vertex_name(v) + "' is not emitted by it");
      if (g.edge(*choice).weight != vertex_weight(g, v))
        throw GraphError("special edge '" + g.edge(*choice).id + "' of '" + g.vertex_name(v) +
                         "' does not have maximal weight " + std::to_string(vertex_weight(g, v)));
    }
  }

  std::optional<EdgeIndex> special(VertexIndex v) const { return map_.at(v); }
  bool is_special(const WeightedGraph& g, EdgeIndex e) const { return map_.at(g.edge(e).source) == e; }
  const std::vector<std::optional<EdgeIndex>>& map() const noexcept { return map_; }

  /// Copy with e^v replaced by `e` (revalidated).
  SpecialEdgeChoice with(const WeightedGraph& g, VertexIndex v, EdgeIndex e) const {
    auto m = map_;
    m.at(v) = e;
    return SpecialEdgeChoice(g, std::move(m));
  }

  friend bool operator==(const SpecialEdgeChoice&, const SpecialEdgeChoice&) = default;

 private:
  std::vector<std::optional<EdgeIndex>> map_;
};

/// For each non-sink v, the first emitted edge (graph order) of weight w(v).
inline SpecialEdgeChoice default_special_edges(const WeightedGraph& g) {
  std::vector<std::optional<EdgeIndex>> m(g.vertex_count());
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    const unsigned w = vertex_weight(g, v);
    for (EdgeIndex e : g.out_edges(v)) {
      if (g.edge(e).weight == w) {
        m[v] = e;
        break;
      }
    }
  }
  return SpecialEdgeChoice(g, std::move(m));
}

/// True iff xy matches e^v_i (e^v_j)^* or e_1^* f_1.
inline bool is_forbidden_pair(const WeightedGraph& g, const SpecialEdgeChoice& choice, Letter x, Letter y) {
  if (x.kind() == LetterKind::Edge && y.kind() == LetterKind::Star)
    return x.id() == y.id() && choice.is_special(g, x.id());
  if (x.kind() == LetterKind::Star && y.kind() == LetterKind::Edge) return x.strand() == 1 && y.strand() == 1;
  return false;
}

/// A d-path: a single vertex, or edge/ghost letters with r(x_i) = s(x_{i+1}).
inline bool is_dpath(const WeightedGraph& g, std::span<const Letter> word) {
  if (word.empty()) return false;
  for (Letter x : word)
    if (!is_valid_letter(g, x)) return false;
  if (word.size() == 1) return true;
  for (std::size_t i = 0; i < word.size(); ++i)
    if (word[i].is_vertex()) return false;
  for (std::size_t i = 0; i + 1 < word.size(); ++i)
    if (letter_range(g, word[i]) != letter_source(g, word[i + 1])) return false;
  return true;
}

/// A nod-word: a d-path without forbidden length-2 subwords.
inline bool is_nodword(const WeightedGraph& g, const SpecialEdgeChoice& choice, std::span<const Letter> word) {
  if (!is_dpath(g, word)) return false;
  for (std::size_t i = 0; i + 1 < word.size(); ++i)
    if (is_forbidden_pair(g, choice, word[i], word[i + 1])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Text form
// ---------------------------------------------------------------------------

inline std::string format_letter(const WeightedGraph& g, Letter x) {
  switch (x.kind()) {
    case LetterKind::Vertex: return g.vertex_name(x.id());
    case LetterKind::Edge: return g.edge(x.id()).id + "." + std::to_string(x.strand());
    case LetterKind::Star: return g.edge(x.id()).id + "." + std::to_string(x.strand()) + "*";
  }
  return {};
}

inline std::string format_word(const WeightedGraph& g, std::span<const Letter> w) {
  std::string out;
  for (Letter x : w) {
    if (!out.empty()) out += ' ';
    out += format_letter(g, x);
  }
  return out;
}

/// Parses `v`, `e.i`, `e.i*`; a bare edge name `e` (or `e*`) means strand 1.
inline Letter parse_letter(const WeightedGraph& g, std::string_view token) {
  if (token.empty()) throw InvalidLetter("empty letter");
  bool star = false;
  if (token.back() == '*') {
    star = true;
    token.remove_suffix(1);
  }
  std::string_view name = token;
  unsigned strand = 1;
  bool explicit_strand = false;
  if (const auto dot = token.rfind('.'); dot != std::string_view::npos) {
    name = token.substr(0, dot);
    const auto digits = token.substr(dot + 1);
    if (digits.empty() || digits.size() > 6 || digits.find_first_not_of("0123456789") != std::string_view::npos)
      throw InvalidLetter("malformed strand index in '" + std::string(token) + "'");
    strand = static_cast<unsigned>(std::stoul(std::string(digits)));
    explicit_strand = true;
  }
  if (!star && !explicit_strand) {
    if (auto v = g.find_vertex(name)) return Letter::vertex(*v);
  }
  const auto e = g.find_edge(name);
  if (!e) throw InvalidLetter("unknown generator '" + std::string(name) + "'");
  const Letter x = star ? Letter::star(*e, strand) : Letter::edge(*e, strand);
  check_letter(g, x);
  return x;
}

inline Word parse_word(const WeightedGraph& g, std::string_view text) {
  Word w;
  for (const auto& t : detail::split_tokens(text)) w.push_back(parse_letter(g, t.text));
  if (w.empty()) throw InvalidLetter("empty word");
  return w;
}

/// Every generator of the graph, in letter order.
inline std::vector<Letter> generators(const WeightedGraph& g) {
  std::vector<Letter> out;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) out.push_back(Letter::vertex(v));
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    for (unsigned i = 1; i <= g.edge(e).weight; ++i) out.push_back(Letter::edge(e, i));
    for (unsigned i = 1; i <= g.edge(e).weight; ++i) out.push_back(Letter::star(e, i));
  }
  return out;
}

/// Parses `--special` overrides of the form `v=e,u=f` on top of the defaults.
inline SpecialEdgeChoice parse_special_overrides(const WeightedGraph& g, std::string_view text) {
  SpecialEdgeChoice choice = default_special_edges(g);
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    const auto item = text.substr(pos, comma - pos);
    pos = comma + 1;
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw GraphError("malformed special-edge override '" + std::string(item) + "'");
    choice = choice.with(g, g.vertex(item.substr(0, eq)), g.edge_index(item.substr(eq + 1)));
  }
  return choice;
}

}  // namespace wlpa
