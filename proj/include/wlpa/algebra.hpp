#pragma once

// Exact arithmetic in L_K(E,w) through the nod-word normal form.
//
// Elements are finitely supported maps from nod-words to nonzero scalars.
// normalize() rewrites arbitrary words with the oriented relations
//
//   u v            -> delta_uv u
//   v x, x v       -> x when the endpoints match, 0 otherwise
//   x y            -> 0 when r(x) != s(y)
//   e_1^* f_1      -> delta_ef r(e) - sum_{i>=2} e_i^* f_i
//   e^v_i e^v_j^*  -> delta_ij v - sum_{f in s^-1(v), f != e^v} f_i f_j^*
//
// where strands beyond an edge's weight are dropped. Each rule lowers
// (word length, number of strand-1 letters, number of special-edge letters)
// lexicographically, so rewriting terminates; the irreducible words are
// exactly the nod-words.

#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "wlpa/error.hpp"
#include "wlpa/field.hpp"
#include "wlpa/graph.hpp"
#include "wlpa/word.hpp"

namespace wlpa {

using MultiDegree = std::vector<int>;
struct NotHomogeneous {
  friend bool operator==(NotHomogeneous, NotHomogeneous) { return true; }
};
struct ZeroElement {
  friend bool operator==(ZeroElement, ZeroElement) { return true; }
};
using DegreeResult = std::variant<MultiDegree, NotHomogeneous, ZeroElement>;

enum class Strategy { LeftmostInnermost, RightmostInnermost };

/// A normal-form element. The zero element has empty support.
template <class Scalar>
class Element {
 public:
  using Terms = std::map<Word, Scalar, ShortLex>;

  Element() = default;
  Element(std::uint64_t context, Terms terms) : context_(context), terms_(std::move(terms)) {}

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  /// Identifier of the algebra that produced the element; 0 for an unbound zero.
  std::uint64_t context() const noexcept { return context_; }

  std::optional<Scalar> coefficient(const Word& w) const {
    auto it = terms_.find(w);
    if (it == terms_.end()) return std::nullopt;
    return it->second;
  }

  friend bool operator==(const Element& a, const Element& b) { return a.terms_ == b.terms_; }

 private:
  std::uint64_t context_ = 0;
  Terms terms_;
};

namespace detail {

inline std::uint64_t next_context_id() {
  static std::atomic<std::uint64_t> counter{0};
  return ++counter;
}

/// Right-hand side term of a rewrite applied to a letter pair.
struct Replacement {
  Letter letters[2];
  std::uint8_t length;
  bool negative;
};

}  // namespace detail

template <class Field = RationalField>
class Algebra {
 public:
  using Scalar = typename Field::value_type;
  using Elem = Element<Scalar>;
  using Combination = std::vector<std::pair<Word, Scalar>>;

  Algebra(WeightedGraph g, SpecialEdgeChoice choice, Field field = Field{})
      : graph_(std::move(g)), choice_(std::move(choice)), field_(std::move(field)), id_(detail::next_context_id()) {
    // Revalidate: the choice may have been built for another graph.
    choice_ = SpecialEdgeChoice(graph_, choice_.map());
  }

  explicit Algebra(WeightedGraph g, Field field = Field{})
      : Algebra(g, default_special_edges(g), std::move(field)) {}

  const WeightedGraph& graph() const noexcept { return graph_; }
  const SpecialEdgeChoice& choice() const noexcept { return choice_; }
  const Field& field() const noexcept { return field_; }
  std::uint64_t id() const noexcept { return id_; }
  /// n = max edge weight; the length of every MultiDegree.
  std::size_t grading_rank() const noexcept { return graph_.max_weight(); }

  /// Upper bound on rewrite steps per normalize call before giving up.
  void set_step_limit(std::size_t limit) { step_limit_ = limit; }

  // -------------------------------------------------------------------------
  // Construction

  Elem zero() const { return Elem(id_, {}); }

  Elem generator(Letter x) const {
    check_letter(graph_, x);
    typename Elem::Terms t;
    t.emplace(Word{x}, field_.one());
    return Elem(id_, std::move(t));
  }
  Elem vertex(VertexIndex v) const { return generator(Letter::vertex(v)); }
  Elem edge(EdgeIndex e, unsigned strand) const { return generator(Letter::edge(e, strand)); }
  Elem star(EdgeIndex e, unsigned strand) const { return generator(Letter::star(e, strand)); }

  /// The identity sum of all vertices.
  Elem unit() const {
    typename Elem::Terms t;
    for (VertexIndex v = 0; v < graph_.vertex_count(); ++v) t.emplace(Word{Letter::vertex(v)}, field_.one());
    return Elem(id_, std::move(t));
  }

  Elem scalar(const Scalar& c) const { return scalar_mul(c, unit()); }

  Elem word(const Word& w, Strategy s = Strategy::LeftmostInnermost) const {
    return normalize(Combination{{w, field_.one()}}, s);
  }

  /// Parses a whitespace-separated word and normalizes it.
  Elem word(std::string_view text) const { return word(parse_word(graph_, text)); }

  // -------------------------------------------------------------------------
  // Normal form

  Elem normalize(const Combination& input, Strategy strategy = Strategy::LeftmostInnermost) const {
    typename Elem::Terms pending;
    for (const auto& [w, c] : input) {
      if (w.empty()) throw InvalidLetter("empty word has no image in the algebra");
      for (Letter x : w) check_letter(graph_, x);
      accumulate(pending, w, c);
    }
    return reduce(std::move(pending), strategy);
  }

  /// True iff no rewrite rule applies anywhere in w.
  bool is_normal(const Word& w) const { return !w.empty() && find_redex(w, Strategy::LeftmostInnermost) < 0; }

  // -------------------------------------------------------------------------
  // Ring operations

  Elem add(const Elem& a, const Elem& b) const {
    check_context(a);
    check_context(b);
    typename Elem::Terms t = a.terms();
    for (const auto& [w, c] : b.terms()) accumulate(t, w, c);
    return Elem(id_, std::move(t));
  }

  Elem neg(const Elem& a) const { return scalar_mul(field_.neg(field_.one()), a); }

  Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }

  Elem scalar_mul(const Scalar& k, const Elem& a) const {
    check_context(a);
    typename Elem::Terms t;
    if (field_.is_zero(k)) return Elem(id_, {});
    for (const auto& [w, c] : a.terms()) t.emplace(w, field_.mul(k, c));
    return Elem(id_, std::move(t));
  }

  /// Concatenate pairwise, then normalize.
  Elem multiply(const Elem& a, const Elem& b, Strategy strategy = Strategy::LeftmostInnermost) const {
    check_context(a);
    check_context(b);
    typename Elem::Terms pending;
    for (const auto& [u, c] : a.terms()) {
      for (const auto& [v, d] : b.terms()) {
        Word w;
        w.reserve(u.size() + v.size());
        w.insert(w.end(), u.begin(), u.end());
        w.insert(w.end(), v.begin(), v.end());
        accumulate(pending, w, field_.mul(c, d));
      }
    }
    return reduce(std::move(pending), strategy);
  }

  /// Reverse words and swap e_i <-> e_i^*; scalars and vertices are fixed.
  Elem involute(const Elem& a) const {
    check_context(a);
    Combination input;
    input.reserve(a.size());
    for (const auto& [w, c] : a.terms()) {
      Word r(w.rbegin(), w.rend());
      for (Letter& x : r) x = x.conjugate();
      input.emplace_back(std::move(r), c);
    }
    return normalize(input);
  }

  bool is_idempotent(const Elem& a) const { return multiply(a, a) == a; }

  // -------------------------------------------------------------------------
  // Grading and support

  MultiDegree word_degree(const Word& w) const {
    MultiDegree d(grading_rank(), 0);
    for (Letter x : w) {
      if (x.kind() == LetterKind::Edge) ++d.at(x.strand() - 1);
      if (x.kind() == LetterKind::Star) --d.at(x.strand() - 1);
    }
    return d;
  }

  DegreeResult degree(const Elem& a) const {
    check_context(a);
    if (a.is_zero()) return ZeroElement{};
    std::optional<MultiDegree> common;
    for (const auto& [w, c] : a.terms()) {
      MultiDegree d = word_degree(w);
      if (common && *common != d) return NotHomogeneous{};
      common = std::move(d);
    }
    return *common;
  }

  /// Minimum path length over the support; nullopt for zero.
  std::optional<std::size_t> min_support_length(const Elem& a) const {
    check_context(a);
    std::optional<std::size_t> best;
    for (const auto& [w, c] : a.terms()) {
      const std::size_t len = path_length(w);
      if (!best || len < *best) best = len;
    }
    return best;
  }

  // -------------------------------------------------------------------------
  // Text form

  std::string format(const Elem& a) const {
    if (a.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : a.terms()) {
      std::string coef = field_.to_string(c);
      const bool negative = !coef.empty() && coef.front() == '-';
      if (negative) coef.erase(0, 1);
      if (first) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      if (coef != "1") out += coef + " ";
      out += format_word(graph_, w);
      first = false;
    }
    return out;
  }

  void check_context(const Elem& a) const {
    if (a.context() != 0 && a.context() != id_)
      throw ContextMismatch("element belongs to a different algebra (graph or special-edge choice)");
  }

 private:
  void accumulate(typename Elem::Terms& t, const Word& w, const Scalar& c) const {
    if (field_.is_zero(c)) return;
    auto [it, inserted] = t.try_emplace(w, c);
    if (!inserted) {
      it->second = field_.add(it->second, c);
      if (field_.is_zero(it->second)) t.erase(it);
    }
  }

  void accumulate(typename Elem::Terms& t, Word&& w, const Scalar& c) const {
    if (field_.is_zero(c)) return;
    auto it = t.find(w);
    if (it == t.end()) {
      t.emplace(std::move(w), c);
    } else {
      it->second = field_.add(it->second, c);
      if (field_.is_zero(it->second)) t.erase(it);
    }
  }

  /// Applies the rule for the pair xy, if any. Returns false when xy is irreducible.
  bool rewrite_pair(Letter x, Letter y, std::vector<detail::Replacement>& out) const {
    out.clear();
    const WeightedGraph& g = graph_;
    if (x.is_vertex() || y.is_vertex()) {
      if (x.is_vertex() && y.is_vertex()) {
        if (x == y) out.push_back({{x, x}, 1, false});
      } else if (x.is_vertex()) {
        if (letter_source(g, y) == x.id()) out.push_back({{y, y}, 1, false});
      } else if (letter_range(g, x) == y.id()) {
        out.push_back({{x, x}, 1, false});
      }
      return true;
    }
    if (letter_range(g, x) != letter_source(g, y)) return true;
    if (x.kind() == LetterKind::Star && y.kind() == LetterKind::Edge && x.strand() == 1 && y.strand() == 1) {
      const EdgeIndex e = x.id(), f = y.id();
      if (e == f) out.push_back({{Letter::vertex(g.edge(e).range), {}}, 1, false});
      const unsigned top = std::min(g.edge(e).weight, g.edge(f).weight);
      for (unsigned i = 2; i <= top; ++i) out.push_back({{Letter::star(e, i), Letter::edge(f, i)}, 2, true});
      return true;
    }
    if (x.kind() == LetterKind::Edge && y.kind() == LetterKind::Star && x.id() == y.id() &&
        choice_.is_special(g, x.id())) {
      const EdgeIndex e = x.id();
      const VertexIndex v = g.edge(e).source;
      const unsigned i = x.strand(), j = y.strand();
      if (i == j) out.push_back({{Letter::vertex(v), {}}, 1, false});
      for (EdgeIndex f : g.out_edges(v)) {
        if (f == e || g.edge(f).weight < std::max(i, j)) continue;
        out.push_back({{Letter::edge(f, i), Letter::star(f, j)}, 2, true});
      }
      return true;
    }
    return false;
  }

  /// Position of the redex pair per strategy, or -1 if w is normal.
  std::ptrdiff_t find_redex(const Word& w, Strategy strategy) const {
    thread_local std::vector<detail::Replacement> scratch;
    const auto n = static_cast<std::ptrdiff_t>(w.size());
    if (strategy == Strategy::LeftmostInnermost) {
      for (std::ptrdiff_t i = 0; i + 1 < n; ++i)
        if (rewrite_pair(w[i], w[i + 1], scratch)) return i;
    } else {
      for (std::ptrdiff_t i = n - 2; i >= 0; --i)
        if (rewrite_pair(w[i], w[i + 1], scratch)) return i;
    }
    return -1;
  }

  Elem reduce(typename Elem::Terms pending, Strategy strategy) const {
    typename Elem::Terms done;
    std::vector<detail::Replacement> rhs;
    std::size_t steps = 0;
    while (!pending.empty()) {
      // Longest words first so that terms produced from them merge before being processed.
      auto node = pending.extract(std::prev(pending.end()));
      const Word& w = node.key();
      const Scalar& c = node.mapped();
      const std::ptrdiff_t at = find_redex(w, strategy);
      if (at < 0) {
        accumulate(done, w, c);
        continue;
      }
      if (++steps > step_limit_) throw InternalError("rewriting exceeded the step limit");
      rewrite_pair(w[at], w[at + 1], rhs);
      const Scalar minus_c = field_.neg(c);
      for (const auto& r : rhs) {
        Word next;
        next.reserve(w.size());
        next.insert(next.end(), w.begin(), w.begin() + at);
        for (std::uint8_t k = 0; k < r.length; ++k) next.push_back(r.letters[k]);
        next.insert(next.end(), w.begin() + at + 2, w.end());
        accumulate(pending, std::move(next), r.negative ? minus_c : c);
      }
    }
    return Elem(id_, std::move(done));
  }

  WeightedGraph graph_;
  SpecialEdgeChoice choice_;
  Field field_;
  std::uint64_t id_;
  std::size_t step_limit_ = 50'000'000;
};

enum class RelationKind { I = 1, II = 2, III = 3, IV = 4 };

inline std::string to_string(RelationKind k) {
  static const char* names[] = {"", "i", "ii", "iii", "iv"};
  return names[static_cast<int>(k)];
}

/// One defining relation moved to one side: `terms` must vanish in the algebra.
template <class Scalar>
struct RelationInstance {
  RelationKind kind;
  std::string label;
  std::vector<std::pair<Word, Scalar>> terms;
};

/// Every instance of the defining relations (i)-(iv) for the algebra's graph.
template <class Field>
std::vector<RelationInstance<typename Field::value_type>> relation_instances(const Algebra<Field>& alg) {
  using Scalar = typename Field::value_type;
  const WeightedGraph& g = alg.graph();
  const Field& k = alg.field();
  const Scalar one = k.one(), minus = k.neg(k.one());
  std::vector<RelationInstance<Scalar>> out;
  auto name = [&](Letter x) { return format_letter(g, x); };

  for (VertexIndex u = 0; u < g.vertex_count(); ++u)
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
      const Letter lu = Letter::vertex(u), lv = Letter::vertex(v);
      RelationInstance<Scalar> r{RelationKind::I, name(lu) + " " + name(lv), {{Word{lu, lv}, one}}};
      if (u == v) r.terms.emplace_back(Word{lu}, minus);
      out.push_back(std::move(r));
    }

  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const Letter s = Letter::vertex(g.edge(e).source), r = Letter::vertex(g.edge(e).range);
    for (unsigned i = 1; i <= g.edge(e).weight; ++i) {
      const Letter x = Letter::edge(e, i), y = Letter::star(e, i);
      for (const auto& [a, b, lone] : {std::tuple{s, x, x}, std::tuple{x, r, x}, std::tuple{r, y, y},
                                       std::tuple{y, s, y}})
        out.push_back({RelationKind::II, name(a) + " " + name(b), {{Word{a, b}, one}, {Word{lone}, minus}}});
    }
  }

  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    const auto& emitted = g.out_edges(v);
    const unsigned wv = vertex_weight(g, v);
    for (EdgeIndex e : emitted)
      for (EdgeIndex f : emitted) {
        RelationInstance<Scalar> r{RelationKind::III, "sum_i " + g.edge(e).id + ".i* " + g.edge(f).id + ".i", {}};
        for (unsigned i = 1; i <= wv; ++i)
          if (i <= g.edge(e).weight && i <= g.edge(f).weight)
            r.terms.emplace_back(Word{Letter::star(e, i), Letter::edge(f, i)}, one);
        if (e == f) r.terms.emplace_back(Word{Letter::vertex(g.edge(e).range)}, minus);
        out.push_back(std::move(r));
      }
    for (unsigned i = 1; i <= wv; ++i)
      for (unsigned j = 1; j <= wv; ++j) {
        RelationInstance<Scalar> r{RelationKind::IV,
                                   "sum_e e." + std::to_string(i) + " e." + std::to_string(j) + "* at " +
                                       g.vertex_name(v),
                                   {}};
        for (EdgeIndex e : emitted)
          if (i <= g.edge(e).weight && j <= g.edge(e).weight)
            r.terms.emplace_back(Word{Letter::edge(e, i), Letter::star(e, j)}, one);
        if (i == j) r.terms.emplace_back(Word{Letter::vertex(v)}, minus);
        out.push_back(std::move(r));
      }
  }
  return out;
}

}  // namespace wlpa
