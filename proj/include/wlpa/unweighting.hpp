#pragma once

// Compiling a weighted graph that satisfies (LPA) into an unweighted graph
// with isomorphic Leavitt path algebra.
//
// Stage 1 reverses every edge emitted inside Z = T(r(E_w)), splitting it into
// weight-1 copies, so that ranges of weighted edges become sinks. Stage 2 then
// splits each range v of a weighted edge g^v into copies v^(1..w(g^v)) and
// rewires edges into the cases
//   A  unweighted e, r(e) not a weighted range   e
//   B  unweighted e, r(e) a weighted range        e^(j): s(e) -> r(e)^(j)
//   C  weighted e                                 e^(1): s(e) -> r(e)^(1)
//   D  weighted e, strands i >= 2                 e^(i): r(e)^(i) -> s(e)
//
// The generator families defining the isomorphisms in both directions are
// built explicitly and can be checked relation by relation.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wlpa/algebra.hpp"
#include "wlpa/error.hpp"
#include "wlpa/graph.hpp"
#include "wlpa/lpa.hpp"
#include "wlpa/word.hpp"

namespace wlpa {

struct TransformTrace {
  WeightedGraph stage1;
  Graph stage2;
  /// Z = T(r(E_w)) as vertex indices of the input (equal to those of stage1).
  std::vector<VertexIndex> Z;
  /// (v, g^v) for v in r(E_w) of stage1, in vertex order; stage1 indices.
  std::vector<std::pair<VertexIndex, EdgeIndex>> gv;
};

namespace detail {

struct Stage1 {
  WeightedGraph graph;
  std::vector<VertexIndex> Z;
  // For every input edge: the output edges it became (one, or w(e) reversed copies).
  std::vector<std::vector<EdgeIndex>> image;
  std::vector<char> reversed;
};

enum class EdgeCase { A, B, C, D };

struct Stage2 {
  WeightedGraph graph;
  std::vector<std::optional<EdgeIndex>> gv;  // per input vertex
  // Input vertex -> output vertices (itself, or its copies 1..w(g^v)).
  std::vector<std::vector<VertexIndex>> vertex_image;
  struct VertexOrigin {
    VertexIndex vertex;
    unsigned copy;  // 0 for M
  };
  std::vector<VertexOrigin> vertex_origin;
  struct EdgeOrigin {
    EdgeCase kind;
    EdgeIndex edge;
    unsigned strand;  // j for B, i for C/D, 0 for A
  };
  std::vector<EdgeOrigin> edge_origin;
  std::vector<std::vector<EdgeIndex>> edge_image;  // input edge -> output edges in strand order
};

}  // namespace detail

/// Which stage-2 precondition fails, if any.
inline std::optional<std::string> sunk_precondition_failure(const WeightedGraph& g) {
  std::vector<int> emits(g.vertex_count(), 0), receives(g.vertex_count(), 0);
  for (EdgeIndex e : weighted_edges(g)) {
    if (!g.is_sink(g.edge(e).range)) return "ranges of weighted edges are sinks";
    ++emits[g.edge(e).source];
    ++receives[g.edge(e).range];
  }
  for (VertexIndex v = 0; v < g.vertex_count(); ++v)
    if (emits[v] > 1) return "no vertex emits two distinct weighted edges";
  for (VertexIndex v = 0; v < g.vertex_count(); ++v)
    if (receives[v] > 1) return "no vertex receives two distinct weighted edges";
  return std::nullopt;
}

namespace detail {

inline Stage1 build_stage1(const WeightedGraph& g) {
  LpaReport report = check_lpa(g);
  if (!report.satisfied) throw LpaViolated(std::move(report));
  Stage1 out;
  std::vector<VertexIndex> ranges;
  for (EdgeIndex e : weighted_edges(g)) ranges.push_back(g.edge(e).range);
  out.Z = tree(g, ranges);
  const auto in_z = as_mask(g, out.Z);
  for (const auto& v : g.vertex_names()) out.graph.add_vertex(v);
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const Edge& x = g.edge(e);
    std::vector<EdgeIndex> made;
    if (in_z[x.source]) {
      for (unsigned i = 1; i <= x.weight; ++i)
        made.push_back(out.graph.add_edge(superscript(x.id, i), x.range, x.source, 1));
    } else {
      made.push_back(out.graph.add_edge(x.id, x.source, x.range, x.weight));
    }
    out.image.push_back(std::move(made));
    out.reversed.push_back(in_z[x.source]);
  }
  if (auto failure = sunk_precondition_failure(out.graph))
    throw InternalError("stage-1 output violates: " + *failure);
  return out;
}

inline Stage2 build_stage2(const WeightedGraph& g) {
  if (auto failure = sunk_precondition_failure(g)) throw PreconditionViolated(*failure);
  Stage2 out;
  out.gv.resize(g.vertex_count());
  for (EdgeIndex e : weighted_edges(g)) out.gv[g.edge(e).range] = e;
  out.vertex_image.resize(g.vertex_count());
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (out.gv[v]) {
      for (unsigned j = 1; j <= g.edge(*out.gv[v]).weight; ++j) {
        out.vertex_image[v].push_back(out.graph.add_vertex(superscript(g.vertex_name(v), j)));
        out.vertex_origin.push_back({v, j});
      }
    } else {
      out.vertex_image[v].push_back(out.graph.add_vertex(g.vertex_name(v)));
      out.vertex_origin.push_back({v, 0});
    }
  }
  auto copy = [&](VertexIndex v, unsigned j) { return out.vertex_image[v].at(j - 1); };
  out.edge_image.resize(g.edge_count());
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const Edge& x = g.edge(e);
    auto& made = out.edge_image[e];
    if (x.weight == 1 && !out.gv[x.range]) {
      made.push_back(out.graph.add_edge(x.id, copy(x.source, 1), copy(x.range, 1), 1));
      out.edge_origin.push_back({EdgeCase::A, e, 0});
    } else if (x.weight == 1) {
      for (unsigned j = 1; j <= out.vertex_image[x.range].size(); ++j) {
        made.push_back(out.graph.add_edge(superscript(x.id, j), copy(x.source, 1), copy(x.range, j), 1));
        out.edge_origin.push_back({EdgeCase::B, e, j});
      }
    } else {
      made.push_back(out.graph.add_edge(superscript(x.id, 1), copy(x.source, 1), copy(x.range, 1), 1));
      out.edge_origin.push_back({EdgeCase::C, e, 1});
      for (unsigned i = 2; i <= x.weight; ++i) {
        made.push_back(out.graph.add_edge(superscript(x.id, i), copy(x.range, i), copy(x.source, 1), 1));
        out.edge_origin.push_back({EdgeCase::D, e, i});
      }
    }
  }
  return out;
}

}  // namespace detail

/// Stage 1. Throws LpaViolated if (LPA) fails.
inline WeightedGraph make_ranges_sinks(const WeightedGraph& g) { return detail::build_stage1(g).graph; }

/// Stage 2. Throws PreconditionViolated naming the failed clause.
inline Graph unweight_sunk(const WeightedGraph& g) { return Graph(detail::build_stage2(g).graph); }

inline std::pair<Graph, TransformTrace> to_unweighted(const WeightedGraph& g) {
  detail::Stage1 s1 = detail::build_stage1(g);
  detail::Stage2 s2 = detail::build_stage2(s1.graph);
  TransformTrace trace{s1.graph, Graph(s2.graph), s1.Z, {}};
  for (VertexIndex v = 0; v < s1.graph.vertex_count(); ++v)
    if (s2.gv[v]) trace.gv.emplace_back(v, *s2.gv[v]);
  Graph out = trace.stage2;
  return {std::move(out), std::move(trace)};
}

// ---------------------------------------------------------------------------
// Generator families

enum class Direction { Forward, Backward };

/// Images of the generators of one algebra inside another.
template <class Field>
struct FamilyMap {
  using Elem = Element<typename Field::value_type>;
  Direction direction = Direction::Forward;
  std::map<Letter, Elem> images;

  const Elem& image(Letter x) const {
    auto it = images.find(x);
    if (it == images.end()) throw InvalidLetter("generator has no image under the family map");
    return it->second;
  }
};

template <class Field>
struct FamilyPair {
  FamilyMap<Field> forward;
  FamilyMap<Field> backward;
};

/// Extends a family map multiplicatively and linearly to a combination of words.
template <class Field>
Element<typename Field::value_type> apply_homomorphism(
    const Algebra<Field>& target, const FamilyMap<Field>& map,
    const std::vector<std::pair<Word, typename Field::value_type>>& input) {
  auto result = target.zero();
  for (const auto& [w, c] : input) {
    auto acc = map.image(w.front());
    for (std::size_t k = 1; k < w.size() && !acc.is_zero(); ++k) acc = target.multiply(acc, map.image(w[k]));
    result = target.add(result, target.scalar_mul(c, acc));
  }
  return result;
}

template <class Field>
Element<typename Field::value_type> apply_homomorphism(const Algebra<Field>& target, const FamilyMap<Field>& map,
                                                       const Element<typename Field::value_type>& x) {
  std::vector<std::pair<Word, typename Field::value_type>> input(x.terms().begin(), x.terms().end());
  return apply_homomorphism(target, map, input);
}

namespace detail {

template <class Field>
void require_graph(const Algebra<Field>& alg, const WeightedGraph& expected, const char* what) {
  if (!(alg.graph() == expected)) throw GraphError(std::string("family maps: ") + what + " does not match the construction");
}

}  // namespace detail

/// Stage-1 families between L(E,w) (source) and L(stage1) (target).
template <class Field>
FamilyPair<Field> ranges_sink_family_maps(const Algebra<Field>& source, const Algebra<Field>& target) {
  const WeightedGraph& g = source.graph();
  const detail::Stage1 s1 = detail::build_stage1(g);
  detail::require_graph(target, s1.graph, "target graph");
  FamilyPair<Field> out;
  out.forward.direction = Direction::Forward;
  out.backward.direction = Direction::Backward;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    out.forward.images.emplace(Letter::vertex(v), target.vertex(v));
    out.backward.images.emplace(Letter::vertex(v), source.vertex(v));
  }
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    for (unsigned i = 1; i <= g.edge(e).weight; ++i) {
      if (s1.reversed[e]) {
        const EdgeIndex t = s1.image[e][i - 1];
        out.forward.images.emplace(Letter::edge(e, i), target.star(t, 1));
        out.forward.images.emplace(Letter::star(e, i), target.edge(t, 1));
        out.backward.images.emplace(Letter::edge(t, 1), source.star(e, i));
        out.backward.images.emplace(Letter::star(t, 1), source.edge(e, i));
      } else {
        const EdgeIndex t = s1.image[e][0];
        out.forward.images.emplace(Letter::edge(e, i), target.edge(t, i));
        out.forward.images.emplace(Letter::star(e, i), target.star(t, i));
        out.backward.images.emplace(Letter::edge(t, i), source.edge(e, i));
        out.backward.images.emplace(Letter::star(t, i), source.star(e, i));
      }
    }
  }
  return out;
}

/// Stage-2 families between L(E,w) with sunk weighted ranges (source) and L(F) (target).
template <class Field>
FamilyPair<Field> unweighting_family_maps(const Algebra<Field>& source, const Algebra<Field>& target) {
  const WeightedGraph& g = source.graph();
  const detail::Stage2 s2 = detail::build_stage2(g);
  detail::require_graph(target, s2.graph, "target graph");
  FamilyPair<Field> out;
  out.forward.direction = Direction::Forward;
  out.backward.direction = Direction::Backward;

  auto sum = [&](auto make, const std::vector<std::size_t>& ids) {
    auto acc = target.zero();
    for (std::size_t id : ids) acc = target.add(acc, make(id));
    return acc;
  };
  auto tv = [&](std::size_t id) { return target.vertex(id); };
  auto te = [&](std::size_t id) { return target.edge(id, 1); };
  auto ts = [&](std::size_t id) { return target.star(id, 1); };

  for (VertexIndex v = 0; v < g.vertex_count(); ++v) out.forward.images.emplace(Letter::vertex(v), sum(tv, s2.vertex_image[v]));
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const auto& made = s2.edge_image[e];
    if (g.edge(e).weight == 1) {
      out.forward.images.emplace(Letter::edge(e, 1), sum(te, made));
      out.forward.images.emplace(Letter::star(e, 1), sum(ts, made));
    } else {
      out.forward.images.emplace(Letter::edge(e, 1), te(made[0]));
      out.forward.images.emplace(Letter::star(e, 1), ts(made[0]));
      for (unsigned i = 2; i <= g.edge(e).weight; ++i) {
        out.forward.images.emplace(Letter::edge(e, i), ts(made[i - 1]));
        out.forward.images.emplace(Letter::star(e, i), te(made[i - 1]));
      }
    }
  }

  // (g^v_i)^* g^v_i
  auto copy_idempotent = [&](VertexIndex v, unsigned i) {
    const EdgeIndex gv = *s2.gv[v];
    return source.word(Word{Letter::star(gv, i), Letter::edge(gv, i)});
  };
  for (VertexIndex t = 0; t < s2.vertex_origin.size(); ++t) {
    const auto& o = s2.vertex_origin[t];
    out.backward.images.emplace(Letter::vertex(t), o.copy == 0 ? source.vertex(o.vertex) : copy_idempotent(o.vertex, o.copy));
  }
  for (EdgeIndex t = 0; t < s2.edge_origin.size(); ++t) {
    const auto& o = s2.edge_origin[t];
    const EdgeIndex e = o.edge;
    switch (o.kind) {
      case detail::EdgeCase::A:
      case detail::EdgeCase::C:
        out.backward.images.emplace(Letter::edge(t, 1), source.edge(e, 1));
        out.backward.images.emplace(Letter::star(t, 1), source.star(e, 1));
        break;
      case detail::EdgeCase::B: {
        const auto p = copy_idempotent(g.edge(e).range, o.strand);
        out.backward.images.emplace(Letter::edge(t, 1), source.multiply(source.edge(e, 1), p));
        out.backward.images.emplace(Letter::star(t, 1), source.multiply(p, source.star(e, 1)));
        break;
      }
      case detail::EdgeCase::D:
        out.backward.images.emplace(Letter::edge(t, 1), source.star(e, o.strand));
        out.backward.images.emplace(Letter::star(t, 1), source.edge(e, o.strand));
        break;
    }
  }
  return out;
}

/// Composite families between L(E,w) and L(F) for F = to_unweighted(E,w).
/// `middle` is the algebra of the stage-1 graph.
template <class Field>
FamilyPair<Field> family_maps(const Algebra<Field>& source, const Algebra<Field>& middle,
                              const Algebra<Field>& target) {
  const FamilyPair<Field> one = ranges_sink_family_maps(source, middle);
  const FamilyPair<Field> two = unweighting_family_maps(middle, target);
  FamilyPair<Field> out;
  out.forward.direction = Direction::Forward;
  out.backward.direction = Direction::Backward;
  for (const auto& [x, img] : one.forward.images) out.forward.images.emplace(x, apply_homomorphism(target, two.forward, img));
  for (const auto& [y, img] : two.backward.images) out.backward.images.emplace(y, apply_homomorphism(source, one.backward, img));
  return out;
}

/// Composite families checked against a trace from to_unweighted.
template <class Field>
FamilyPair<Field> family_maps(const Algebra<Field>& source, const Algebra<Field>& target, const TransformTrace& trace) {
  if (!(target.graph() == trace.stage2.weighted())) throw GraphError("family maps: trace does not match the target graph");
  const Algebra<Field> middle(trace.stage1, source.field());
  return family_maps(source, middle, target);
}

// ---------------------------------------------------------------------------
// Verification

struct RelationTally {
  std::size_t checked = 0;
  std::size_t failed = 0;
};

struct VerifyReport {
  bool ok = true;
  /// Indexed by relation kind 1..4 (slot 0 unused).
  RelationTally forward[5];
  RelationTally backward[5];
  RelationTally forward_roundtrip;   // bwd(fwd(x)) = x over source generators
  RelationTally backward_roundtrip;  // fwd(bwd(y)) = y over target generators
  std::optional<std::string> counterexample;
};

/// Checks (a) forward images satisfy the source relations, (b) backward
/// images satisfy the target relations, (c) both round trips fix generators.
template <class Field>
VerifyReport verify_families(const Algebra<Field>& source, const Algebra<Field>& target, const FamilyMap<Field>& fwd,
                             const FamilyMap<Field>& bwd) {
  VerifyReport report;
  auto fail = [&](RelationTally& t, const std::string& what) {
    ++t.failed;
    report.ok = false;
    if (!report.counterexample) report.counterexample = what;
  };
  for (const auto& rel : relation_instances(source)) {
    RelationTally& t = report.forward[static_cast<int>(rel.kind)];
    ++t.checked;
    if (!apply_homomorphism(target, fwd, rel.terms).is_zero())
      fail(t, "forward image of relation (" + to_string(rel.kind) + ") " + rel.label + " is nonzero");
  }
  for (const auto& rel : relation_instances(target)) {
    RelationTally& t = report.backward[static_cast<int>(rel.kind)];
    ++t.checked;
    if (!apply_homomorphism(source, bwd, rel.terms).is_zero())
      fail(t, "backward image of relation (" + to_string(rel.kind) + ") " + rel.label + " is nonzero");
  }
  for (Letter x : generators(source.graph())) {
    ++report.forward_roundtrip.checked;
    if (!(apply_homomorphism(source, bwd, fwd.image(x)) == source.generator(x)))
      fail(report.forward_roundtrip, "round trip does not fix source generator " + format_letter(source.graph(), x));
  }
  for (Letter y : generators(target.graph())) {
    ++report.backward_roundtrip.checked;
    if (!(apply_homomorphism(target, fwd, bwd.image(y)) == target.generator(y)))
      fail(report.backward_roundtrip, "round trip does not fix target generator " + format_letter(target.graph(), y));
  }
  return report;
}

}  // namespace wlpa
