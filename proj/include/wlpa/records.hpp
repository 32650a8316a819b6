#pragma once

// Machine-readable (JSON) records for graphs, reports, elements and traces.

#include <json.hpp>

#include <string>

#include "wlpa/algebra.hpp"
#include "wlpa/graph.hpp"
#include "wlpa/lpa.hpp"
#include "wlpa/unweighting.hpp"
#include "wlpa/word.hpp"

namespace wlpa {

using Json = nlohmann::ordered_json;

inline Json graph_record(const WeightedGraph& g, bool weights = true) {
  Json edges = Json::array();
  for (const Edge& e : g.edges()) {
    Json r{{"id", e.id}, {"source", g.vertex_name(e.source)}, {"range", g.vertex_name(e.range)}};
    if (weights) r["weight"] = e.weight;
    edges.push_back(std::move(r));
  }
  return Json{{"vertices", g.vertex_names()}, {"edges", std::move(edges)}};
}

inline Json path_record(const WeightedGraph& g, const GraphPath& p) {
  Json edges = Json::array();
  for (EdgeIndex e : p.edges) edges.push_back(g.edge(e).id);
  return Json{{"base", g.vertex_name(p.base)}, {"edges", std::move(edges)}};
}

inline Json violation_record(const WeightedGraph& g, const LpaViolation& x) {
  auto ids = [&](const std::vector<EdgeIndex>& es) {
    Json a = Json::array();
    for (EdgeIndex e : es) a.push_back(g.edge(e).id);
    return a;
  };
  Json r{{"kind", to_string(x.kind)}, {"vertex", g.vertex_name(x.vertex)}, {"weighted", ids(x.weighted)}};
  if (!x.emitted.empty()) r["emitted"] = ids(x.emitted);
  if (x.path) r["path"] = path_record(g, *x.path);
  if (x.cycle) r["cycle"] = path_record(g, *x.cycle);
  return r;
}

inline Json report_record(const WeightedGraph& g, const LpaReport& report) {
  Json v = Json::array();
  for (const auto& x : report.violations) v.push_back(violation_record(g, x));
  return Json{{"satisfied", report.satisfied}, {"violations", std::move(v)}};
}

inline Json word_record(const WeightedGraph& g, const Word& w) {
  Json a = Json::array();
  for (Letter x : w) a.push_back(format_letter(g, x));
  return a;
}

template <class Field>
Json element_record(const Algebra<Field>& alg, const typename Algebra<Field>::Elem& x) {
  Json terms = Json::array();
  for (const auto& [w, c] : x.terms())
    terms.push_back(Json{{"word", word_record(alg.graph(), w)}, {"coefficient", alg.field().to_string(c)}});
  return Json{{"field", alg.field().name()}, {"terms", std::move(terms)}};
}

inline Json trace_record(const TransformTrace& t) {
  const WeightedGraph& g = t.stage1;
  Json z = Json::array();
  for (VertexIndex v : t.Z) z.push_back(g.vertex_name(v));
  Json gv = Json::object();
  for (const auto& [v, e] : t.gv) gv[g.vertex_name(v)] = g.edge(e).id;
  return Json{{"Z", std::move(z)}, {"gv", std::move(gv)}};
}

inline Json verify_record(const VerifyReport& r) {
  auto tally = [](const RelationTally& t) { return Json{{"checked", t.checked}, {"failed", t.failed}}; };
  Json fwd = Json::object(), bwd = Json::object();
  for (int k = 1; k <= 4; ++k) {
    fwd[to_string(static_cast<RelationKind>(k))] = tally(r.forward[k]);
    bwd[to_string(static_cast<RelationKind>(k))] = tally(r.backward[k]);
  }
  Json out{{"ok", r.ok},
           {"forward_relations", std::move(fwd)},
           {"backward_relations", std::move(bwd)},
           {"forward_roundtrip", tally(r.forward_roundtrip)},
           {"backward_roundtrip", tally(r.backward_roundtrip)}};
  if (r.counterexample) out["counterexample"] = *r.counterexample;
  return out;
}

}  // namespace wlpa
