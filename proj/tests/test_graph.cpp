#include <gtest/gtest.h>

#include <random>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/random_graphs.hpp"
#include "wlpa/graph.hpp"

using namespace wlpa;
using namespace wlpa::testing;

namespace {

std::vector<std::string> names(const WeightedGraph& g, const std::vector<VertexIndex>& vs) {
  std::vector<std::string> out;
  for (VertexIndex v : vs) out.push_back(g.vertex_name(v));
  return out;
}

ParseErrorKind parse_kind(std::string_view text) {
  try {
    parse_weighted_graph(text);
  } catch (const ParseError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no parse error for: " << text;
  return ParseErrorKind::Syntax;
}

}  // namespace

TEST(Parse, MinimalLoop) {
  const auto g = parse_weighted_graph("vertex v\nedge a v v 1");
  EXPECT_EQ(g.vertex_count(), 1u);
  ASSERT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.edge(0).source, g.edge(0).range);
  EXPECT_EQ(g.edge(0).weight, 1u);
}

TEST(Parse, ExampleGraph) {
  const auto g = fixture("exlpa1.wg");
  EXPECT_EQ(g.vertex_names(), (std::vector<std::string>{"t", "u", "v", "x", "y", "z"}));
  EXPECT_EQ(g.edge_count(), 9u);
  for (const Edge& e : g.edges()) EXPECT_EQ(e.weight, (e.id == "a" || e.id == "f" || e.id == "k") ? 2u : 1u) << e.id;
}

TEST(Parse, Errors) {
  EXPECT_EQ(parse_kind("edge a v v 1"), ParseErrorKind::DanglingEndpoint);
  EXPECT_EQ(parse_kind("vertex v\nvertex v"), ParseErrorKind::DuplicateId);
  EXPECT_EQ(parse_kind("vertex v\nedge a v v 1\nedge a v v 1"), ParseErrorKind::DuplicateId);
  EXPECT_EQ(parse_kind("vertex v\nedge a v v 0"), ParseErrorKind::BadWeight);
  EXPECT_EQ(parse_kind("vertex v\nedge a v v x"), ParseErrorKind::BadWeight);
  EXPECT_EQ(parse_kind("vertex v\nedge a v"), ParseErrorKind::Syntax);
  EXPECT_EQ(parse_kind("node v"), ParseErrorKind::Syntax);
  EXPECT_EQ(parse_kind("vertex v!"), ParseErrorKind::Syntax);
}

TEST(Parse, ErrorPosition) {
  try {
    parse_weighted_graph("vertex v\n# c\nedge a v w 1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 10u);
  }
}

TEST(Parse, CommentsBlankLinesAndLateVertices) {
  const auto g = parse_weighted_graph("# header\n\nedge a u v 2   # trailing\nvertex u\nvertex v\n");
  EXPECT_EQ(g.vertex_count(), 2u);
  EXPECT_EQ(g.edge(0).weight, 2u);
}

TEST(Parse, UnweightedRejectsWeights) {
  EXPECT_NO_THROW(parse_graph("vertex v\nedge a v v\nedge b v v 1"));
  EXPECT_THROW(parse_graph("vertex v\nedge a v v 2"), ParseError);
}

TEST(Serialize, RoundTrip) {
  for (const char* name : {"exlpa1.wg", "exlpa1_sunk.wg", "e2loops.wg", "intro_e.wg"}) {
    const auto g = fixture(name);
    EXPECT_EQ(parse_weighted_graph(serialize(g)), g) << name;
    EXPECT_EQ(serialize(parse_weighted_graph(serialize(g))), serialize(g));
  }
  const auto f = parse_graph(fixture_text("exlpa2_unweighted.wg"));
  EXPECT_EQ(serialize(f), fixture_text("exlpa2_unweighted.wg"));
}

TEST(Serialize, RandomRoundTrip) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto g = random_graph(rng, {6, 8, 3, 0.4});
    EXPECT_EQ(parse_weighted_graph(serialize(g)), g);
  }
}

TEST(VertexWeight, Values) {
  const auto g = fixture("exlpa1.wg");
  EXPECT_EQ(vertex_weight(g, g.vertex("z")), 0u);
  EXPECT_EQ(vertex_weight(g, g.vertex("v")), 2u);
  EXPECT_EQ(vertex_weight(g, g.vertex("u")), 1u);
  const auto l23 = fixture("leavitt23.wg");
  EXPECT_EQ(vertex_weight(l23, 0), 2u);
  EXPECT_THROW(vertex_weight(g, 17), GraphError);
}

TEST(WeightedEdges, Values) {
  const auto g = fixture("exlpa1.wg");
  std::vector<std::string> ids;
  for (EdgeIndex e : weighted_edges(g)) ids.push_back(g.edge(e).id);
  EXPECT_EQ(ids, (std::vector<std::string>{"a", "f", "k"}));
  EXPECT_TRUE(weighted_edges(fixture("loop1.wg")).empty());
  const auto e2 = fixture("e2loops.wg");
  ASSERT_EQ(weighted_edges(e2).size(), 1u);
  EXPECT_EQ(e2.edge(weighted_edges(e2)[0]).id, "b");
}

TEST(Reaches, Examples) {
  const auto g = fixture("exlpa1.wg");
  EXPECT_TRUE(reaches(g, g.vertex("u"), g.vertex("u")));
  EXPECT_TRUE(reaches(g, g.vertex("v"), g.vertex("z")));
  EXPECT_FALSE(reaches(g, g.vertex("z"), g.vertex("v")));
  EXPECT_THROW(reaches(g, 0, 99), GraphError);
}

TEST(Reaches, MatchesTransitiveClosure) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    const auto g = random_graph(rng, {8, 12, 2, 0.2});
    const auto closure = transitive_closure(g);
    for (VertexIndex u = 0; u < g.vertex_count(); ++u)
      for (VertexIndex v = 0; v < g.vertex_count(); ++v) ASSERT_EQ(reaches(g, u, v), closure[u][v] != 0);
  }
}

TEST(Tree, Examples) {
  const auto g = fixture("exlpa1.wg");
  const VertexIndex roots[] = {g.vertex("u"), g.vertex("x"), g.vertex("z")};
  EXPECT_EQ(names(g, tree(g, roots)), (std::vector<std::string>{"t", "u", "x", "y", "z"}));
  EXPECT_EQ(names(g, tree(g, g.vertex("z"))), (std::vector<std::string>{"z"}));
  EXPECT_TRUE(tree(g, std::span<const VertexIndex>{}).empty());
}

TEST(Tree, ClosedAndMonotone) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto g = random_graph(rng, {7, 10, 2, 0.2});
    std::vector<VertexIndex> small{0}, big{0, g.vertex_count() - 1};
    const auto ts = tree(g, small), tb = tree(g, big);
    for (VertexIndex v : ts) EXPECT_NE(std::find(tb.begin(), tb.end(), v), tb.end());
    for (VertexIndex v : tb)
      for (EdgeIndex e : g.out_edges(v)) EXPECT_NE(std::find(tb.begin(), tb.end(), g.edge(e).range), tb.end());
  }
}

TEST(InLine, Examples) {
  const auto g = fixture("exlpa1.wg");
  const auto a = g.edge_index("a"), f = g.edge_index("f");
  EXPECT_TRUE(in_line(g, a, a));
  EXPECT_FALSE(in_line(g, a, f));
  EXPECT_TRUE(in_line(g, f, g.edge_index("k")));
  // Two weighted edges pointing toward a shared middle from opposite sides.
  const auto p = parse_weighted_graph("vertex l\nvertex m\nvertex r\nedge e l m 2\nedge f r m 2\n");
  EXPECT_FALSE(in_line(p, 0, 1));
}

TEST(Cycles, Examples) {
  const auto g = fixture("exlpa1.wg");
  const auto cs = cycles_through(g, g.vertex("v"));
  ASSERT_EQ(cs.size(), 1u);
  EXPECT_EQ(format_path(g, cs[0]), "d");
  EXPECT_TRUE(cycles_through(fixture("intro_e.wg"), 1).empty());
  const auto e2 = fixture("e2loops.wg");
  EXPECT_EQ(cycles_through(e2, 0).size(), 2u);
  const auto t = cycles_through(g, g.vertex("t"));
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(format_path(g, t[0]), "a b");
}

TEST(Cycles, MatchBruteForce) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 400; ++i) {
    const auto g = random_graph(rng, {5, 6, 2, 0.2});
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
      const auto got = cycles_through(g, v);
      auto want = brute_force_cycles(g, v);
      std::vector<std::vector<EdgeIndex>> have;
      for (const auto& c : got) {
        EXPECT_TRUE(is_path(g, c));
        EXPECT_EQ(c.source(g), v);
        EXPECT_EQ(c.range(g), v);
        have.push_back(c.edges);
      }
      std::sort(have.begin(), have.end());
      std::sort(want.begin(), want.end());
      ASSERT_EQ(have, want);
    }
  }
}

TEST(ShortestPath, Basics) {
  const auto g = fixture("exlpa1.wg");
  const auto p = shortest_path(g, g.vertex("v"), g.vertex("z"));
  ASSERT_TRUE(p);
  EXPECT_EQ(format_path(g, *p), "e k");
  EXPECT_FALSE(shortest_path(g, g.vertex("z"), g.vertex("v")));
  EXPECT_EQ(shortest_path(g, 0, 0)->length(), 0u);
}

TEST(Identifiers, Superscripts) {
  EXPECT_EQ(superscript("a", 1), "a^(1)");
  EXPECT_EQ(superscript("h^(1)", 2), "(h^(1))^(2)");
  EXPECT_TRUE(is_valid_identifier("(h^(1))^(2)"));
  EXPECT_FALSE(is_valid_identifier("a.b"));
  EXPECT_FALSE(is_valid_identifier(""));
}
