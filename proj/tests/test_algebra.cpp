#include <gtest/gtest.h>

#include <random>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/random_elements.hpp"
#include "support/random_graphs.hpp"
#include "wlpa/algebra.hpp"

using namespace wlpa;
using namespace wlpa::testing;

namespace {

using QAlgebra = Algebra<RationalField>;

std::string nf(const QAlgebra& alg, std::string_view word) { return alg.format(alg.word(word)); }

}  // namespace

TEST(Normalize, SingleLoop) {
  const QAlgebra alg(fixture("loop1.wg"));
  EXPECT_EQ(nf(alg, "a.1* a.1"), "v");
  EXPECT_EQ(nf(alg, "a.1 a.1*"), "v");
  EXPECT_EQ(nf(alg, "v a.1 v"), "a.1");
  EXPECT_EQ(nf(alg, "a.1 a.1 a.1* a.1*"), "v");
  EXPECT_EQ(nf(alg, "a.1* a.1*"), "a.1* a.1*");
}

TEST(Normalize, LeavittTwoThree) {
  const QAlgebra alg(fixture("leavitt23.wg"));
  EXPECT_EQ(nf(alg, "e1.1 e1.2*"), "-e2.1 e2.2* - e3.1 e3.2*");
  EXPECT_EQ(nf(alg, "e1.2 e1.2*"), "v - e2.2 e2.2* - e3.2 e3.2*");
  EXPECT_EQ(nf(alg, "e1.1* e1.1"), "v - e1.2* e1.2");
  EXPECT_EQ(nf(alg, "e1.1* e2.1"), "-e1.2* e2.2");
  EXPECT_EQ(nf(alg, "e2.2 e2.2*"), "e2.2 e2.2*");
}

TEST(Normalize, VerticesAndComposability) {
  const QAlgebra alg(fixture("intro_e.wg"));
  EXPECT_EQ(nf(alg, "u u"), "u");
  EXPECT_EQ(nf(alg, "u v1"), "0");
  EXPECT_EQ(nf(alg, "a.1 b.1"), "0");
  EXPECT_EQ(nf(alg, "v3 b.1"), "0");
  EXPECT_EQ(nf(alg, "b.2* b.2"), "b.2* b.2");
  EXPECT_EQ(nf(alg, "b.1* b.1"), "v3 - b.2* b.2");
  EXPECT_EQ(nf(alg, "a.1* b.1"), "0");
  EXPECT_THROW(alg.normalize({{Word{}, alg.field().one()}}), InvalidLetter);
  EXPECT_THROW(alg.word(Word{Letter::edge(0, 2)}), InvalidLetter);
}

TEST(Normalize, NormalFormsAreNodwords) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    const auto g = random_graph(rng, {4, 5, 3, 0.5});
    const QAlgebra alg(g, random_choice(rng, g));
    const auto x = random_element(rng, alg, 4, 6);
    for (const auto& [w, c] : x.terms()) {
      EXPECT_TRUE(is_nodword(g, alg.choice(), w)) << format_word(g, w);
      EXPECT_TRUE(alg.is_normal(w));
      EXPECT_NE(c, 0);
    }
  }
}

TEST(Normalize, NodwordsAreFixed) {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 100; ++i) {
    const auto g = random_graph(rng, {4, 5, 3, 0.5});
    const QAlgebra alg(g);
    for (int j = 0; j < 20; ++j) {
      const Word w = random_dpath(rng, g, 6);
      if (!is_nodword(g, alg.choice(), w)) continue;
      const auto x = alg.word(w);
      ASSERT_EQ(x.size(), 1u);
      EXPECT_EQ(x.terms().begin()->first, w);
    }
  }
}

TEST(Normalize, Idempotent) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 200; ++i) {
    const auto g = random_graph(rng, {4, 5, 3, 0.5});
    const QAlgebra alg(g);
    const auto x = random_element(rng, alg, 5, 6);
    QAlgebra::Combination again(x.terms().begin(), x.terms().end());
    EXPECT_EQ(alg.normalize(again), x);
  }
}

TEST(Normalize, StrategiesAgree) {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 300; ++i) {
    const auto g = random_graph(rng, {4, 5, 3, 0.5});
    const QAlgebra alg(g, random_choice(rng, g));
    const auto c = random_combination(rng, alg, 5, 7);
    EXPECT_EQ(alg.normalize(c, Strategy::LeftmostInnermost), alg.normalize(c, Strategy::RightmostInnermost));
  }
}

TEST(Normalize, StepLimit) {
  QAlgebra alg(fixture("leavitt23.wg"));
  alg.set_step_limit(1);
  EXPECT_THROW(alg.word("e1.2 e1.2 e1.2* e1.2*"), InternalError);
}

TEST(Relations, VanishExamples) {
  for (const char* name : {"exlpa1.wg", "e2loops.wg", "leavitt23.wg", "intro_e.wg", "loop_tail.wg"}) {
    const QAlgebra alg(fixture(name));
    const auto rels = relation_instances(alg);
    EXPECT_FALSE(rels.empty());
    for (const auto& r : rels) EXPECT_TRUE(alg.normalize(r.terms).is_zero()) << name << ": " << r.label;
  }
}

TEST(Relations, VanishOnRandomGraphs) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 100; ++i) {
    const auto g = random_graph(rng, {5, 7, 3, 0.4});
    const QAlgebra alg(g, random_choice(rng, g));
    for (const auto& r : relation_instances(alg)) ASSERT_TRUE(alg.normalize(r.terms).is_zero()) << r.label;
  }
}

TEST(Relations, InstanceCounts) {
  const QAlgebra alg(fixture("e2loops.wg"));
  std::size_t count[5] = {};
  for (const auto& r : relation_instances(alg)) ++count[static_cast<int>(r.kind)];
  EXPECT_EQ(count[1], 1u);
  EXPECT_EQ(count[2], 4u * 3u);
  EXPECT_EQ(count[3], 4u);
  EXPECT_EQ(count[4], 4u);
  EXPECT_EQ(to_string(RelationKind::IV), "iv");
}

TEST(Ring, Associativity) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 150; ++i) {
    const auto g = random_graph(rng, {3, 5, 3, 0.5});
    const QAlgebra alg(g);
    const auto a = random_element(rng, alg, 3, 4), b = random_element(rng, alg, 3, 4),
               c = random_element(rng, alg, 3, 4);
    EXPECT_EQ(alg.multiply(alg.multiply(a, b), c), alg.multiply(a, alg.multiply(b, c)));
  }
}

TEST(Ring, DistributivityAndUnit) {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 100; ++i) {
    const auto g = random_graph(rng, {3, 5, 3, 0.5});
    const QAlgebra alg(g);
    const auto a = random_element(rng, alg, 3, 4), b = random_element(rng, alg, 3, 4),
               c = random_element(rng, alg, 3, 4);
    EXPECT_EQ(alg.multiply(a, alg.add(b, c)), alg.add(alg.multiply(a, b), alg.multiply(a, c)));
    EXPECT_EQ(alg.multiply(alg.unit(), a), a);
    EXPECT_EQ(alg.multiply(a, alg.unit()), a);
    EXPECT_TRUE(alg.sub(a, a).is_zero());
  }
}

TEST(Ring, Involution) {
  const QAlgebra alg(fixture("e2loops.wg"));
  const auto p = alg.word("b.2 a.1 b.2*");
  EXPECT_EQ(alg.format(alg.involute(p)), "b.2 a.1* b.2*");
  std::mt19937_64 rng(53);
  for (int i = 0; i < 100; ++i) {
    const auto g = random_graph(rng, {3, 5, 3, 0.5});
    const QAlgebra h(g);
    const auto a = random_element(rng, h, 3, 4), b = random_element(rng, h, 3, 4);
    EXPECT_EQ(h.involute(h.involute(a)), a);
    EXPECT_EQ(h.involute(h.multiply(a, b)), h.multiply(h.involute(b), h.involute(a)));
  }
}

TEST(Ring, ScalarsAndFormat) {
  const QAlgebra alg(fixture("loop1.wg"));
  const RationalField& k = alg.field();
  const auto x = alg.add(alg.scalar_mul(k.parse("3/2"), alg.word("a.1")), alg.neg(alg.word("a.1*")));
  EXPECT_EQ(alg.format(x), "3/2 a.1 - a.1*");
  EXPECT_EQ(alg.format(alg.scalar(k.from_int(2))), "2 v");
  EXPECT_EQ(alg.format(alg.zero()), "0");
  EXPECT_EQ(x.coefficient(parse_word(alg.graph(), "a.1*")), k.from_int(-1));
  EXPECT_FALSE(x.coefficient(parse_word(alg.graph(), "v")));
}

TEST(Ring, PrimeField) {
  const Algebra<PrimeField> alg(fixture("leavitt23.wg"), PrimeField(7));
  const auto x = alg.word("e1.1 e1.2*");
  EXPECT_EQ(alg.format(x), "6 e2.1 e2.2* + 6 e3.1 e3.2*");
  const auto seven = alg.scalar(alg.field().from_int(7));
  EXPECT_TRUE(seven.is_zero());
  std::mt19937_64 rng(59);
  for (int i = 0; i < 50; ++i) {
    const auto g = random_graph(rng, {3, 5, 3, 0.5});
    const Algebra<PrimeField> h(g, PrimeField(5));
    for (const auto& r : relation_instances(h)) ASSERT_TRUE(h.normalize(r.terms).is_zero());
  }
}

TEST(Ring, ContextMismatch) {
  const QAlgebra a(fixture("loop1.wg")), b(fixture("loop1.wg"));
  EXPECT_THROW(a.multiply(a.unit(), b.unit()), ContextMismatch);
  EXPECT_THROW(a.add(a.unit(), b.unit()), ContextMismatch);
  const QAlgebra::Elem unbound;
  EXPECT_NO_THROW(a.add(unbound, a.unit()));
  const auto l23 = fixture("leavitt23.wg");
  const QAlgebra c(l23), d(l23, default_special_edges(l23).with(l23, 0, 1));
  EXPECT_THROW(c.multiply(c.unit(), d.unit()), ContextMismatch);
}

TEST(Grading, Degrees) {
  const QAlgebra alg(fixture("e2loops.wg"));
  EXPECT_EQ(alg.grading_rank(), 2u);
  EXPECT_EQ(std::get<MultiDegree>(alg.degree(alg.word("a.1"))), (MultiDegree{1, 0}));
  EXPECT_EQ(std::get<MultiDegree>(alg.degree(alg.word("b.2*"))), (MultiDegree{0, -1}));
  EXPECT_EQ(std::get<MultiDegree>(alg.degree(alg.word("v"))), (MultiDegree{0, 0}));
  EXPECT_TRUE(std::holds_alternative<ZeroElement>(alg.degree(alg.zero())));
  EXPECT_TRUE(std::holds_alternative<NotHomogeneous>(alg.degree(alg.add(alg.word("a.1"), alg.word("b.2")))));
}

TEST(Grading, MultiplicationAddsDegrees) {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 200; ++i) {
    const auto g = random_graph(rng, {3, 5, 3, 0.5});
    const QAlgebra alg(g);
    const Word u = random_dpath(rng, g, 4), w = random_dpath(rng, g, 4);
    const auto x = alg.word(u), y = alg.word(w);
    const auto d = alg.degree(alg.multiply(x, y));
    if (x.is_zero() || y.is_zero() || std::holds_alternative<ZeroElement>(d)) continue;
    auto sum = alg.word_degree(u);
    const auto dw = alg.word_degree(w);
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += dw[k];
    ASSERT_TRUE(std::holds_alternative<MultiDegree>(d));
    EXPECT_EQ(std::get<MultiDegree>(d), sum);
  }
}

TEST(Support, MinLengthAndIdempotents) {
  const QAlgebra alg(fixture("e2loops.wg"));
  EXPECT_EQ(alg.min_support_length(alg.word("b.2 a.1 b.2*")), 3u);
  EXPECT_EQ(alg.min_support_length(alg.word("v")), 0u);
  EXPECT_FALSE(alg.min_support_length(alg.zero()));
  EXPECT_TRUE(alg.is_idempotent(alg.word("v")));
  EXPECT_TRUE(alg.is_idempotent(alg.word("b.2* b.2")));
  EXPECT_FALSE(alg.is_idempotent(alg.word("b.2 a.1 b.2*")));
  EXPECT_TRUE(alg.is_idempotent(alg.zero()));
}

TEST(ChoiceIndependence, SameElementUnderAnyChoice) {
  std::mt19937_64 rng(67);
  for (int i = 0; i < 100; ++i) {
    const auto g = random_graph(rng, {3, 5, 3, 0.6});
    const QAlgebra a(g, random_choice(rng, g)), b(g, random_choice(rng, g));
    const auto c = random_combination(rng, a, 4, 5);
    const auto in_a = a.normalize(c);
    QAlgebra::Combination back(in_a.terms().begin(), in_a.terms().end());
    EXPECT_EQ(b.normalize(back), b.normalize(c));
  }
}

TEST(Oracle, DimensionMatchesQuotient) {
  for (const char* name : {"loop1.wg", "e2loops.wg", "loop_tail.wg", "intro_e.wg"}) {
    const auto g = fixture(name);
    const QAlgebra alg(g);
    for (std::size_t L = 1; L <= 3; ++L)
      EXPECT_EQ(rewriting_span_dimension(alg, L), quotient_dimension_oracle(g, L)) << name << " L=" << L;
  }
}
