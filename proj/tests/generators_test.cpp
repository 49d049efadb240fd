#include <gtest/gtest.h>

#include <set>

#include "cfd/decompose.hpp"
#include "cfd/exact.hpp"
#include "cfd/generators.hpp"
#include "test_util.hpp"

namespace cfd {
namespace {

Value optimum(const Flow& flow, CostMode mode = CostMode::kColours) {
  ExactOptions options;
  options.cost_mode = mode;
  ExactResult r = exact_min_cost(flow, options);
  EXPECT_EQ(r.status, SearchStatus::kOptimal);
  return r.cost.value_or(-1);
}

void expect_sound_certificate(const GeneratedInstance& g) {
  EXPECT_TRUE(validate_flow(g.instance.flow).ok());
  EXPECT_EQ(g.instance.bound, g.certificate.threshold);
  EXPECT_FALSE(g.provenance.empty());
  if (g.certificate.witness) {
    EXPECT_TRUE(verify_decomposition(g.instance.flow, *g.certificate.witness).ok());
    EXPECT_LE(decomposition_objective(g.instance.network(),
                                      *g.certificate.witness,
                                      g.certificate.objective),
              g.certificate.threshold);
  }
}

int degree(const ColouredNetwork& net, int v) {
  return static_cast<int>(net.out_arcs(VertexId(v)).size() +
                          net.in_arcs(VertexId(v)).size());
}

LinkageQuery figure_linkage_base() {
  // u1 u2 z v1 v2 as 0..4.
  LinkageQuery q;
  q.graph.vertex_count = 5;
  q.graph.arcs = {{0, 2}, {0, 3}, {1, 2}, {1, 0}, {2, 3}, {3, 4}, {4, 2}};
  q.u1 = 0;
  q.u2 = 1;
  q.v1 = 3;
  q.v2 = 4;
  return q;
}

Clause clause(int a, int b, int c) {
  auto lit = [](int v) { return Literal{std::abs(v) - 1, v < 0}; };
  return {lit(a), lit(b), lit(c)};
}

TEST(ThreePartition, YesInstance) {
  std::vector<Value> values{4, 5, 6, 4, 5, 6};
  GeneratedInstance g = gen_3partition(values, 15);
  EXPECT_EQ(g.instance.network().vertex_count(), 11);
  EXPECT_EQ(g.instance.network().arc_count(), 16);
  EXPECT_EQ(g.certificate.threshold, 12);
  ASSERT_TRUE(g.certificate.witness);
  expect_sound_certificate(g);
  EXPECT_EQ(optimum(g.instance.flow), 12);
}

TEST(ThreePartition, NoInstance) {
  std::vector<Value> values{4, 4, 4, 6, 6, 6};
  GeneratedInstance g = gen_3partition(values, 15);
  EXPECT_FALSE(g.certificate.witness);
  EXPECT_EQ(decide_k_cost(g.instance.flow, 12).answer, Answer::kNo);
}

TEST(ThreePartition, Colours) {
  std::vector<Value> values{4, 5, 6, 4, 5, 6};
  GeneratedInstance g = gen_3partition(values, 15);
  const ColouredNetwork& net = g.instance.network();
  int left = 0;
  for (const Arc& a : net.arcs()) {
    if (a.colour == 3) {
      ++left;
    } else {
      EXPECT_TRUE(a.colour == 1 || a.colour == 2);
      EXPECT_EQ(a.capacity, 15);
    }
  }
  EXPECT_EQ(left, 12);
}

TEST(ThreePartition, RejectsBadParameters) {
  std::vector<Value> out_of_range{3, 6, 6, 4, 5, 6};
  EXPECT_THROW(gen_3partition(out_of_range, 15), InvalidInput);
  std::vector<Value> wrong_sum{4, 5, 6, 4, 5, 5};
  EXPECT_THROW(gen_3partition(wrong_sum, 15), InvalidInput);
  std::vector<Value> not_triples{4, 5, 6, 4};
  EXPECT_THROW(gen_3partition(not_triples, 15), InvalidInput);
}

TEST(ThreePartition, AgreesWithBruteForce) {
  testing::Rng rng(61);
  int yes = 0;
  for (int i = 0; i < 30; ++i) {
    Value target = testing::uniform(rng, 13, 30);
    std::vector<Value> values;
    Value lo = target / 4 + 1;
    Value hi = (target - 1) / 2;
    for (int j = 0; j < 5; ++j) values.push_back(testing::uniform(rng, lo, hi));
    Value last = 2 * target - std::accumulate(values.begin(), values.end(), Value{0});
    if (last < lo || last > hi) continue;
    values.push_back(last);
    bool expected = testing::brute_force_3partition(values, target);
    GeneratedInstance g = gen_3partition(values, target);
    expect_sound_certificate(g);
    EXPECT_EQ(g.certificate.witness.has_value(), expected);
    EXPECT_EQ(decide_k_cost(g.instance.flow, 12).answer,
              expected ? Answer::kYes : Answer::kNo);
    yes += expected;
  }
}

TEST(Splittable, Fig4BaseWithTwoDetours) {
  GeneratedInstance g = gen_from_splittable(fixture("fig4").flow, 2, 6);
  EXPECT_EQ(g.certificate.threshold, 7);
  expect_sound_certificate(g);
  EXPECT_EQ(optimum(g.instance.flow), 7);
}

TEST(Splittable, SingleArcBase) {
  ColouredNetwork::Builder b(2);
  b.add_arc(VertexId(0), VertexId(1), 1, 1);
  Flow base(b.build(), {1}, VertexId(0), VertexId(1));
  GeneratedInstance g = gen_from_splittable(base, 2, 1);
  EXPECT_EQ(g.instance.network().vertex_count(), 3);
  EXPECT_EQ(g.instance.network().arc_count(), 3);
  EXPECT_EQ(optimum(g.instance.flow), 2);
}

TEST(Splittable, RejectsBadBase) {
  ColouredNetwork::Builder b(2);
  b.add_arc(VertexId(0), VertexId(1), 3, 1);
  Flow three(b.build(), {3}, VertexId(0), VertexId(1));
  EXPECT_THROW(gen_from_splittable(three, 2, 1), InvalidInput);
  EXPECT_THROW(gen_from_splittable(fixture("fig4").flow, 1, 6), InvalidInput);
}

TEST(Splittable, AgreesWithBruteForce) {
  testing::Rng rng(62);
  for (int i = 0; i < 15; ++i) {
    Flow base = testing::random_124_flow(rng, 5, 3);
    Value best =
        testing::brute_force_min_decomposition(base, testing::Objective::kPaths);
    Value k = std::max<Value>(0, best - (i % 2));
    int q = static_cast<int>(testing::uniform(rng, 2, 3));
    GeneratedInstance g = gen_from_splittable(base, q, k);
    expect_sound_certificate(g);
    EXPECT_EQ(decide_k_cost(g.instance.flow, k + q - 1).answer,
              best <= k ? Answer::kYes : Answer::kNo);
  }
}

TEST(WeakLinkage, FigureBase) {
  GeneratedInstance g = gen_weak2linkage(figure_linkage_base());
  EXPECT_EQ(g.instance.network().vertex_count(), 11);
  EXPECT_EQ(g.instance.network().arc_count(), 41);
  EXPECT_EQ(g.certificate.threshold, 19);
  ASSERT_TRUE(g.certificate.witness);
  expect_sound_certificate(g);
  EXPECT_EQ(optimum(g.instance.flow), 19);
}

TEST(WeakLinkage, NoSecondPathMeansNo) {
  // u2 has an out-arc but nothing reaches v2 from it.
  LinkageQuery q;
  q.graph.vertex_count = 6;
  q.graph.arcs = {{0, 3}, {1, 2}, {2, 0}, {5, 4}};
  q.u1 = 0;
  q.u2 = 1;
  q.v1 = 3;
  q.v2 = 4;
  ASSERT_FALSE(testing::brute_force_weak_linkage(q));
  GeneratedInstance g = gen_weak2linkage(q);
  EXPECT_FALSE(g.certificate.witness);
  EXPECT_EQ(decide_k_cost(g.instance.flow, g.certificate.threshold).answer,
            Answer::kNo);
}

TEST(WeakLinkage, LambdaScalesValues) {
  GeneratedInstance g = gen_weak2linkage(figure_linkage_base(), {3, false});
  for (Value x : g.instance.flow.values()) EXPECT_EQ(x, 3);
  expect_sound_certificate(g);
}

TEST(WeakLinkage, DegreeBoundedVariant) {
  // Base max degree 3.
  LinkageQuery q;
  q.graph.vertex_count = 5;
  q.graph.arcs = {{0, 2}, {2, 3}, {1, 4}, {2, 4}, {1, 0}};
  q.u1 = 0;
  q.u2 = 1;
  q.v1 = 3;
  q.v2 = 4;
  GeneratedInstance g = gen_weak2linkage(q, {1, true});
  const ColouredNetwork& net = g.instance.network();
  const int m = static_cast<int>(q.graph.arcs.size());
  EXPECT_EQ(net.arc_count(), 7 * m - 8);
  EXPECT_EQ(net.vertex_count(), 5 + 2 + 4 * (m - 2));
  expect_sound_certificate(g);
  for (int v = 0; v < net.vertex_count(); ++v) {
    if (v == g.instance.flow.source().value() ||
        v == g.instance.flow.sink().value()) {
      continue;
    }
    EXPECT_LE(degree(net, v), 6) << "vertex " << v;
  }
  EXPECT_EQ(decide_k_cost(g.instance.flow, g.certificate.threshold).answer,
            Answer::kYes);
}

TEST(WeakLinkage, RejectsBadQueries) {
  LinkageQuery q = figure_linkage_base();
  q.v2 = q.u1;
  EXPECT_THROW(gen_weak2linkage(q), InvalidInput);
  LinkageQuery tiny = figure_linkage_base();
  tiny.graph.arcs = {{0, 3}};
  EXPECT_THROW(gen_weak2linkage(tiny), InvalidInput);
}

TEST(OneInThreeSat, FigureFormula) {
  Formula f{3, {clause(1, 2, 3), clause(1, -2, -3)}};
  GeneratedInstance g = gen_1in3sat(f);
  EXPECT_EQ(g.instance.network().vertex_count(), 9);
  EXPECT_EQ(g.instance.network().arc_count(), 24);
  EXPECT_TRUE(g.instance.network().is_acyclic());
  EXPECT_EQ(g.certificate.threshold, 12);
  ASSERT_TRUE(g.certificate.witness);
  expect_sound_certificate(g);
  EXPECT_EQ(optimum(g.instance.flow), 12);
}

TEST(OneInThreeSat, AllSignPatternsIsNo) {
  Formula f{3, {}};
  for (int mask = 0; mask < 8; ++mask) {
    f.clauses.push_back(clause(mask & 1 ? -1 : 1, mask & 2 ? -2 : 2,
                               mask & 4 ? -3 : 3));
  }
  ASSERT_FALSE(testing::brute_force_1in3(f));
  GeneratedInstance g = gen_1in3sat(f);
  EXPECT_FALSE(g.certificate.witness);
  EXPECT_EQ(decide_k_cost(g.instance.flow, 12).answer, Answer::kNo);
}

TEST(OneInThreeSat, DegreesAreFourOrSix) {
  testing::Rng rng(63);
  for (int i = 0; i < 20; ++i) {
    Formula f{static_cast<int>(testing::uniform(rng, 3, 6)), {}};
    int m = static_cast<int>(testing::uniform(rng, 1, 5));
    for (int j = 0; j < m; ++j) {
      std::vector<int> vars(f.variable_count);
      std::iota(vars.begin(), vars.end(), 1);
      std::shuffle(vars.begin(), vars.end(), rng);
      for (int& v : vars) v = testing::uniform(rng, 0, 1) ? -v : v;
      f.clauses.push_back(clause(vars[0], vars[1], vars[2]));
    }
    GeneratedInstance g = gen_1in3sat(f);
    const ColouredNetwork& net = g.instance.network();
    for (int v = 0; v < net.vertex_count(); ++v) {
      if (v == g.instance.flow.source().value() ||
          v == g.instance.flow.sink().value()) {
        continue;
      }
      int d = degree(net, v);
      EXPECT_TRUE(d == 4 || d == 6) << "vertex " << v << " degree " << d;
    }
    expect_sound_certificate(g);
  }
}

TEST(OneInThreeSat, RejectsRepeatedVariable) {
  Formula f{3, {clause(1, -1, 2)}};
  EXPECT_THROW(gen_1in3sat(f), InvalidInput);
  Formula small{2, {}};
  EXPECT_THROW(gen_1in3sat(small), InvalidInput);
}

TEST(GreedyGap, ThreeIsFig4) {
  EXPECT_EQ(gen_greedy_gap(3).instance.flow, fixture("fig4").flow);
}

TEST(GreedyGap, ValidityThresholdSweep) {
  // Below n = 3 the optimum equals the greedy count: no gap.
  for (int n = 1; n <= 3; ++n) {
    Flow flow = greedy_gap_flow(n);
    Value greedy = static_cast<Value>(greedy_max_value_decompose(flow).paths.size());
    Value best = optimum(flow, CostMode::kPaths);
    EXPECT_EQ(greedy, 2 * n + 1);
    if (n < 3) {
      EXPECT_EQ(best, greedy) << "n=" << n;
    } else {
      EXPECT_EQ(best, n + 3);
      EXPECT_LT(best, greedy);
    }
  }
  EXPECT_THROW(gen_greedy_gap(2), InvalidInput);
  EXPECT_THROW(greedy_gap_flow(0), InvalidInput);
}

TEST(GreedyGap, CertificateWitness) {
  for (int n = 3; n <= 6; ++n) {
    GeneratedInstance g = gen_greedy_gap(n);
    EXPECT_EQ(g.certificate.objective, CostMode::kPaths);
    EXPECT_EQ(g.certificate.threshold, n + 3);
    expect_sound_certificate(g);
  }
}

TEST(Fixtures, Shapes) {
  Instance fig4 = fixture("fig4");
  EXPECT_EQ(fig4.network().vertex_count(), 8);
  EXPECT_EQ(fig4.network().arc_count(), 19);
  EXPECT_EQ(fig4.flow.positive_values(), (std::vector<Value>{1, 2, 4}));

  Instance fig1 = fixture("fig1");
  EXPECT_EQ(fig1.network().vertex_count(), 6);
  EXPECT_EQ(fig1.network().arc_count(), 8);
  EXPECT_EQ(fig1.network().colours().size(), 2u);
  EXPECT_EQ(fig1.flow.positive_values(), (std::vector<Value>{1}));

  Instance fig8 = fixture("fig8");
  EXPECT_EQ(fig8.network().vertex_count(), 10);
  EXPECT_EQ(fig8.network().arc_count(), 12);
  EXPECT_EQ(fig8.network().colours().size(), 3u);
  EXPECT_TRUE(fig8.network().is_acyclic());

  for (const std::string& name : fixture_names()) {
    EXPECT_TRUE(validate_flow(fixture(name).flow).ok()) << name;
  }
  EXPECT_THROW(fixture("fig2"), InvalidInput);
}

}  // namespace
}  // namespace cfd
