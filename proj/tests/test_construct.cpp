#include <cmath>

#include <gtest/gtest.h>

#include "spanlab/error.hpp"
#include "spanlab/spanner.hpp"

using namespace spanlab;

namespace {

Params desk(std::uint64_t seed, double K = 20) {
  Params p;
  p.n = 400;
  p.p = 0.3;
  p.epsilon = 0.25;
  p.theta = 0.5;
  p.M = 2;
  p.K = K;
  p.seed = seed;
  return p;
}

std::vector<VertexId> all_vertices(int n) {
  std::vector<VertexId> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

void expect_well_formed(const EmbeddedGraph& g, const ConstructTrace& t, VertexId a, VertexId b) {
  ASSERT_EQ(t.vertices.front(), a);
  ASSERT_EQ(t.vertices.back(), b);
  ASSERT_EQ(t.waypoints.front(), a);
  ASSERT_EQ(t.edges.size() + 1, t.vertices.size());
  ASSERT_EQ(t.branches.size(), t.waypoints.size());
  for (std::size_t i = 0; i + 1 < t.branches.size(); ++i) ASSERT_EQ(t.branches[i], Branch::kD4);
  ASSERT_NE(t.branches.back(), Branch::kD4);
  double sum = 0;
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    const auto& e = g.edge(t.edges[i]);
    const VertexId x = t.vertices[i], y = t.vertices[i + 1];
    ASSERT_TRUE((e.u == x && e.v == y) || (e.u == y && e.v == x));
    sum += e.length;
  }
  ASSERT_NEAR(sum, t.length, 1e-12);
  // Strictly approaching the target over the Yao steps.
  for (std::size_t i = 0; i + 1 < t.waypoints.size(); ++i)
    ASSERT_LT(dist(g.point(t.waypoints[i + 1]), g.point(b)), dist(g.point(t.waypoints[i]), g.point(b)));
}

}  // namespace

TEST(Construct, ShortEdgeFinishesImmediately) {
  const auto p = desk(11);
  const auto g = generate_instance(p);
  const auto b = assemble_spanner(g, p);
  int checked = 0;
  for (const auto& e : g.edges()) {
    if (e.length > b.radii.r_eps) continue;
    const auto t = construct_path(g, b, e.u, e.v);
    ASSERT_EQ(t.vertices, (std::vector<VertexId>{e.u, e.v}));
    ASSERT_EQ(t.branches, std::vector<Branch>{Branch::kD1});
    ASSERT_EQ(t.length, e.length);
    if (++checked == 200) break;
  }
  EXPECT_GT(checked, 0);
}

TEST(Construct, LengthBoundAndContainmentOnDeskInstances) {
  for (std::uint64_t seed : {11u, 12u}) {
    const auto p = desk(seed);
    const auto g = generate_instance(p);
    const auto b = assemble_spanner(g, p);
    for (std::size_t i = 0; i < b.component.size(); i += 13) {
      for (std::size_t j = 0; j < b.component.size(); j += 7) {
        const VertexId a = b.component[i], z = b.component[j];
        if (a == z) continue;
        const auto t = construct_path(g, b, a, z);
        expect_well_formed(g, t, a, z);
        const double d = b.oracle.distance(a, z);
        ASSERT_LE(t.length, (1 + 7 * p.epsilon) * d + 1e-9);
        if (!t.far_splice)
          for (EdgeId e : t.edges) ASSERT_TRUE(b.edges.all.contains(e));
      }
    }
    const auto s = check_construct(g, b);
    EXPECT_EQ(s.pairs, b.component.size() * (b.component.size() - 1));
    EXPECT_EQ(s.stretch_violations, 0u);
    EXPECT_EQ(s.containment_misses, 0u);
    EXPECT_LE(s.max_ratio, 1 + 7 * p.epsilon);
  }
}

TEST(Construct, LargeKRemovesFarSplices) {
  const auto p = desk(13, 400);
  const auto g = generate_instance(p);
  const auto b = assemble_spanner(g, p);
  ASSERT_GE(b.radii.R_eps, std::sqrt(2.0));
  const auto s = check_construct(g, b);
  EXPECT_EQ(s.far_flagged, 0u);
  EXPECT_EQ(s.flagged_misses, 0u);
  EXPECT_EQ(s.containment_misses, 0u);
  EXPECT_EQ(s.stretch_violations, 0u);
}

TEST(Construct, SourceSubset) {
  const auto p = desk(11);
  const auto g = generate_instance(p);
  const auto b = assemble_spanner(g, p);
  const std::vector<VertexId> few{b.component[1], b.component[2]};
  const auto s = check_construct(g, b, few);
  EXPECT_EQ(s.pairs, 2 * (b.component.size() - 1));
}

TEST(Construct, DisconnectedAndDegenerateQueries) {
  const EmbeddedGraph g({{0.1, 0.1}, {0.2, 0.1}, {0.8, 0.8}, {0.9, 0.8}}, {{0, 1}, {2, 3}});
  Params p;
  p.n = 4;
  p.p = 0.5;
  const auto radii = critical_radii(p);
  const auto table = build_cone_table(g, ConeSpec::from_epsilon(p.epsilon));
  const auto o = apsp(g, all_vertices(4));
  try {
    construct_path(g, radii, table, o, 0, 3, p.epsilon);
    FAIL();
  } catch (const DisconnectedPair& e) {
    EXPECT_STREQ(e.what(), "disconnected pair");
  }
  EXPECT_THROW(construct_path(g, radii, table, o, 1, 1, p.epsilon), ValidationError);
  EXPECT_THROW(yao_route(g, table, 0, 3), DisconnectedPair);
}

TEST(Construct, EmptyConeTriggersSplice) {
  // 0 -> 2 has no direct edge and 0's cone toward 2 is empty.
  const EmbeddedGraph g({{0.1, 0.5}, {0.5, 0.9}, {0.9, 0.5}}, {{0, 1}, {1, 2}});
  const auto table = build_cone_table(g, ConeSpec::from_epsilon(0.25));
  const auto o = apsp(g, all_vertices(3));
  const auto t = construct_path(g, {0.01, 10.0}, table, o, 0, 2, 0.25);
  EXPECT_EQ(t.branches, std::vector<Branch>{Branch::kD2});
  EXPECT_EQ(t.vertices, (std::vector<VertexId>{0, 1, 2}));
  EXPECT_FALSE(t.far_splice);
  const auto far = construct_path(g, {0.01, 0.1}, table, o, 0, 2, 0.25);
  EXPECT_TRUE(far.far_splice);
}

TEST(YaoRoute, CompleteGraphStretchBound) {
  const auto g = sample_gnp_embedding(sample_points(120, 5), 1.0, 5);
  const double eps = 0.2;
  const auto table = build_cone_table(g, ConeSpec::from_epsilon(eps));
  const double bound = yao_stretch_bound(eps);
  EXPECT_NEAR(bound, 1.2798, 1e-4);
  for (VertexId a = 0; a < 120; ++a)
    for (VertexId b = 0; b < 120; ++b) {
      if (a == b) continue;
      const auto r = yao_route(g, table, a, b);
      ASSERT_EQ(r.vertices.front(), a);
      ASSERT_EQ(r.vertices.back(), b);
      ASSERT_LE(r.length, bound * dist(g.point(a), g.point(b)) * (1 + 1e-12));
    }
}

TEST(Construct, PureYaoTracesObeyYaoBoundOnCompleteGraph) {
  Params p;
  p.n = 150;
  p.p = 1.0;
  p.epsilon = 0.2;
  p.seed = 4;
  const auto g = generate_instance(p);
  const auto b = assemble_spanner(g, p);
  const auto s = check_construct(g, b);
  EXPECT_GT(s.pure_yao, 0u);
  EXPECT_LE(s.pure_yao_max_ratio, yao_stretch_bound(p.epsilon));
  EXPECT_EQ(s.stretch_violations, 0u);
}

TEST(Construct, BranchNames) {
  EXPECT_STREQ(branch_name(Branch::kD1), "D1");
  EXPECT_STREQ(branch_name(Branch::kD4), "D4");
}
