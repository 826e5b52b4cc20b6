#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "spanlab/error.hpp"
#include "spanlab/spanner.hpp"

using namespace spanlab;

namespace {

Params small_params(int n, double p, std::uint64_t seed, double eps = 0.25) {
  Params q;
  q.n = n;
  q.p = p;
  q.seed = seed;
  q.epsilon = eps;
  return q;
}

std::vector<VertexId> all_vertices(int n) {
  std::vector<VertexId> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

TEST(Radii, HandValues) {
  Params p;
  p.n = 1024;
  p.p = 0.25;
  p.theta = 0.5;
  p.M = 2;
  p.K = 20;
  const auto r = critical_radii(p);
  EXPECT_NEAR(r.r_eps, 0.125, 1e-12);
  EXPECT_NEAR(r.R_eps, std::sqrt(20 * std::log(1024.0) / 128), 1e-12);
  EXPECT_NEAR(r.R_eps, 1.0407, 1e-4);
}

TEST(Radii, EqualWhenMMatchesKLogN) {
  Params p;
  p.n = 500;
  p.M = p.K * std::log(500.0);
  const auto r = critical_radii(p);
  EXPECT_NEAR(r.r_eps, r.R_eps, 1e-12);
  p.M = 2;
  const auto s = critical_radii(p);
  EXPECT_GT(s.r_eps, 0);
  EXPECT_GE(s.R_eps, s.r_eps);
}

TEST(Radii, GeometricModelUsesUnitProbability) {
  Params p;
  p.n = 400;
  p.model = Model::kGeometric;
  p.radius = 0.2;
  p.p = 0.1;  // ignored
  const auto r = critical_radii(p);
  EXPECT_NEAR(r.r_eps, std::sqrt(2.0 / 400), 1e-15);
}

TEST(ConeTable, IsolatedVertexHasNoEntries) {
  const EmbeddedGraph g({{0.1, 0.1}, {0.5, 0.5}, {0.6, 0.5}}, {{1, 2}});
  const auto spec = ConeSpec::from_epsilon(0.3);
  for (const auto& t : {build_cone_table(g, spec), build_theta_table(g, spec)}) {
    for (int c = 0; c < spec.tau; ++c) {
      EXPECT_EQ(t.at(0, c), kNoVertex);
      EXPECT_EQ(t.distance(0, c), kInfinity);
    }
  }
}

TEST(ConeTable, SingleEdgeOneEntryPerEndpoint) {
  const EmbeddedGraph g({{0.2, 0.3}, {0.7, 0.6}}, {{0, 1}});
  const auto t = build_cone_table(g, ConeSpec::from_epsilon(0.2));
  for (VertexId v : {0, 1}) {
    int filled = 0;
    for (int c = 0; c < t.spec.tau; ++c) filled += t.at(v, c) != kNoVertex;
    EXPECT_EQ(filled, 1);
  }
}

TEST(ConeTable, MatchesBruteForceScan) {
  for (std::uint64_t seed : {2u, 3u, 4u}) {
    const auto g = sample_gnp_embedding(sample_points(50, seed), seed == 2 ? 1.0 : 0.4, seed);
    for (double eps : {0.2, 0.25, 0.5}) {
      const auto spec = ConeSpec::from_epsilon(eps);
      const auto yao = build_cone_table(g, spec);
      const auto theta = build_theta_table(g, spec);
      EXPECT_EQ(yao.y, oracle::cone_scan(g, eps, spec.tau, false)) << seed << " " << eps;
      EXPECT_EQ(theta.y, oracle::cone_scan(g, eps, spec.tau, true)) << seed << " " << eps;
    }
  }
}

TEST(ConeTable, YaoOptimality) {
  const auto g = sample_gnp_embedding(sample_points(120, 6), 0.3, 6);
  const auto spec = ConeSpec::from_epsilon(0.25);
  const auto t = build_cone_table(g, spec);
  for (VertexId a = 0; a < g.vertex_count(); ++a) {
    for (int c = 0; c < spec.tau; ++c) {
      const VertexId y = t.at(a, c);
      if (y == kNoVertex) continue;
      ASSERT_TRUE(g.has_edge(a, y));
      ASSERT_EQ(cone_index(g.point(a), g.point(y), spec), c);
      ASSERT_EQ(t.edge[t.slot(a, c)], g.edge_id(a, y));
      ASSERT_EQ(t.distance(a, c), dist(g.point(a), g.point(y)));
    }
    for (std::uint32_t k = g.adjacency().offset[a]; k < g.adjacency().offset[a + 1]; ++k) {
      const VertexId b = g.adjacency().neighbor[k];
      const int c = cone_index(g.point(a), g.point(b), spec);
      ASSERT_NE(t.at(a, c), kNoVertex);
      ASSERT_LE(t.distance(a, c), dist(g.point(a), g.point(b)));
    }
  }
}

TEST(ConeTable, ThetaAgreesOnBisectorRays) {
  const auto spec = ConeSpec::from_epsilon(std::numbers::pi / 4);
  PointSet pts{{0.5, 0.5}};
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (int c = 0; c < spec.tau; ++c) {
    const double ang = spec.bisector_angle(c);
    for (double r : {0.3, 0.1, 0.2}) {
      pts.push_back({0.5 + r * std::cos(ang), 0.5 + r * std::sin(ang)});
      edges.emplace_back(0, static_cast<VertexId>(pts.size() - 1));
    }
  }
  const EmbeddedGraph g(pts, edges);
  const auto yao = build_cone_table(g, spec);
  const auto theta = build_theta_table(g, spec);
  for (int c = 0; c < spec.tau; ++c) EXPECT_EQ(yao.at(0, c), theta.at(0, c));
}

TEST(EdgeSets, E1Extremes) {
  const auto g = sample_gnp_embedding(sample_points(40, 1), 0.5, 1);
  EXPECT_EQ(build_E1(g, {2.0, 3.0}).size(), g.edge_count());
  EXPECT_EQ(build_E1(g, {0.0, 3.0}).size(), 0u);
  const CriticalRadii r{0.3, 1.0};
  const auto e1 = build_E1(g, r);
  for (EdgeId e = 0; e < g.edge_count(); ++e) EXPECT_EQ(e1.contains(e), g.edge(e).length <= 0.3);
}

TEST(EdgeSets, E2Bounds) {
  const EmbeddedGraph empty(sample_points(20, 1), {});
  EXPECT_TRUE(build_E2(empty, build_cone_table(empty, ConeSpec::from_epsilon(0.2))).empty());
  const auto g = sample_gnp_embedding(sample_points(100, 2), 1.0, 2);
  const auto spec = ConeSpec::from_epsilon(0.2);
  EXPECT_EQ(spec.tau, 32);
  const auto e2 = build_E2(g, build_cone_table(g, spec));
  EXPECT_LE(e2.size(), 3200u);
  EXPECT_EQ(e2.universe(), g.edge_count());
}

class BruteForceClasses : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(BruteForceClasses, ClassesAndPathUnionsMatch) {
  const auto seed = GetParam();
  const auto params = small_params(60, 0.3, seed);
  const auto g = generate_instance(params);
  const auto radii = critical_radii(params);
  const auto spec = ConeSpec::from_epsilon(params.epsilon);
  const auto table = build_cone_table(g, spec);
  const auto oracle_all = apsp(g, all_vertices(60));
  const auto classes = classify_pairs(g, radii, table, oracle_all, params.epsilon);
  ASSERT_EQ(classes.size(), 60u * 59);

  const auto fw = oracle::floyd_warshall(g);
  const auto yao = oracle::cone_scan(g, params.epsilon, spec.tau, false);
  EdgeSet e3(g.edge_count()), e4(g.edge_count());
  std::size_t b_count = 0, c_count = 0;
  for (const auto& c : classes) {
    const auto kind = oracle::classify(g, fw, yao, spec.tau, params.epsilon, radii.r_eps, radii.R_eps, c.a, c.b);
    ASSERT_EQ(c.kind, kind) << c.a << " " << c.b;
    if (kind != PairKind::kBEps && kind != PairKind::kCEps) continue;
    (kind == PairKind::kBEps ? b_count : c_count) += 1;
    const auto path = oracle::fw_path(fw, c.a, c.b);
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
      (kind == PairKind::kBEps ? e3 : e4).insert(g.edge_id(path[i], path[i + 1]));
  }
  EXPECT_GT(b_count, 0u);
  EXPECT_GT(c_count, 0u);
  EXPECT_TRUE(build_E3(g, classes, oracle_all) == e3);
  EXPECT_TRUE(build_E4(g, classes, oracle_all) == e4);

  const auto build = assemble_spanner(g, params, 2);
  if (build.component.size() == 60u) {
    EXPECT_TRUE(build.edges.e3 == e3);
    EXPECT_TRUE(build.edges.e4 == e4);
    EXPECT_EQ(build.census.b_eps, b_count);
    EXPECT_EQ(build.census.c_eps, c_count);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, BruteForceClasses, ::testing::Values(1u, 2u, 3u, 4u, 5u, 6u));

TEST(Classify, DirectEdgePairIsNeverB) {
  const auto params = small_params(80, 0.4, 3);
  const auto g = generate_instance(params);
  const auto radii = critical_radii(params);
  const auto table = build_cone_table(g, ConeSpec::from_epsilon(params.epsilon));
  const auto o = apsp(g, all_vertices(80));
  for (const auto& e : g.edges()) {
    const auto c = classify_pair(g, radii, table, o, params.epsilon, e.u, e.v);
    ASSERT_NE(c.kind, PairKind::kBEps);
    if (c.d == c.r && c.r >= radii.r_eps && c.r <= radii.R_eps && c.yao_gap >= params.epsilon * c.r)
      ASSERT_EQ(c.kind, PairKind::kCEps);
  }
}

TEST(Classify, CrossComponentPairsAreDisconnected) {
  const EmbeddedGraph g({{0.1, 0.1}, {0.2, 0.1}, {0.8, 0.8}, {0.9, 0.8}}, {{0, 1}, {2, 3}});
  const auto o = apsp(g, all_vertices(4));
  const auto table = build_cone_table(g, ConeSpec::from_epsilon(0.25));
  const auto c = classify_pair(g, {0.01, 1.0}, table, o, 0.25, 0, 2);
  EXPECT_EQ(c.kind, PairKind::kDisconnected);
  EXPECT_STREQ(pair_kind_name(c.kind), "disconnected");
}

TEST(Classify, EmptyClassesGiveEmptySets) {
  const auto g = sample_gnp_embedding(sample_points(30, 1), 1.0, 1);
  const std::vector<PairClass> none;
  const auto o = apsp(g, all_vertices(30));
  EXPECT_TRUE(build_E3(g, none, o).empty());
  EXPECT_TRUE(build_E4(g, none, o).empty());
}

TEST(Classify, E3NeverUsesSingleEdgePaths) {
  const auto params = small_params(60, 0.3, 8);
  const auto g = generate_instance(params);
  const auto o = apsp(g, all_vertices(60));
  const auto table = build_cone_table(g, ConeSpec::from_epsilon(params.epsilon));
  for (const auto& c : classify_pairs(g, critical_radii(params), table, o, params.epsilon))
    if (c.kind == PairKind::kBEps) ASSERT_GT(o.path(c.a, c.b).edges.size(), 1u);
}

TEST(Assemble, CompleteGraphWithLargeRadiusIsAllE1) {
  Params p = small_params(40, 1.0, 2);
  p.M = 100;  // r_eps = sqrt(100/40) > sqrt(2)
  const auto g = generate_instance(p);
  const auto b = assemble_spanner(g, p);
  EXPECT_EQ(b.edges.all.size(), g.edge_count());
  EXPECT_EQ(b.edges.e1.size(), g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) EXPECT_TRUE(b.edges.attribution(e) & SpannerEdges::kE1);
}

TEST(Assemble, SubsetAttributionAndCounting) {
  const auto p = small_params(400, 0.3, 11);
  const auto g = generate_instance(p);
  const auto b = assemble_spanner(g, p);
  EXPECT_LE(b.edges.all.size(), g.edge_count());
  EXPECT_LE(b.edges.e2.size(), static_cast<std::size_t>(b.spec.tau) * p.n);
  EdgeSet u = b.edges.e1;
  u |= b.edges.e2;
  u |= b.edges.e3;
  u |= b.edges.e4;
  EXPECT_TRUE(u == b.edges.all);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto bits = b.edges.attribution(e);
    ASSERT_EQ(bits != 0, b.edges.all.contains(e));
    ASSERT_EQ((bits & SpannerEdges::kE3) != 0, b.edges.e3.contains(e));
  }
  const std::size_t comp = b.component.size();
  EXPECT_EQ(b.census.b_eps + b.census.c_eps + b.census.neither, comp * (comp - 1));
}

TEST(Assemble, Deterministic) {
  const auto p = small_params(400, 0.3, 11);
  const auto g = generate_instance(p);
  const auto a = assemble_spanner(g, p, 1);
  const auto b = assemble_spanner(g, p, 3);
  EXPECT_TRUE(a.edges.e1 == b.edges.e1);
  EXPECT_TRUE(a.edges.e2 == b.edges.e2);
  EXPECT_TRUE(a.edges.e3 == b.edges.e3);
  EXPECT_TRUE(a.edges.e4 == b.edges.e4);
}

TEST(Assemble, RejectsMismatchedInstance) {
  const auto p = small_params(50, 0.3, 1);
  const auto g = generate_instance(small_params(60, 0.3, 1));
  EXPECT_THROW(assemble_spanner(g, p), ValidationError);
}

TEST(Verify, FullEdgeSetHasUnitStretch) {
  const auto p = small_params(150, 0.3, 4);
  const auto g = generate_instance(p);
  const auto o = apsp(g, largest_component(g.adjacency()));
  const auto rep = verify_stretch(g, EdgeSet::full(g.edge_count()), o);
  EXPECT_EQ(rep.max_stretch, 1.0);
  EXPECT_EQ(rep.disconnected_pairs, 0u);
  EXPECT_FALSE(rep.sampled);
}

TEST(Verify, ThreeFourFiveTriangle) {
  const EmbeddedGraph g({{0.0, 0.0}, {0.3, 0.0}, {0.3, 0.4}}, {{0, 1}, {1, 2}, {0, 2}});
  EdgeSet s(g.edge_count());
  s.insert(g.edge_id(0, 1));
  s.insert(g.edge_id(1, 2));
  const auto rep = verify_stretch(g, s, apsp(g, all_vertices(3)));
  EXPECT_NEAR(rep.max_stretch, 1.4, 1e-12);
  EXPECT_EQ(std::minmax(rep.arg_u, rep.arg_v), std::minmax(VertexId{0}, VertexId{2}));
  EXPECT_EQ(rep.pairs_checked, 6u);
  auto bucket = [&](long k) { return rep.histogram.count(k) ? rep.histogram.at(k) : 0u; };
  EXPECT_EQ(bucket(40) + bucket(39), 2u);  // 0.4 / 0.01 may round either way
  EXPECT_EQ(bucket(0), 4u);
}

TEST(Verify, MissingBridgeCountsDisconnected) {
  const EmbeddedGraph g({{0.1, 0.1}, {0.2, 0.1}, {0.3, 0.1}}, {{0, 1}, {1, 2}});
  EdgeSet s(g.edge_count());
  s.insert(0);
  const auto rep = verify_stretch(g, s, apsp(g, all_vertices(3)));
  EXPECT_EQ(rep.max_stretch, kInfinity);
  EXPECT_EQ(rep.disconnected_pairs, 4u);
  EXPECT_THROW(verify_stretch(g, EdgeSet(5), apsp(g, all_vertices(3))), ValidationError);
}

TEST(Verify, SpannerStretchOnDeskInstance) {
  const auto p = small_params(400, 0.3, 11);
  const auto g = generate_instance(p);
  const auto b = assemble_spanner(g, p);
  const auto rep = verify_stretch(g, b.edges.all, b.oracle);
  EXPECT_LE(rep.max_stretch, 1 + 7 * p.epsilon);
  EXPECT_EQ(rep.disconnected_pairs, 0u);
  const std::vector<VertexId> few{b.component[0], b.component[5]};
  const auto sampled = verify_stretch(g, b.edges.all, b.oracle, few);
  EXPECT_TRUE(sampled.sampled);
  EXPECT_EQ(sampled.sources, 2u);
  EXPECT_LE(sampled.max_stretch, rep.max_stretch);
}

TEST(FarPairs, CompleteGraphAndVacuousRange) {
  Params p = small_params(200, 1.0, 3);
  p.K = 2;  // R_eps well inside the square
  const auto g = generate_instance(p);
  const auto radii = critical_radii(p);
  ASSERT_LT(radii.R_eps, std::sqrt(2.0));
  const auto table = build_cone_table(g, ConeSpec::from_epsilon(p.epsilon));
  const auto o = apsp(g, all_vertices(200));
  const auto d = check_far_pairs(g, radii, table, o, p.epsilon);
  EXPECT_GT(d.pairs_in_range, 0u);
  EXPECT_EQ(d.detour_violations, 0u);

  const auto vac = check_far_pairs(g, {0.1, 1.5}, table, o, p.epsilon);
  EXPECT_EQ(vac.pairs_in_range, 0u);
  EXPECT_EQ(vac.detour_violations, 0u);
}
