#include <cmath>
#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "spanlab/error.hpp"
#include "spanlab/instance.hpp"
#include "spanlab/rng.hpp"

using namespace spanlab;

TEST(Rng, CounterDrawsArePure) {
  const CounterRng a(5, CounterRng::kPoints), b(5, CounterRng::kPoints);
  for (std::uint64_t k = 0; k < 100; ++k) {
    EXPECT_EQ(a.bits(k), b.bits(k));
    EXPECT_GE(a.uniform(k), 0.0);
    EXPECT_LT(a.uniform(k), 1.0);
  }
  const CounterRng c(5, CounterRng::kEdges);
  int same = 0;
  for (std::uint64_t k = 0; k < 100; ++k) same += a.bits(k) == c.bits(k);
  EXPECT_EQ(same, 0);
}

TEST(SamplePoints, EmptyAndDeterministic) {
  EXPECT_TRUE(sample_points(0, 3).empty());
  const auto a = sample_points(3, 7);
  const auto b = sample_points(3, 7);
  EXPECT_EQ(a, b);
  EXPECT_NE(sample_points(3, 8), a);
}

TEST(SamplePoints, MeanOfXNearHalf) {
  const auto pts = sample_points(100000, 1);
  double sx = 0, sy = 0;
  for (const auto& p : pts) {
    ASSERT_TRUE(in_unit_square(p));
    sx += p.x;
    sy += p.y;
  }
  EXPECT_NEAR(sx / pts.size(), 0.5, 0.005);
  EXPECT_NEAR(sy / pts.size(), 0.5, 0.005);
}

TEST(Gnp, ExtremeProbabilities) {
  const auto pts = sample_points(4, 1);
  EXPECT_EQ(sample_gnp_embedding(pts, 1.0, 1).edge_count(), 6u);
  EXPECT_EQ(sample_gnp_embedding(pts, 0.0, 1).edge_count(), 0u);
}

TEST(Gnp, MeanEdgeCountWithinThreeSigma) {
  double total = 0;
  for (std::uint64_t s = 1; s <= 50; ++s) total += sample_gnp_embedding(sample_points(200, s), 0.3, s).edge_count();
  const double sigma_mean = std::sqrt(19900 * 0.3 * 0.7) / std::sqrt(50.0);
  EXPECT_NEAR(total / 50, 5970.0, 3 * sigma_mean);
}

TEST(Gnp, PairInclusionFrequency) {
  const int n = 100, seeds = 30;
  std::vector<int> hits(n * n, 0);
  for (int s = 1; s <= seeds; ++s) {
    const auto g = sample_gnp_embedding(sample_points(n, s), 0.5, s);
    for (const auto& e : g.edges()) ++hits[e.u * n + e.v];
  }
  int outside = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      const double f = hits[u * n + v] / double(seeds);
      outside += f < 0.2 || f > 0.8;
    }
  // P(Bin(30, 1/2) outside [6, 24]) ~ 2.4e-4 per pair; 4950 pairs.
  EXPECT_LE(outside, 5);
}

TEST(Gnp, SamePointsAcrossEdgeSamples) {
  const auto pts = sample_points(50, 4);
  const auto g1 = sample_gnp_embedding(pts, 0.3, 1);
  const auto g2 = sample_gnp_embedding(pts, 0.6, 2);
  EXPECT_EQ(g1.points(), g2.points());
}

TEST(Gnp, EdgeInvariants) {
  const auto g = sample_gnp_embedding(sample_points(150, 2), 0.4, 2);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& ed = g.edge(e);
    ASSERT_LT(ed.u, ed.v);
    ASSERT_EQ(ed.length, dist(g.point(ed.u), g.point(ed.v)));
    ASSERT_TRUE(g.has_edge(ed.u, ed.v));
    ASSERT_TRUE(g.has_edge(ed.v, ed.u));
    ASSERT_EQ(g.edge_id(ed.v, ed.u), e);
    if (e > 0) ASSERT_TRUE(std::pair(g.edge(e - 1).u, g.edge(e - 1).v) < std::pair(ed.u, ed.v));
  }
  std::size_t degree_sum = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    degree_sum += g.adjacency().degree(v);
    ASSERT_FALSE(g.has_edge(v, v));
  }
  EXPECT_EQ(degree_sum, 2 * g.edge_count());
}

TEST(Geometric, ExtremeRadii) {
  const auto pts = sample_points(30, 5);
  EXPECT_EQ(geometric_graph(pts, std::sqrt(2.0)).edge_count(), 30u * 29 / 2);
  EXPECT_EQ(geometric_graph(pts, 0.0).edge_count(), 0u);
}

TEST(Geometric, MatchesBruteForce) {
  const auto pts = sample_points(50, 3);
  const auto g = geometric_graph(pts, 0.2, 3);
  std::size_t count = 0;
  for (int u = 0; u < 50; ++u)
    for (int v = u + 1; v < 50; ++v) {
      const bool in = dist(pts[u], pts[v]) <= 0.2;
      count += in;
      ASSERT_EQ(g.has_edge(u, v), in);
    }
  EXPECT_EQ(g.edge_count(), count);
}

TEST(Geometric, MonotoneInRadius) {
  const auto pts = sample_points(200, 6);
  const auto small = geometric_graph(pts, 0.08);
  const auto large = geometric_graph(pts, 0.15);
  for (const auto& e : small.edges()) ASSERT_TRUE(large.has_edge(e.u, e.v));
}

TEST(Graph, RejectsBadInput) {
  const PointSet pts{{0.1, 0.1}, {0.2, 0.2}, {0.3, 0.3}};
  EXPECT_THROW(EmbeddedGraph(pts, {{0, 0}}), ValidationError);
  EXPECT_THROW(EmbeddedGraph(pts, {{0, 1}, {1, 0}}), ValidationError);
  EXPECT_THROW(EmbeddedGraph(pts, {{0, 3}}), ValidationError);
  EXPECT_THROW(EmbeddedGraph(PointSet{{1.5, 0.2}}, {}), ValidationError);
}

TEST(Params, ValidationNamesField) {
  Params p;
  EXPECT_NO_THROW(p.validate());
  auto message = [](Params q) {
    try {
      q.validate();
    } catch (const ValidationError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  Params bad = p;
  bad.n = 1;
  EXPECT_NE(message(bad).find("n"), std::string::npos);
  bad = p;
  bad.p = 0;
  EXPECT_NE(message(bad).find("p"), std::string::npos);
  bad = p;
  bad.epsilon = -1;
  EXPECT_NE(message(bad).find("epsilon"), std::string::npos);
  bad = p;
  bad.theta = 0;
  EXPECT_NE(message(bad).find("theta"), std::string::npos);
  bad = p;
  bad.K = 0;
  EXPECT_NE(message(bad).find("K"), std::string::npos);
  bad = p;
  bad.model = Model::kGeometric;
  bad.radius = 2.0;
  EXPECT_NE(message(bad).find("radius"), std::string::npos);
}

TEST(Generate, Deterministic) {
  Params p;
  p.n = 120;
  p.seed = 9;
  EXPECT_EQ(format_instance(generate_instance(p)), format_instance(generate_instance(p)));
  p.model = Model::kGeometric;
  p.radius = 0.2;
  EXPECT_EQ(format_instance(generate_instance(p)), format_instance(generate_instance(p)));
}

TEST(Format, RoundTrip) {
  Params p;
  p.n = 90;
  p.seed = 17;
  for (Model m : {Model::kGnpEmbedding, Model::kGeometric}) {
    p.model = m;
    p.radius = 0.25;
    const auto g = generate_instance(p);
    const auto text = format_instance(g);
    const auto back = parse_instance(text);
    EXPECT_TRUE(back == g);
    EXPECT_EQ(format_instance(back), text);
  }
}

TEST(Format, HeaderShape) {
  const auto g = sample_gnp_embedding(sample_points(2, 1), 1.0, 1);
  const auto text = format_instance(g);
  EXPECT_EQ(text.substr(0, text.find('\n')), "geograph v1 n=2 model=gnp p=1 seed=1");
}

namespace {

std::string parse_failure(const std::string& text, std::size_t* line = nullptr) {
  try {
    parse_instance(text);
  } catch (const ParseError& e) {
    if (line) *line = e.line();
    return e.what();
  }
  return {};
}

}  // namespace

TEST(Format, DuplicateEdge) {
  std::size_t line = 0;
  const auto msg = parse_failure("geograph v1 n=2 model=gnp p=1 seed=1\nv 0 0.1 0.1\nv 1 0.2 0.2\ne 0 1\ne 0 1\n", &line);
  EXPECT_NE(msg.find("duplicate edge"), std::string::npos);
  EXPECT_EQ(line, 5u);
}

TEST(Format, CoordinateOutOfDomain) {
  std::size_t line = 0;
  const std::string text = "geograph v1 n=1 model=gnp p=1 seed=1\nv 0 1.5 0.1\n";
  const auto msg = parse_failure(text, &line);
  EXPECT_NE(msg.find("coordinate out of domain"), std::string::npos);
  EXPECT_EQ(line, 2u);
  EXPECT_THROW(parse_instance(text), ValidationError);
}

TEST(Format, MalformedLinesCarryLineNumbers) {
  std::size_t line = 0;
  EXPECT_FALSE(parse_failure("", &line).empty());
  EXPECT_FALSE(parse_failure("graph v1\n", &line).empty());
  EXPECT_EQ(line, 1u);
  EXPECT_FALSE(parse_failure("geograph v1 n=2 model=gnp p=1 seed=1\nv 0 0.1 0.1\nv 1 0.2\n", &line).empty());
  EXPECT_EQ(line, 3u);
  EXPECT_FALSE(parse_failure("geograph v1 n=2 model=gnp p=1 seed=1\nv 0 0.1 0.1\nv 1 0.2 0.2\ne 1 0\n", &line).empty());
  EXPECT_EQ(line, 4u);
  EXPECT_FALSE(parse_failure("geograph v1 n=2 model=gnp p=1 seed=1\nv 0 0.1 0.1\nv 1 0.2 0.2\nq\n", &line).empty());
  EXPECT_FALSE(parse_failure("geograph v1 n=3 model=gnp p=1 seed=1\nv 0 0.1 0.1\n", &line).empty());
  EXPECT_FALSE(parse_failure("geograph v1 n=1 model=xyz p=1 seed=1\nv 0 0.1 0.1\n", &line).empty());
  EXPECT_FALSE(parse_failure("geograph v1 n=1 model=gnp p=1 seed=1\nv 0 0.1x 0.1\n", &line).empty());
}

TEST(Format, SaveLoad) {
  const auto dir = std::filesystem::temp_directory_path() / "spanlab_test_instance";
  std::filesystem::create_directories(dir);
  const auto g = sample_gnp_embedding(sample_points(40, 2), 0.5, 2);
  save_instance(g, dir / "g.txt");
  EXPECT_TRUE(load_instance(dir / "g.txt") == g);
  EXPECT_THROW(load_instance(dir / "missing.txt"), IoError);
  EXPECT_THROW(save_instance(g, dir / "no" / "such" / "dir.txt"), IoError);
  std::filesystem::remove_all(dir);
}

TEST(EdgeSetOps, Basics) {
  EdgeSet a(10), b(10);
  EXPECT_TRUE(a.insert(3));
  EXPECT_FALSE(a.insert(3));
  b.insert(3);
  b.insert(7);
  EXPECT_TRUE(a.is_subset_of(b));
  EXPECT_FALSE(b.is_subset_of(a));
  a |= b;
  EXPECT_EQ(a.size(), 2u);
  EXPECT_EQ(a.ids(), (std::vector<EdgeId>{3, 7}));
  EXPECT_EQ(EdgeSet::full(10).size(), 10u);
  EXPECT_TRUE(a == b);
}
