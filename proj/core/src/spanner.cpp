#include "spanlab/spanner.hpp"

#include <algorithm>
#include <cmath>

#include "spanlab/error.hpp"

namespace spanlab {

CriticalRadii critical_radii(const Params& params) {
  const double n = params.n;
  const double scale = n * std::pow(params.effective_p(), 1.0 + params.theta);
  return CriticalRadii{std::sqrt(params.M / scale), std::sqrt(params.K * std::log(n) / scale)};
}

namespace {

template <typename Key>
ConeTable scan_cones(const EmbeddedGraph& g, const ConeSpec& spec, Key key) {
  ConeTable t;
  t.spec = spec;
  t.n = g.vertex_count();
  const std::size_t slots = static_cast<std::size_t>(t.n) * spec.tau;
  t.y.assign(slots, kNoVertex);
  t.edge.assign(slots, kNoEdge);
  t.gap.assign(slots, kInfinity);
  std::vector<double> best(slots, kInfinity);
  const Adjacency& adj = g.adjacency();
  for (VertexId a = 0; a < t.n; ++a) {
    const Point& pa = g.point(a);
    // Neighbors arrive in ascending id order, so strict < keeps the lower id on ties.
    for (std::uint32_t k = adj.offset[a]; k < adj.offset[a + 1]; ++k) {
      const VertexId b = adj.neighbor[k];
      const Point& pb = g.point(b);
      if (pb == pa) continue;
      const int cone = cone_index(pa, pb, spec);
      const double value = key(pa, pb, adj.length[k], cone);
      const std::size_t s = t.slot(a, cone);
      if (value < best[s]) {
        best[s] = value;
        t.y[s] = b;
        t.edge[s] = adj.edge[k];
        t.gap[s] = adj.length[k];
      }
    }
  }
  return t;
}

}  // namespace

ConeTable build_cone_table(const EmbeddedGraph& g, const ConeSpec& spec) {
  return scan_cones(g, spec, [](const Point&, const Point&, double len, int) { return len; });
}

ConeTable build_theta_table(const EmbeddedGraph& g, const ConeSpec& spec) {
  std::vector<double> cosb(spec.tau), sinb(spec.tau);
  for (int i = 0; i < spec.tau; ++i) {
    cosb[i] = std::cos(spec.bisector_angle(i));
    sinb[i] = std::sin(spec.bisector_angle(i));
  }
  return scan_cones(g, spec, [&](const Point& a, const Point& b, double, int cone) {
    return (b.x - a.x) * cosb[cone] + (b.y - a.y) * sinb[cone];
  });
}

EdgeSet build_E1(const EmbeddedGraph& g, const CriticalRadii& radii) {
  EdgeSet s(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (g.edge(e).length <= radii.r_eps) s.insert(e);
  return s;
}

EdgeSet build_E2(const EmbeddedGraph& g, const ConeTable& table) {
  EdgeSet s(g.edge_count());
  for (EdgeId e : table.edge)
    if (e != kNoEdge) s.insert(e);
  return s;
}

const char* pair_kind_name(PairKind k) noexcept {
  switch (k) {
    case PairKind::kBEps: return "B_eps";
    case PairKind::kCEps: return "C_eps";
    case PairKind::kNeither: return "neither";
    case PairKind::kDisconnected: return "disconnected";
  }
  return "?";
}

namespace {

// Shared by the list API and the streaming assembly so both classify alike.
PairKind classify(const EmbeddedGraph& g, const CriticalRadii& radii, const ConeTable& table, double eps,
                  VertexId a, VertexId b, double r, double d) {
  if (d == kInfinity) return PairKind::kDisconnected;
  if (d >= (1.0 + eps) * r && r >= radii.r_eps) return PairKind::kBEps;
  if (d <= (1.0 + eps) * r && r >= radii.r_eps && r <= radii.R_eps) {
    const double gap = table.distance(a, cone_index(g.point(a), g.point(b), table.spec));
    if (gap >= eps * r) return PairKind::kCEps;
  }
  return PairKind::kNeither;
}

// Marks the tree path source -> t of `field` into `set`. `stamp`/`tag` record
// vertices whose whole tree path is already marked for this source.
void mark_tree_path(const DistanceField& field, VertexId t, EdgeSet& set, std::vector<int>& stamp, int tag) {
  for (VertexId v = t; v != field.source && stamp[v] != tag; v = field.pred[v]) {
    stamp[v] = tag;
    set.insert(field.pred_edge[v]);
  }
}

}  // namespace

PairClass classify_pair(const EmbeddedGraph& g, const CriticalRadii& radii, const ConeTable& table,
                        const ApspOracle& oracle, double epsilon, VertexId a, VertexId b) {
  PairClass c;
  c.a = a;
  c.b = b;
  c.r = dist(g.point(a), g.point(b));
  c.yao_gap = table.distance(a, cone_index(g.point(a), g.point(b), table.spec));
  const bool known = oracle.has_source(a) || oracle.has_source(b);
  c.d = known ? oracle.distance(a, b) : kInfinity;
  c.kind = classify(g, radii, table, epsilon, a, b, c.r, c.d);
  return c;
}

std::vector<PairClass> classify_pairs(const EmbeddedGraph& g, const CriticalRadii& radii, const ConeTable& table,
                                      const ApspOracle& oracle, double epsilon) {
  std::vector<PairClass> out;
  const int n = g.vertex_count();
  out.reserve(static_cast<std::size_t>(n) * (n > 0 ? n - 1 : 0));
  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = 0; b < n; ++b)
      if (a != b) out.push_back(classify_pair(g, radii, table, oracle, epsilon, a, b));
  return out;
}

namespace {

EdgeSet union_paths(const EmbeddedGraph& g, std::span<const PairClass> classes, const ApspOracle& oracle,
                    PairKind kind) {
  EdgeSet s(g.edge_count());
  std::vector<int> stamp(g.vertex_count(), -1);
  for (const PairClass& c : classes) {
    if (c.kind != kind) continue;
    mark_tree_path(oracle.field(c.a), c.b, s, stamp, c.a);
  }
  return s;
}

}  // namespace

EdgeSet build_E3(const EmbeddedGraph& g, std::span<const PairClass> classes, const ApspOracle& oracle) {
  return union_paths(g, classes, oracle, PairKind::kBEps);
}

EdgeSet build_E4(const EmbeddedGraph& g, std::span<const PairClass> classes, const ApspOracle& oracle) {
  return union_paths(g, classes, oracle, PairKind::kCEps);
}

SpannerBuild assemble_spanner(const EmbeddedGraph& g, const Params& params, unsigned threads) {
  params.validate();
  if (params.n != g.vertex_count()) throw ValidationError("invalid n: does not match the instance");
  SpannerBuild b;
  b.params = params;
  b.radii = critical_radii(params);
  b.spec = ConeSpec::from_epsilon(params.epsilon);
  b.table = build_cone_table(g, b.spec);
  b.component = largest_component(g.adjacency());
  b.oracle = apsp(g, b.component, threads);

  const double eps = params.epsilon;
  const int n = g.vertex_count();
  b.edges.e1 = build_E1(g, b.radii);
  b.edges.e2 = build_E2(g, b.table);
  b.edges.e3 = EdgeSet(g.edge_count());
  b.edges.e4 = EdgeSet(g.edge_count());

  const std::size_t comp = b.component.size();
  b.census.disconnected = static_cast<std::size_t>(n) * (n - 1) - comp * (comp - 1);

  std::vector<int> stamp3(n, -1), stamp4(n, -1);
  for (VertexId a : b.component) {
    const DistanceField& f = b.oracle.field(a);
    const Point& pa = g.point(a);
    for (VertexId v : b.component) {
      if (v == a) continue;
      const double r = dist(pa, g.point(v));
      switch (classify(g, b.radii, b.table, eps, a, v, r, f.dist[v])) {
        case PairKind::kBEps:
          ++b.census.b_eps;
          mark_tree_path(f, v, b.edges.e3, stamp3, a);
          break;
        case PairKind::kCEps:
          ++b.census.c_eps;
          mark_tree_path(f, v, b.edges.e4, stamp4, a);
          break;
        case PairKind::kNeither:
          ++b.census.neither;
          break;
        case PairKind::kDisconnected:
          throw InvariantViolation("component pair without a path");
      }
    }
  }

  b.edges.all = b.edges.e1;
  b.edges.all |= b.edges.e2;
  b.edges.all |= b.edges.e3;
  b.edges.all |= b.edges.e4;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if ((b.edges.e3.contains(e) || b.edges.e4.contains(e)) && g.edge(e).length > b.radii.R_eps) ++b.long_edges_e34;
  return b;
}

StretchReport verify_stretch(const EmbeddedGraph& g, const EdgeSet& subset, const ApspOracle& oracle,
                             std::optional<std::span<const VertexId>> sources, unsigned threads) {
  if (subset.universe() != g.edge_count()) throw ValidationError("edge subset does not belong to this graph");
  StretchReport rep;
  std::vector<VertexId> src;
  if (sources) {
    src.assign(sources->begin(), sources->end());
    rep.sampled = true;
  } else {
    for (const DistanceField& f : oracle.fields()) src.push_back(f.source);
  }
  rep.sources = src.size();
  const Adjacency sub = g.subgraph(subset);

  // Fields on the subgraph are computed in batches to bound memory.
  constexpr std::size_t kBatch = 64;
  for (std::size_t start = 0; start < src.size(); start += kBatch) {
    const std::size_t end = std::min(src.size(), start + kBatch);
    const ApspOracle part = apsp(sub, std::span(src).subspan(start, end - start), threads);
    for (std::size_t i = start; i < end; ++i) {
      const VertexId s = src[i];
      const DistanceField& full = oracle.field(s);
      const DistanceField& sf = part.field(s);
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (v == s || !full.reachable(v)) continue;
        ++rep.pairs_checked;
        if (!sf.reachable(v)) {
          ++rep.disconnected_pairs;
          if (rep.max_stretch != kInfinity) {
            rep.max_stretch = kInfinity;
            rep.arg_u = s;
            rep.arg_v = v;
          }
          continue;
        }
        const double ratio = sf.dist[v] / full.dist[v];
        ++rep.histogram[static_cast<long>(std::floor((ratio - 1.0) / kHistogramWidth))];
        if (ratio > rep.max_stretch) {
          rep.max_stretch = ratio;
          rep.arg_u = s;
          rep.arg_v = v;
        }
      }
    }
  }
  return rep;
}

FarPairDiagnostics check_far_pairs(const EmbeddedGraph& g, const CriticalRadii& radii, const ConeTable& table,
                                   const ApspOracle& oracle, double epsilon) {
  FarPairDiagnostics diag;
  if (radii.R_eps > std::sqrt(2.0)) return diag;
  for (const DistanceField& f : oracle.fields()) {
    const VertexId a = f.source;
    for (VertexId b = 0; b < g.vertex_count(); ++b) {
      if (b == a || !f.reachable(b)) continue;
      const double r = dist(g.point(a), g.point(b));
      if (r < radii.R_eps) continue;
      ++diag.pairs_in_range;
      if (f.dist[b] > (1.0 + 4.0 * epsilon) * r) {
        ++diag.detour_violations;
        if (diag.logged.size() < 32) diag.logged.emplace_back(a, b);
      }
      if (table.distance(a, cone_index(g.point(a), g.point(b), table.spec)) > epsilon * r) ++diag.yao_step_violations;
    }
  }
  return diag;
}

}  // namespace spanlab
