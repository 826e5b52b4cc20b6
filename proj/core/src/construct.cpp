#include "spanlab/spanner.hpp"

#include <algorithm>

#include "spanlab/error.hpp"

namespace spanlab {

const char* branch_name(Branch b) noexcept {
  switch (b) {
    case Branch::kD1: return "D1";
    case Branch::kD2: return "D2";
    case Branch::kD3: return "D3";
    case Branch::kD4: return "D4";
  }
  return "?";
}

namespace {

void route(const EmbeddedGraph& g, const CriticalRadii& radii, const ConeTable& table, const ApspOracle& oracle,
           VertexId a, VertexId b, double eps, ConstructTrace& out) {
  out.waypoints.clear();
  out.branches.clear();
  out.vertices.clear();
  out.edges.clear();
  out.length = 0.0;
  out.far_splice = false;
  if (a == b) throw ValidationError("construct_path needs distinct endpoints");
  if (oracle.distance(a, b) == kInfinity) throw DisconnectedPair();

  const Point& pb = g.point(b);
  const int n = g.vertex_count();
  double yao_length = 0.0;
  VertexId z = a;
  Branch finish = Branch::kD4;
  for (int step = 0;; ++step) {
    if (step > n) throw InvariantViolation("construct exceeded n Yao steps");
    out.waypoints.push_back(z);
    out.vertices.push_back(z);
    const Point& pz = g.point(z);
    const double to_b = dist(pz, pb);

    if (g.has_edge(z, b) && to_b <= radii.r_eps) {
      finish = Branch::kD1;
      break;
    }
    const int cone = cone_index(pz, pb, table.spec);
    const VertexId y = table.at(z, cone);
    const double step_len = table.distance(z, cone);
    if (step_len > eps * to_b) {
      finish = Branch::kD2;
      break;
    }
    const double y_to_b = dist(g.point(y), pb);
    if (oracle.distance(y, b) >= (1.0 + 5.0 * eps) * y_to_b) {
      finish = Branch::kD3;
      break;
    }
    if (!(y_to_b < to_b)) throw InvariantViolation("Yao step did not approach the target");
    out.branches.push_back(Branch::kD4);
    out.edges.push_back(table.edge[table.slot(z, cone)]);
    yao_length += step_len;
    z = y;
  }
  out.branches.push_back(finish);
  out.far_splice = finish != Branch::kD1 && dist(g.point(z), pb) > radii.R_eps;

  const DistanceField& f = oracle.field(z);
  const std::size_t mark = out.vertices.size();
  for (VertexId v = b; v != z; v = f.pred[v]) {
    out.vertices.push_back(v);
    out.edges.push_back(f.pred_edge[v]);
  }
  std::reverse(out.vertices.begin() + mark, out.vertices.end());
  std::reverse(out.edges.begin() + (mark - 1), out.edges.end());
  out.length = yao_length + f.dist[b];
}

}  // namespace

ConstructTrace construct_path(const EmbeddedGraph& g, const CriticalRadii& radii, const ConeTable& table,
                              const ApspOracle& oracle, VertexId a, VertexId b, double epsilon) {
  ConstructTrace t;
  route(g, radii, table, oracle, a, b, epsilon, t);
  return t;
}

ConstructTrace construct_path(const EmbeddedGraph& g, const SpannerBuild& build, VertexId a, VertexId b) {
  return construct_path(g, build.radii, build.table, build.oracle, a, b, build.params.epsilon);
}

YaoRoute yao_route(const EmbeddedGraph& g, const ConeTable& table, VertexId a, VertexId b) {
  YaoRoute r;
  r.vertices.push_back(a);
  const Point& pb = g.point(b);
  VertexId z = a;
  while (z != b) {
    if (r.vertices.size() > static_cast<std::size_t>(g.vertex_count())) throw InvariantViolation("Yao walk too long");
    const int cone = cone_index(g.point(z), pb, table.spec);
    const VertexId y = table.at(z, cone);
    if (y == kNoVertex) throw DisconnectedPair();
    if (y != b && !(dist(g.point(y), pb) < dist(g.point(z), pb)))
      throw InvariantViolation("Yao step did not approach the target");
    r.length += table.distance(z, cone);
    r.vertices.push_back(y);
    z = y;
  }
  return r;
}

ConstructSummary check_construct(const EmbeddedGraph& g, const SpannerBuild& build,
                                 std::optional<std::span<const VertexId>> sources) {
  ConstructSummary s;
  const double eps = build.params.epsilon;
  const std::span<const VertexId> from = sources ? *sources : std::span<const VertexId>(build.component);
  ConstructTrace t;
  for (VertexId a : from) {
    const DistanceField& f = build.oracle.field(a);
    for (VertexId b : build.component) {
      if (b == a) continue;
      route(g, build.radii, build.table, build.oracle, a, b, eps, t);
      ++s.pairs;
      const double d = f.dist[b];
      s.max_ratio = std::max(s.max_ratio, t.length / d);
      if (t.length > (1.0 + 7.0 * eps) * d + 1e-9) ++s.stretch_violations;
      s.max_steps = std::max(s.max_steps, t.yao_steps());
      s.branch_counts[static_cast<int>(Branch::kD4)] += t.yao_steps();
      s.branch_counts[static_cast<int>(t.branches.back())] += 1;

      bool contained = true;
      for (EdgeId e : t.edges) {
        if (!build.edges.all.contains(e)) {
          contained = false;
          break;
        }
      }
      if (t.far_splice) {
        ++s.far_flagged;
        if (!contained) ++s.flagged_misses;
      } else if (!contained) {
        ++s.containment_misses;
      }
      if (t.branches.back() == Branch::kD1) {
        ++s.pure_yao;
        s.pure_yao_max_ratio = std::max(s.pure_yao_max_ratio, t.length / dist(g.point(a), g.point(b)));
      }
    }
  }
  return s;
}

}  // namespace spanlab
