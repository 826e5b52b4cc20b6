#include "spanlab/lonely.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "spanlab/error.hpp"
#include "spanlab/paths.hpp"
#include "spanlab/rng.hpp"

namespace spanlab {

double psi(double epsilon) {
  if (!(epsilon >= 0.0)) throw ValidationError("invalid epsilon: must be non-negative");
  return std::numbers::pi * (1.0 + epsilon) * std::sqrt(2.0 * epsilon + epsilon * epsilon) / 4.0;
}

double lonely_cutoff(int n, double p, double epsilon) {
  return std::sqrt(20.0 * std::log(static_cast<double>(n)) / (n * p * psi(epsilon)));
}

double lonely_closed_form_bound(int n, double epsilon) { return n * std::numbers::pi / (3.0 * psi(epsilon)); }

double ellipse_square_area(const Point& a, const Point& b, double epsilon) {
  const double r = dist(a, b);
  if (r == 0.0 || epsilon == 0.0) return 0.0;
  const double semi_major = 0.5 * (1.0 + epsilon) * r;
  const double semi_minor = 0.5 * r * std::sqrt(2.0 * epsilon + epsilon * epsilon);
  const double ux = (b.x - a.x) / r;
  const double uy = (b.y - a.y) / r;
  const double cx = 0.5 * (a.x + b.x);
  const double cy = 0.5 * (a.y + b.y);
  const double half_w = std::sqrt(semi_major * semi_major * ux * ux + semi_minor * semi_minor * uy * uy);
  const double half_h = std::sqrt(semi_major * semi_major * uy * uy + semi_minor * semi_minor * ux * ux);
  const double full = std::numbers::pi * semi_major * semi_minor;
  if (cx - half_w >= 0.0 && cx + half_w <= 1.0 && cy - half_h >= 0.0 && cy + half_h <= 1.0) return full;

  const double ia2 = 1.0 / (semi_major * semi_major);
  const double ib2 = 1.0 / (semi_minor * semi_minor);
  // Quadratic in dy for fixed dx: qa dy^2 + qb dy + qc <= 0.
  const double qa = uy * uy * ia2 + ux * ux * ib2;
  const double qb_coef = 2.0 * ux * uy * (ia2 - ib2);
  const double qc_coef = ux * ux * ia2 + uy * uy * ib2;
  auto clipped_chord = [&](double x) {
    const double dx = x - cx;
    const double qb = qb_coef * dx;
    const double qc = qc_coef * dx * dx - 1.0;
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc <= 0.0) return 0.0;
    const double root = std::sqrt(disc);
    const double lo = cy + (-qb - root) / (2.0 * qa);
    const double hi = cy + (-qb + root) / (2.0 * qa);
    return std::max(0.0, std::min(hi, 1.0) - std::max(lo, 0.0));
  };

  // x = cx + half_w sin(t) removes the square-root behaviour at the ends.
  const double x_lo = std::max(0.0, cx - half_w);
  const double x_hi = std::min(1.0, cx + half_w);
  if (!(x_hi > x_lo)) return 0.0;
  const double t_lo = std::asin(std::clamp((x_lo - cx) / half_w, -1.0, 1.0));
  const double t_hi = std::asin(std::clamp((x_hi - cx) / half_w, -1.0, 1.0));
  auto integrand = [&](double t) { return clipped_chord(cx + half_w * std::sin(t)) * half_w * std::cos(t); };

  // Clipping at y = 0 and y = 1 puts kinks in the chord; split there so each piece is smooth.
  std::vector<double> cuts{t_lo, t_hi};
  for (double y : {0.0, 1.0}) {
    const double dy = y - cy;
    const double qa2 = qc_coef;
    const double qb2 = qb_coef * dy;
    const double qc2 = qa * dy * dy - 1.0;
    const double disc = qb2 * qb2 - 4.0 * qa2 * qc2;
    if (disc <= 0.0) continue;
    for (double sign : {-1.0, 1.0}) {
      const double x = cx + (-qb2 + sign * std::sqrt(disc)) / (2.0 * qa2);
      if (x <= x_lo || x >= x_hi) continue;
      cuts.push_back(std::asin(std::clamp((x - cx) / half_w, -1.0, 1.0)));
    }
  }
  std::sort(cuts.begin(), cuts.end());
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (!(cuts[i + 1] > cuts[i])) continue;
    double error = 0.0;
    area += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(integrand, cuts[i], cuts[i + 1], 12,
                                                                           1e-10, &error);
  }
  return std::clamp(area, 0.0, std::min(full, 1.0));
}

bool is_lonely(const EmbeddedGraph& g, VertexId a, VertexId b, double epsilon) {
  if (!g.has_edge(a, b)) throw ValidationError("not an edge");
  const Adjacency& adj = g.adjacency();
  if (adj.degree(a) > adj.degree(b)) std::swap(a, b);
  const Point& pa = g.point(a);
  const Point& pb = g.point(b);
  const double limit = (1.0 + epsilon) * dist(pa, pb);
  for (std::uint32_t k = adj.offset[a]; k < adj.offset[a + 1]; ++k) {
    const VertexId x = adj.neighbor[k];
    if (x == b) continue;
    if (adj.length[k] > limit) continue;
    if (!g.has_edge(x, b)) continue;
    const Point& px = g.point(x);
    if (dist(px, pa) + dist(px, pb) <= limit) return false;
  }
  return true;
}

bool is_lonely(const EmbeddedGraph& g, EdgeId e, double epsilon) {
  return is_lonely(g, g.edge(e).u, g.edge(e).v, epsilon);
}

LonelyCount count_lonely(const EmbeddedGraph& g, double epsilon, std::optional<double> cutoff) {
  LonelyCount c;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!is_lonely(g, e, epsilon)) continue;
    ++c.lonely;
    c.edges.push_back(e);
    if (cutoff && g.edge(e).length <= *cutoff) ++c.below_cutoff;
  }
  return c;
}

IntegralEstimate expected_lonely_integral(int n, double p, double epsilon, std::size_t samples, std::uint64_t seed,
                                          const AreaFn& area) {
  if (samples < 10000) throw ValidationError("invalid samples: need at least 10^4");
  if (n < 2) throw ValidationError("invalid n: need at least 2 vertices");
  const CounterRng rng(seed, CounterRng::kIntegration);
  const double pairs_p = 0.5 * n * (n - 1.0) * p;
  const double others = n - 2.0;
  double sum = 0.0, sum_sq = 0.0, sum_single = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const std::uint64_t k = 4 * static_cast<std::uint64_t>(i);
    const Point a{rng.uniform(k), rng.uniform(k + 1)};
    const Point b{rng.uniform(k + 2), rng.uniform(k + 3)};
    const double q = std::clamp(area ? area(a, b, epsilon) : ellipse_square_area(a, b, epsilon), 0.0, 1.0);
    // log1p keeps (1 - x)^m accurate when x is tiny.
    const double both = std::exp(others * std::log1p(-p * p * q));
    const double single = std::exp(others * std::log1p(-p * q));
    sum += both;
    sum_sq += both * both;
    sum_single += single;
  }
  const double m = static_cast<double>(samples);
  const double mean = sum / m;
  const double var = std::max(0.0, sum_sq / m - mean * mean) * m / (m - 1.0);
  IntegralEstimate est;
  est.mean = pairs_p * mean;
  est.std_error = pairs_p * std::sqrt(var / m);
  est.single_p_mean = pairs_p * sum_single / m;
  est.samples = samples;
  return est;
}

EssentialEdges essential_edges(const EmbeddedGraph& g, double epsilon, bool full_scan) {
  EssentialEdges out;
  const Adjacency& adj = g.adjacency();
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    if (!full_scan && !is_lonely(g, e, epsilon)) continue;
    ++out.candidates;
    const double bound = (1.0 + epsilon) * ed.length;
    if (bounded_distance(adj, ed.u, ed.v, bound, e, &g.points()) > bound) out.edges.push_back(e);
  }
  return out;
}

std::vector<EdgeId> essential_misses(const EssentialEdges& essential, const EdgeSet& spanner) {
  std::vector<EdgeId> out;
  for (EdgeId e : essential.edges)
    if (!spanner.contains(e)) out.push_back(e);
  return out;
}

}  // namespace spanlab
