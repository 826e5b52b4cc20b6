#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "spanlab/instance.hpp"

namespace spanlab {

/// Area coefficient of the stretch ellipse: area = psi(eps) * |a-b|^2.
double psi(double epsilon);

/// sqrt(20 ln n / (n p psi)); longer lonely edges are exponentially rare.
double lonely_cutoff(int n, double p, double epsilon);

/// n * pi / (3 psi).
double lonely_closed_form_bound(int n, double epsilon);

/// Area of {x : |x-a| + |x-b| <= (1+eps)|a-b|} intersected with [0,1]^2.
/// Interior ellipses use the closed form; the rest go through adaptive
/// Gauss-Kronrod quadrature of the clipped vertical chord.
double ellipse_square_area(const Point& a, const Point& b, double epsilon);

/// No third vertex inside ellipse(a, b) is adjacent to both endpoints.
/// Throws ValidationError for a non-edge.
bool is_lonely(const EmbeddedGraph& g, VertexId a, VertexId b, double epsilon);
bool is_lonely(const EmbeddedGraph& g, EdgeId e, double epsilon);

struct LonelyCount {
  std::size_t lonely = 0;
  std::size_t below_cutoff = 0;  // lonely edges with length <= cutoff
  std::vector<EdgeId> edges;     // ascending
};

LonelyCount count_lonely(const EmbeddedGraph& g, double epsilon, std::optional<double> cutoff = std::nullopt);

struct IntegralEstimate {
  double mean = 0.0;          // C(n,2) p E[(1 - p^2 q)^(n-2)]
  double std_error = 0.0;
  double single_p_mean = 0.0;  // same samples with (1 - p q)^(n-2)
  std::size_t samples = 0;
};

using AreaFn = std::function<double(const Point&, const Point&, double)>;

/// Expected number of lonely edges for uniform points and G(n,p) edges,
/// averaged over `samples` uniform pairs drawn from `seed`'s integration
/// stream. Throws ValidationError for fewer than 10^4 samples.
IntegralEstimate expected_lonely_integral(int n, double p, double epsilon, std::size_t samples,
                                          std::uint64_t seed = 1, const AreaFn& area = {});

struct EssentialEdges {
  std::vector<EdgeId> edges;  // ascending
  std::size_t candidates = 0;
};

/// Edges whose deletion pushes the endpoint distance above (1+eps)|a-b|.
/// With full_scan == false only lonely edges are examined: any other edge has
/// a two-hop detour within the bound and cannot be essential.
EssentialEdges essential_edges(const EmbeddedGraph& g, double epsilon, bool full_scan = false);

/// Essential edges missing from `spanner`.
std::vector<EdgeId> essential_misses(const EssentialEdges& essential, const EdgeSet& spanner);

}  // namespace spanlab
