#include "spanlab/geometry.hpp"

#include <cmath>

#include "spanlab/error.hpp"

namespace spanlab {

double dist(const Point& a, const Point& b) noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

bool in_unit_square(const Point& p) noexcept {
  return p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0;
}

ConeSpec ConeSpec::from_epsilon(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw GeometryError("cone width must be positive");
  double t = std::ceil(kTwoPi / eps);
  // Guard the floor-partition invariant (tau-1)*eps < 2*pi <= tau*eps against
  // rounding in the quotient.
  if ((t - 1.0) * eps >= kTwoPi) t -= 1.0;
  if (t * eps < kTwoPi) t += 1.0;
  if (t < 4.0) throw GeometryError("cone width too large: need at least 4 cones");
  if (t > 1e6) throw GeometryError("cone width too small");
  return ConeSpec{eps, static_cast<int>(t)};
}

double ConeSpec::lower_angle(int cone) const noexcept { return cone * epsilon; }

double ConeSpec::upper_angle(int cone) const noexcept {
  return cone == tau - 1 ? kTwoPi : (cone + 1) * epsilon;
}

double ConeSpec::bisector_angle(int cone) const noexcept {
  return 0.5 * (lower_angle(cone) + upper_angle(cone));
}

double polar_angle(const Point& apex, const Point& target) {
  const double dx = target.x - apex.x;
  const double dy = target.y - apex.y;
  if (dx == 0.0 && dy == 0.0) throw GeometryError("undefined direction");
  double phi = std::atan2(dy, dx);
  if (phi < 0.0) phi += kTwoPi;
  if (phi >= kTwoPi) phi = 0.0;
  return phi;
}

int cone_index(const Point& apex, const Point& target, const ConeSpec& spec) {
  const double phi = polar_angle(apex, target);
  const int i = static_cast<int>(std::floor(phi / spec.epsilon));
  return std::min(i, spec.tau - 1);
}

bool in_ellipse(const Point& a, const Point& b, double epsilon, const Point& x) {
  if (a == b) throw GeometryError("ellipse foci coincide");
  return dist(x, a) + dist(x, b) <= (1.0 + epsilon) * dist(a, b);
}

SpatialGrid::SpatialGrid(std::span<const Point> points, double cell_side) {
  if (cell_side > 0.0 && std::isfinite(cell_side)) {
    const double c = std::ceil(1.0 / cell_side);
    cells_ = static_cast<int>(std::clamp(c, 1.0, 2048.0));
  }
  side_ = 1.0 / cells_;
  const std::size_t ncell = static_cast<std::size_t>(cells_) * cells_;
  std::vector<std::uint32_t> count(ncell + 1, 0);
  std::vector<std::uint32_t> cell(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    cell[i] = static_cast<std::uint32_t>(cell_of(points[i].y)) * cells_ + cell_of(points[i].x);
    ++count[cell[i] + 1];
  }
  for (std::size_t c = 0; c < ncell; ++c) count[c + 1] += count[c];
  start_ = count;
  items_.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) items_[count[cell[i]]++] = static_cast<std::uint32_t>(i);
}

int SpatialGrid::cell_of(double coord) const noexcept {
  const int c = static_cast<int>(coord / side_);
  return std::clamp(c, 0, cells_ - 1);
}

}  // namespace spanlab
