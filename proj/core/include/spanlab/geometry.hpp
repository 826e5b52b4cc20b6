#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

namespace spanlab {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

using PointSet = std::vector<Point>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Euclidean distance, computed as sqrt(dx*dx + dy*dy) everywhere in the
/// library so that stored edge lengths and ad-hoc distances agree bitwise.
double dist(const Point& a, const Point& b) noexcept;

bool in_unit_square(const Point& p) noexcept;

/// Cone family around an apex: cone i covers polar angles [i*eps, (i+1)*eps),
/// the last cone is clipped at 2*pi.
struct ConeSpec {
  double epsilon = 0.0;
  int tau = 0;

  /// Throws GeometryError unless eps > 0 and the resulting tau >= 4.
  static ConeSpec from_epsilon(double eps);

  double lower_angle(int cone) const noexcept;
  double upper_angle(int cone) const noexcept;
  double bisector_angle(int cone) const noexcept;
};

/// Polar angle of (target - apex) in [0, 2*pi). Throws on coincident points.
double polar_angle(const Point& apex, const Point& target);

int cone_index(const Point& apex, const Point& target, const ConeSpec& spec);

/// |x-a| + |x-b| <= (1+eps)|a-b|, boundary inclusive. Throws if a == b.
bool in_ellipse(const Point& a, const Point& b, double epsilon, const Point& x);

/// Uniform bucket grid over [0,1]^2 for fixed-radius neighbor queries.
class SpatialGrid {
 public:
  SpatialGrid(std::span<const Point> points, double cell_side);

  /// Calls fn(j) for every point j whose cell is within `radius` of p's cell
  /// neighborhood. Callers apply the exact distance test themselves.
  template <typename Fn>
  void for_each_candidate(const Point& p, double radius, Fn&& fn) const {
    const int reach = radius >= 1.0 ? cells_ : static_cast<int>(radius / side_) + 1;
    const int cx = cell_of(p.x);
    const int cy = cell_of(p.y);
    for (int gy = std::max(0, cy - reach); gy <= std::min(cells_ - 1, cy + reach); ++gy) {
      for (int gx = std::max(0, cx - reach); gx <= std::min(cells_ - 1, cx + reach); ++gx) {
        const std::size_t c = static_cast<std::size_t>(gy) * cells_ + gx;
        for (std::uint32_t k = start_[c]; k < start_[c + 1]; ++k) fn(static_cast<int>(items_[k]));
      }
    }
  }

  int cells_per_side() const noexcept { return cells_; }

 private:
  int cell_of(double coord) const noexcept;

  int cells_ = 1;
  double side_ = 1.0;
  std::vector<std::uint32_t> start_;
  std::vector<std::uint32_t> items_;
};

}  // namespace spanlab
