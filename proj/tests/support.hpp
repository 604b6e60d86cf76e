#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "lunekit/domains.hpp"
#include "lunekit/geometry.hpp"

namespace lunekit::test {

inline constexpr double pi = std::numbers::pi;

inline std::vector<ModelPoint> planar_ring(const std::vector<Vec2>& xy) {
  std::vector<ModelPoint> out;
  for (const Vec2& p : xy) out.push_back(ModelPoint::planar(p.x(), p.y()));
  return out;
}

/// Metric circle of radius r about c, n vertices, counterclockwise.
inline std::vector<ModelPoint> circle_ring(const ModelPoint& c, double r, int n) {
  const auto [e1, e2] = tangent_basis(c);
  (void)e2;
  const TangentVector base{c, e1};
  std::vector<ModelPoint> out;
  for (int i = 0; i < n; ++i) out.push_back(exp_map(rotate(base, 2.0 * pi * i / n), r));
  return out;
}

inline ConvexPolyDomain disk(Curvature kappa, double r, int n) {
  return ConvexPolyDomain(kappa, circle_ring(base_point(kappa), r, n));
}

/// Closed polygon with every edge split into `per_edge` geodesic pieces.
inline std::vector<ModelPoint> densify(const std::vector<ModelPoint>& corners, int per_edge) {
  std::vector<ModelPoint> out;
  for (std::size_t i = 0; i < corners.size(); ++i) {
    const ModelPoint& a = corners[i];
    const ModelPoint& b = corners[(i + 1) % corners.size()];
    for (int j = 0; j < per_edge; ++j) out.push_back(geodesic_lerp(a, b, static_cast<double>(j) / per_edge));
  }
  return out;
}

/// Random point within distance `spread` of the base point.
inline ModelPoint random_point(Curvature kappa, std::mt19937_64& rng, double spread) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
  std::uniform_real_distribution<double> radius(0.0, spread);
  return polar_point(kappa, angle(rng), radius(rng));
}

}  // namespace lunekit::test
