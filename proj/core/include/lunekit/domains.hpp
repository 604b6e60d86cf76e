#pragma once

// Discrete convex domains in M²(κ): validation, λ-convexity, numeric radii,
// random λ-convex generation and the chord-balancing constructions.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lunekit/curves.hpp"
#include "lunekit/lune.hpp"

namespace lunekit {

/// The boundary ring does not describe a valid convex domain.
class DomainError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

/// An iterative solver hit its iteration cap or lost its bracket.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// generate_lambda_convex gave up after its retry budget.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Central (gnomonic) projection about a point c: geodesics map to straight
/// lines. For κ = 0 it is the tangent-plane frame itself.
class GnomonicChart {
 public:
  GnomonicChart() = default;
  GnomonicChart(const ModelPoint& center, const Vec3& e1);

  const ModelPoint& center() const { return center_; }
  /// Throws DomainError for points the chart cannot represent (the far
  /// hemisphere of a sphere).
  Vec2 to_chart(const ModelPoint& p) const;
  ModelPoint from_chart(const Vec2& y) const;
  /// False outside the Klein disk (κ < 0).
  bool representable(const Vec2& y) const;

 private:
  ModelPoint center_;
  Vec3 e1_ = Vec3::UnitX();
  Vec3 e2_ = Vec3::UnitY();
};

/// Counterclockwise ring of boundary vertices of a convex domain (domain on
/// the left). The closing vertex is not repeated.
class ConvexPolyDomain {
 public:
  /// Validates: ≥ 3 distinct vertices, every turn ≥ −1e-9, winding number
  /// one, and (κ > 0) containment in an open hemisphere. A repeated closing
  /// vertex is dropped.
  ConvexPolyDomain(Curvature kappa, std::vector<ModelPoint> boundary);

  Curvature curvature() const { return kappa_; }
  std::size_t size() const { return boundary_.size(); }
  const std::vector<ModelPoint>& boundary() const { return boundary_; }
  const ModelPoint& vertex(std::size_t i) const { return boundary_[i % boundary_.size()]; }
  /// size()+1 entries; cumulative_arclength()[i] is the arclength at vertex i
  /// and the last entry is the perimeter.
  const std::vector<double>& cumulative_arclength() const { return cumulative_; }
  double perimeter() const { return cumulative_.back(); }
  double edge_length(std::size_t i) const;
  double max_edge() const { return max_edge_; }
  /// Turning angle at vertex i (positive towards the domain).
  double turn(std::size_t i) const { return turns_[i % turns_.size()]; }
  const std::vector<double>& turns() const { return turns_; }

  const GnomonicChart& chart() const { return chart_; }
  const std::vector<Vec2>& chart_polygon() const { return chart_polygon_; }

  /// Index of the edge containing arclength s (taken modulo the perimeter).
  std::size_t edge_at(double s) const;
  ModelPoint point_at(double s) const;
  /// Unit tangent of the edge through arclength s. At a vertex this is the
  /// outgoing edge.
  TangentVector edge_tangent_at(double s) const;
  /// Unit bisector of the incoming and outgoing edge directions at vertex i.
  TangentVector vertex_tangent(std::size_t i) const;

  bool contains(const ModelPoint& p) const;
  /// Distance from p to the boundary polyline (exact over edges).
  double boundary_distance(const ModelPoint& p) const;
  /// Largest distance from p to a boundary vertex.
  double max_vertex_distance(const ModelPoint& p) const;

 private:
  Curvature kappa_;
  std::vector<ModelPoint> boundary_;
  std::vector<double> cumulative_;
  std::vector<double> turns_;
  double max_edge_ = 0.0;
  GnomonicChart chart_;
  std::vector<Vec2> chart_polygon_;

  // Runs of consecutive edges with a bounding ball around a middle vertex.
  struct EdgeBlock {
    std::size_t first = 0, last = 0;
    std::size_t center = 0;
    double radius = 0.0;
  };
  std::vector<EdgeBlock> blocks_;
};

/// Degenerate-input policy for sampled domains: at least 8 vertices and no
/// edge longer than 10·h. Throws DomainError.
void validate_sampling(const ConvexPolyDomain& d, double h);

double perimeter(const ConvexPolyDomain& d);
/// Fan triangulation from an interior point; triangle areas from the angle
/// excess (κ ≠ 0) or the planar formula.
double area(const ConvexPolyDomain& d);
/// Σ turns + κ·area − 2π.
double gauss_bonnet_residual(const ConvexPolyDomain& d);

struct RadiusResult {
  double radius = 0.0;
  ModelPoint center;
};

/// max over p of the distance from p to ∂D.
RadiusResult inradius(const ConvexPolyDomain& d, double tol = 1e-9);
/// min over p of the largest distance from p to ∂D.
RadiusResult circumradius(const ConvexPolyDomain& d, double tol = 1e-9);

struct LambdaConvexityReport {
  bool lambda_convex = false;
  /// Minimum over vertex windows of Σ (turn − ψ(c_in) − ψ(c_out)), where ψ
  /// is the chord angle of a λ-curve.
  double min_excess = 0.0;
  /// Minimizing window, vertex indices (inclusive, cyclic).
  std::size_t first = 0;
  std::size_t last = 0;
  /// Swerve of the window's vertices and the length of the sub-polyline
  /// through them including both adjacent edges.
  double swerve = 0.0;
  double length = 0.0;
};

LambdaConvexityReport is_lambda_convex(const ConvexPolyDomain& d, double lambda, double tol);

/// Ring of boundary samples of a lune (step ≤ h) as a domain.
ConvexPolyDomain lune_domain(const Lune& lune, double h);

/// Intersection of n_supports random F_λ regions sharing the base point,
/// each boundary run sampled at step ≤ h. n_supports = 2 gives a lune.
/// Deterministic in seed. Throws GenerationError after 100 rejected draws.
ConvexPolyDomain generate_lambda_convex(Curvature kappa, double lambda, std::uint64_t seed, int n_supports,
                                        double h);

struct BalancedChord {
  ModelPoint p_star;
  ModelPoint q_star;
  ModelPoint m;
  /// Boundary arclength positions of p* and q* = p* + L/2.
  double s_p = 0.0;
  double s_q = 0.0;
  /// Supporting directions used at p* and q*.
  TangentVector u_p;
  TangentVector u_q;
  /// α(u_p) + β(u_q) − π.
  double g = 0.0;
  /// Lengths of the two boundary arcs p*→q* and q*→p*.
  std::pair<double, double> arc_lengths;
  /// Vertex index ranges [first, end) (cyclic) strictly inside each arc.
  std::pair<std::size_t, std::size_t> arc1;
  std::pair<std::size_t, std::size_t> arc2;
};

/// g(x) = α_x + β_{f(x)} − π for the boundary point at arclength s, with
/// f(x) the point half the perimeter further on. Edge tangents are used in
/// edge interiors and vertex bisectors at vertices.
double balance_defect(const ConvexPolyDomain& d, double s);

/// Equal-length split p*, q* of ∂D with α(u_p*) + β(u_q*) = π. The search
/// starts from the vertex farthest from o.
BalancedChord balanced_chord(const ConvexPolyDomain& d, const ModelPoint& o);

/// γ₁ ∪ R_m(γ₁) for the arc γ₁ from p* to q*. Throws DomainError naming the
/// vertex when the glued curve turns right.
ConvexPolyDomain reflect_arc(const ConvexPolyDomain& d, const BalancedChord& chord);

struct RollingReport {
  bool passed = false;
  /// Largest signed distance of a vertex outside F_λ(s) over all samples s.
  double max_violation = 0.0;
  std::size_t worst_sample = 0;
  std::size_t worst_vertex = 0;
};

RollingReport rolling_check(const ConvexPolyDomain& d, double lambda, int n_samples, double tol);

}  // namespace lunekit
