#pragma once

// Curves of constant geodesic curvature λ > 0 in M²(κ) and the closed convex
// regions F_λ they bound.

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lunekit/geometry.hpp"

namespace lunekit {

enum class CurveKind { Circle, Horocycle, Hypercycle };

std::string_view to_string(CurveKind kind);

/// Circle iff λ² + κ > 0, horocycle iff λ² + κ = 0, hypercycle otherwise.
/// Throws GeometryError for λ ≤ 0.
CurveKind classify(Curvature kappa, double lambda);

/// Geodesic radius of F_λ when it is a disk; nullopt when F_λ is unbounded.
std::optional<double> f_lambda_radius(Curvature kappa, double lambda);

/// Length of ∂F_λ; +∞ when F_λ is unbounded.
double f_lambda_perimeter(Curvature kappa, double lambda);

/// Distance from a hypercycle of curvature λ to its axis (κ < 0, λ < √−κ).
double hypercycle_axis_distance(Curvature kappa, double lambda);

/// Angle between a chord of length c of a λ-curve and the curve at either
/// endpoint: sin ψ = λ·tan_κ(c/2). Clamped to π/2 for chords no λ-arc spans.
double chord_angle(Curvature kappa, double lambda, double chord);

/// Unit-speed curve of constant geodesic curvature λ bending to the left of
/// its frame tangent. The frame sits at arclength 0; the arc covers
/// [s_min, s_max] (s_min may be negative).
class ConstantCurvatureArc {
 public:
  ConstantCurvatureArc(TangentVector frame, double lambda, double s_min, double s_max);

  Curvature curvature() const { return frame_.base.curvature(); }
  double lambda() const { return lambda_; }
  CurveKind kind() const { return kind_; }
  const TangentVector& frame() const { return frame_; }
  double s_min() const { return s_min_; }
  double s_max() const { return s_max_; }
  double length() const { return s_max_ - s_min_; }

  /// Throws GeometryError outside [s_min, s_max] (with 1e-12 relative slack).
  ModelPoint point(double s) const;
  TangentVector tangent(double s) const;

  /// Evaluates without the range check, for root finding along the full curve.
  ModelPoint point_unchecked(double s) const;
  TangentVector tangent_unchecked(double s) const;

  /// n+1 samples at equal arclength steps from s_min to s_max.
  std::vector<ModelPoint> sample(int n) const;

 private:
  TangentVector frame_;
  Vec3 normal_;
  double lambda_;
  CurveKind kind_;
  double s_min_;
  double s_max_;
};

ModelPoint arc_point(const ConstantCurvatureArc& arc, double s);

enum class Membership { Inside, Boundary, Outside };

std::string_view to_string(Membership m);

/// Closed convex set bounded by a complete curve of constant geodesic
/// curvature λ: a geodesic disk, a horoball or a hypercycle region.
///
/// For κ ≠ 0 every such boundary is a plane section {B(x, pole) = level} of
/// the model quadric, with the region on the side B(x, pole) ≥ level; the
/// Euclidean disk keeps its center and radius instead.
class FLambdaRegion {
 public:
  /// Geodesic disk of the given center and radius (any κ).
  static FLambdaRegion disk(const ModelPoint& center, double radius, double lambda);
  /// Horoball whose boundary passes through `anchor` with inward unit normal
  /// `inward` (κ < 0, λ = √−κ).
  static FLambdaRegion horoball(const TangentVector& inward);
  /// Hypercycle region whose boundary passes through `inward.base` (κ < 0,
  /// λ < √−κ); the axis lies at the hypercycle distance along `inward`.
  static FLambdaRegion hypercycle_region(const TangentVector& inward, double lambda);

  Curvature curvature() const { return kappa_; }
  double lambda() const { return lambda_; }
  CurveKind kind() const { return kind_; }
  bool compact() const { return kind_ == CurveKind::Circle; }

  /// Circle only.
  const ModelPoint& center() const;
  double radius() const;
  /// Hypercycle only: distance from the boundary to the axis.
  double axis_distance() const { return axis_distance_; }

  /// Exact signed distance to the boundary curve; negative inside.
  double signed_distance(const ModelPoint& p) const;

  /// Unit normal at a boundary point pointing into the region.
  TangentVector inward_normal(const ModelPoint& boundary_point) const;

  /// The boundary traversed with the region on the left, anchored at a
  /// boundary point, covering [s_min, s_max].
  ConstantCurvatureArc boundary_arc(const ModelPoint& anchor, double s_min, double s_max) const;

  /// Arclength along the boundary from a to b, moving with the region on the
  /// left. For circles this lies in [0, perimeter).
  double boundary_arclength(const ModelPoint& a, const ModelPoint& b) const;

  /// First exit of the unit-speed geodesic ray `ray` (starting inside) from
  /// the region; nullopt if the ray never leaves.
  std::optional<double> exit_distance(const TangentVector& ray) const;

 private:
  FLambdaRegion() = default;

  Curvature kappa_;
  double lambda_ = 0.0;
  CurveKind kind_ = CurveKind::Circle;
  ModelPoint center_;
  double radius_ = 0.0;
  double axis_distance_ = 0.0;
  Vec3 pole_ = Vec3::Zero();
  double level_ = 0.0;
};

/// The F_λ whose boundary passes through s with inward normal `inward`.
FLambdaRegion f_lambda_supporting_at(const ModelPoint& s, const TangentVector& inward, double lambda);

Membership region_contains(const FLambdaRegion& region, const ModelPoint& p, double tol);

enum class Side { Left, Right };
enum class Closure { Open, Closed };

/// Sum of turning angles (π − interior angle on `side`) at the vertices of a
/// broken geodesic. Open polylines skip the two endpoints.
double swerve(std::span<const ModelPoint> points, Closure closure, Side side = Side::Left);

}  // namespace lunekit
