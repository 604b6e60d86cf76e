#pragma once

// Exact-formula primitives for the model planes M²(κ).
//
// Points are stored in embedding coordinates:
//   κ > 0  round sphere |x|² = 1/κ in Euclidean 3-space
//   κ = 0  the plane z = 0
//   κ < 0  upper sheet of the hyperboloid ⟪x,x⟫ = 1/κ, ⟪·,·⟫ = diag(+,+,−)
// Every formula below is written against the ambient bilinear form, so the
// three geometries share one code path wherever possible.

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <stdexcept>
#include <string>

namespace lunekit {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;

/// Thrown when an operation's precondition on its geometric inputs fails.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// |κ| below this dispatches to the flat formulas.
inline constexpr double kFlatThreshold = 1e-12;

/// Default absolute tolerance for kernel-level checks.
inline constexpr double kKernelTol = 1e-10;

class Curvature {
 public:
  constexpr Curvature() = default;
  constexpr explicit Curvature(double kappa) : kappa_(kappa) {}

  constexpr double value() const { return kappa_; }
  bool flat() const { return kappa_ < kFlatThreshold && kappa_ > -kFlatThreshold; }
  /// -1, 0 or +1 with the flat band folded into 0.
  int sign() const { return flat() ? 0 : (kappa_ > 0 ? 1 : -1); }
  /// √|κ|.
  double root() const;

  friend bool operator==(const Curvature&, const Curvature&) = default;

 private:
  double kappa_ = 0.0;
};

class ModelPoint {
 public:
  ModelPoint() = default;

  /// Validates that `coords` lies on the model surface (relative 1e-9) and
  /// snaps it back onto the quadric.
  static ModelPoint from_coords(Curvature kappa, const Vec3& coords);
  /// Projects an arbitrary ambient vector onto the model surface. For κ < 0
  /// the planar coordinates are kept and the height is recomputed.
  static ModelPoint project(Curvature kappa, const Vec3& coords);
  /// Point at the given planar coordinates (κ = 0 only).
  static ModelPoint planar(double x, double y);

  Curvature curvature() const { return kappa_; }
  double kappa() const { return kappa_.value(); }
  const Vec3& coords() const { return coords_; }

 private:
  ModelPoint(Curvature kappa, const Vec3& coords) : kappa_(kappa), coords_(coords) {}

  Curvature kappa_;
  Vec3 coords_ = Vec3::Zero();
};

/// A direction at a base point, orthogonal to it under the ambient form.
struct TangentVector {
  ModelPoint base;
  Vec3 dir = Vec3::Zero();

  /// Ambient-form length.
  double norm() const;
  bool is_normalized(double tol = 1e-9) const;
  TangentVector normalized() const;
};

struct GeodesicSegment {
  ModelPoint start;
  ModelPoint end;
  double length = 0.0;
};

struct TrigPair {
  double sn = 0.0;
  double cs = 1.0;
};

/// κ-indexed sine/cosine: sn'' + κ·sn = 0, sn(0) = 0, sn'(0) = 1, cs = sn'.
TrigPair generalized_trig(Curvature kappa, double t);

/// tan_κ(t) = sn/cs.
double generalized_tan(Curvature kappa, double t);

/// Ambient bilinear form: Euclidean for κ ≥ 0, Minkowski diag(+,+,−) for κ < 0.
double ambient_inner(Curvature kappa, const Vec3& u, const Vec3& v);

/// The base point of the model: the origin of the plane, the north pole of
/// the sphere, the vertex (0,0,1/k) of the hyperboloid. The tangent plane
/// there is spanned by e_x and e_y for all three models.
ModelPoint base_point(Curvature kappa);

/// Unit tangent at the base point making angle `theta` with e_x.
TangentVector base_direction(Curvature kappa, double theta);

/// exp at the base point in polar form.
ModelPoint polar_point(Curvature kappa, double theta, double radius);

double distance(const ModelPoint& p, const ModelPoint& q);

/// Unit-speed geodesic flow. `v` must be normalized, t ≥ 0 (t < π/√κ on
/// the sphere).
ModelPoint exp_map(const TangentVector& v, double t);

/// Unit initial direction of the geodesic p → q.
TangentVector direction_to(const ModelPoint& p, const ModelPoint& q);

/// Tangent component of an ambient vector at p.
Vec3 tangent_part(const ModelPoint& p, const Vec3& v);

/// Rotation by +π/2 in the tangent plane at p (counterclockwise as seen from
/// outside the sphere / above the plane / above the hyperboloid).
Vec3 left_normal(const ModelPoint& p, const Vec3& dir);

/// Rotates a tangent vector by `angle` in the tangent plane of its base.
TangentVector rotate(const TangentVector& v, double angle);

/// Signed angle in (−π, π] from u to w (both tangent at the same base).
double signed_angle(const ModelPoint& base, const Vec3& u, const Vec3& w);

/// Unsigned angle at `at` between the geodesics to p and q, in [0, π].
double angle(const ModelPoint& at, const ModelPoint& p, const ModelPoint& q);

/// Signed turning angle at `vertex` of the broken geodesic prev → vertex →
/// next; positive for a left turn. Equals π − (interior angle on the left).
double turning_angle(const ModelPoint& prev, const ModelPoint& vertex, const ModelPoint& next);

/// The isometry R_m with m the midpoint of x R_m(x).
ModelPoint point_reflection(const ModelPoint& m, const ModelPoint& x);
/// Differential of point_reflection(m, ·) applied to a tangent vector.
TangentVector reflect_tangent(const ModelPoint& m, const TangentVector& v);

/// Point at arclength fraction `t` ∈ [0,1] of the segment p q.
ModelPoint geodesic_lerp(const ModelPoint& p, const ModelPoint& q, double t);
ModelPoint midpoint(const ModelPoint& p, const ModelPoint& q);

GeodesicSegment make_segment(const ModelPoint& p, const ModelPoint& q);

/// Distance from p to the geodesic segment a b.
double segment_distance(const ModelPoint& p, const ModelPoint& a, const ModelPoint& b);

/// Orthonormal basis (e1, e2) of the tangent plane at p, with e2 = left_normal(e1).
std::pair<Vec3, Vec3> tangent_basis(const ModelPoint& p);

/// The isometry taking the base point and e_x to frame.base and frame.dir
/// (orientation preserving). `frame` must be normalized.
ModelPoint move_to_frame(const TangentVector& frame, const ModelPoint& p);
/// Inverse of move_to_frame.
ModelPoint move_from_frame(const TangentVector& frame, const ModelPoint& p);

/// Rescales a configuration for κ → κ/c²: coordinates scale by c.
ModelPoint rescale(const ModelPoint& p, double c);

/// Throws GeometryError unless both points share κ.
void require_same_curvature(const ModelPoint& p, const ModelPoint& q, const char* op);

std::string to_string(const ModelPoint& p);

}  // namespace lunekit
