#include "lunekit/curves.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace lunekit {

namespace {

// Band |λ − √−κ| treated as the horocycle case.
constexpr double kHorocycleBand = 1e-9;

void require_positive_lambda(double lambda, const char* op) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw GeometryError(std::string(op) + ": lambda must be positive and finite");
  }
}

}  // namespace

std::string_view to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::Circle:
      return "circle";
    case CurveKind::Horocycle:
      return "horocycle";
    case CurveKind::Hypercycle:
      return "hypercycle";
  }
  return "?";
}

std::string_view to_string(Membership m) {
  switch (m) {
    case Membership::Inside:
      return "inside";
    case Membership::Boundary:
      return "boundary";
    case Membership::Outside:
      return "outside";
  }
  return "?";
}

CurveKind classify(Curvature kappa, double lambda) {
  require_positive_lambda(lambda, "classify");
  if (kappa.sign() >= 0) return CurveKind::Circle;
  const double k = kappa.root();
  if (std::abs(lambda - k) < kHorocycleBand) return CurveKind::Horocycle;
  return lambda > k ? CurveKind::Circle : CurveKind::Hypercycle;
}

std::optional<double> f_lambda_radius(Curvature kappa, double lambda) {
  if (classify(kappa, lambda) != CurveKind::Circle) return std::nullopt;
  const double k = kappa.root();
  switch (kappa.sign()) {
    case 0:
      return 1.0 / lambda;
    case 1:
      return std::atan(k / lambda) / k;
    default:
      return std::atanh(k / lambda) / k;
  }
}

double f_lambda_perimeter(Curvature kappa, double lambda) {
  if (classify(kappa, lambda) != CurveKind::Circle) return std::numeric_limits<double>::infinity();
  // 2π·sn(r_λ) collapses to 2π/√(λ² + κ) in all three geometries.
  const double mu2 = kappa.sign() == 0 ? lambda * lambda : lambda * lambda + kappa.value();
  return 2.0 * std::numbers::pi / std::sqrt(mu2);
}

double hypercycle_axis_distance(Curvature kappa, double lambda) {
  if (classify(kappa, lambda) != CurveKind::Hypercycle) {
    throw GeometryError("hypercycle_axis_distance: (kappa, lambda) is not a hypercycle pair");
  }
  const double k = kappa.root();
  return std::atanh(lambda / k) / k;
}

double chord_angle(Curvature kappa, double lambda, double chord) {
  if (kappa.sign() > 0 && chord * kappa.root() >= std::numbers::pi) return 0.5 * std::numbers::pi;
  const double x = lambda * generalized_tan(kappa, 0.5 * chord);
  if (x >= 1.0) return 0.5 * std::numbers::pi;
  return std::asin(x);
}

// ---------------------------------------------------------------------------

ConstantCurvatureArc::ConstantCurvatureArc(TangentVector frame, double lambda, double s_min, double s_max)
    : frame_(std::move(frame)), lambda_(lambda), s_min_(s_min), s_max_(s_max) {
  require_positive_lambda(lambda, "ConstantCurvatureArc");
  if (!frame_.is_normalized()) throw GeometryError("ConstantCurvatureArc: frame tangent must be unit");
  if (!(s_min <= s_max)) throw GeometryError("ConstantCurvatureArc: empty arclength interval");
  kind_ = classify(frame_.base.curvature(), lambda);
  normal_ = left_normal(frame_.base, frame_.dir);
}

// The frame (x, T, N) obeys x' = T, T' = −κx + λN, N' = −λT, so x‴ = −(λ²+κ)x'.
// With μ² = λ² + κ: x(s) = x₀ + T₀·sn_μ(s) + (−κx₀ + λN₀)·2·sn_μ(s/2)².
ModelPoint ConstantCurvatureArc::point_unchecked(double s) const {
  const Curvature kappa = curvature();
  const double kv = kappa.sign() == 0 ? 0.0 : kappa.value();
  const Curvature mu2(lambda_ * lambda_ + kv);
  const TrigPair full = generalized_trig(mu2, s);
  const TrigPair half = generalized_trig(mu2, 0.5 * s);
  const Vec3& x0 = frame_.base.coords();
  const Vec3 accel = -kv * x0 + lambda_ * normal_;
  const Vec3 x = x0 + full.sn * frame_.dir + 2.0 * half.sn * half.sn * accel;
  return ModelPoint::project(kappa, x);
}

TangentVector ConstantCurvatureArc::tangent_unchecked(double s) const {
  const Curvature kappa = curvature();
  const double kv = kappa.sign() == 0 ? 0.0 : kappa.value();
  const Curvature mu2(lambda_ * lambda_ + kv);
  const TrigPair full = generalized_trig(mu2, s);
  const Vec3 accel = -kv * frame_.base.coords() + lambda_ * normal_;
  const ModelPoint p = point_unchecked(s);
  const Vec3 t = tangent_part(p, full.cs * frame_.dir + full.sn * accel);
  return TangentVector{p, t}.normalized();
}

ModelPoint ConstantCurvatureArc::point(double s) const {
  const double slack = 1e-12 * std::max(1.0, std::abs(s_max_) + std::abs(s_min_));
  if (s < s_min_ - slack || s > s_max_ + slack) throw GeometryError("arc_point: s outside the arc");
  return point_unchecked(s);
}

TangentVector ConstantCurvatureArc::tangent(double s) const {
  const double slack = 1e-12 * std::max(1.0, std::abs(s_max_) + std::abs(s_min_));
  if (s < s_min_ - slack || s > s_max_ + slack) throw GeometryError("arc tangent: s outside the arc");
  return tangent_unchecked(s);
}

std::vector<ModelPoint> ConstantCurvatureArc::sample(int n) const {
  if (n < 1) throw GeometryError("ConstantCurvatureArc::sample: need at least one step");
  std::vector<ModelPoint> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    const double s = i == n ? s_max_ : s_min_ + (s_max_ - s_min_) * static_cast<double>(i) / n;
    out.push_back(point_unchecked(s));
  }
  return out;
}

ModelPoint arc_point(const ConstantCurvatureArc& arc, double s) { return arc.point(s); }

// ---------------------------------------------------------------------------

FLambdaRegion FLambdaRegion::disk(const ModelPoint& center, double radius, double lambda) {
  if (!(radius > 0.0)) throw GeometryError("FLambdaRegion::disk: radius must be positive");
  const Curvature kappa = center.curvature();
  FLambdaRegion r;
  r.kappa_ = kappa;
  r.lambda_ = lambda;
  r.kind_ = CurveKind::Circle;
  r.center_ = center;
  r.radius_ = radius;
  if (kappa.sign() != 0) {
    r.pole_ = center.coords();
    r.level_ = generalized_trig(kappa, radius).cs / kappa.value();
  }
  return r;
}

FLambdaRegion FLambdaRegion::horoball(const TangentVector& inward) {
  const Curvature kappa = inward.base.curvature();
  if (kappa.sign() >= 0) throw GeometryError("FLambdaRegion::horoball: requires kappa < 0");
  const double k = kappa.root();
  FLambdaRegion r;
  r.kappa_ = kappa;
  r.lambda_ = k;
  r.kind_ = CurveKind::Horocycle;
  // Null vector towards the ideal point; B(s, ℓ) = −1/k on the boundary.
  r.pole_ = k * inward.base.coords() + inward.dir;
  r.level_ = -1.0 / k;
  return r;
}

FLambdaRegion FLambdaRegion::hypercycle_region(const TangentVector& inward, double lambda) {
  const Curvature kappa = inward.base.curvature();
  const double d = hypercycle_axis_distance(kappa, lambda);
  const double k = kappa.root();
  // Velocity of the inward geodesic where it meets the axis; the axis plane
  // is B(x, velocity) = 0 and the boundary sits at signed distance d behind it.
  const Vec3 velocity = k * std::sinh(k * d) * inward.base.coords() + std::cosh(k * d) * inward.dir;
  FLambdaRegion r;
  r.kappa_ = kappa;
  r.lambda_ = lambda;
  r.kind_ = CurveKind::Hypercycle;
  r.axis_distance_ = d;
  r.pole_ = velocity;
  r.level_ = -std::sinh(k * d) / k;
  return r;
}

const ModelPoint& FLambdaRegion::center() const {
  if (kind_ != CurveKind::Circle) throw GeometryError("FLambdaRegion::center: region is unbounded");
  return center_;
}

double FLambdaRegion::radius() const {
  if (kind_ != CurveKind::Circle) throw GeometryError("FLambdaRegion::radius: region is unbounded");
  return radius_;
}

double FLambdaRegion::signed_distance(const ModelPoint& p) const {
  if (p.kappa() != kappa_.value()) throw GeometryError("signed_distance: curvature mismatch");
  const double k = kappa_.root();
  switch (kind_) {
    case CurveKind::Circle:
      return distance(center_, p) - radius_;
    case CurveKind::Horocycle: {
      const double b = -k * ambient_inner(kappa_, p.coords(), pole_);
      return std::log(b) / k;
    }
    case CurveKind::Hypercycle: {
      const double b = -k * ambient_inner(kappa_, p.coords(), pole_);
      return std::asinh(b) / k - axis_distance_;
    }
  }
  return 0.0;
}

TangentVector FLambdaRegion::inward_normal(const ModelPoint& boundary_point) const {
  if (kappa_.sign() == 0) return direction_to(boundary_point, center_);
  return TangentVector{boundary_point, tangent_part(boundary_point, pole_)}.normalized();
}

ConstantCurvatureArc FLambdaRegion::boundary_arc(const ModelPoint& anchor, double s_min, double s_max) const {
  const TangentVector inward = inward_normal(anchor);
  const TangentVector tangent{anchor, -left_normal(anchor, inward.dir)};
  return ConstantCurvatureArc(tangent.normalized(), lambda_, s_min, s_max);
}

double FLambdaRegion::boundary_arclength(const ModelPoint& a, const ModelPoint& b) const {
  const double k = kappa_.root();
  switch (kind_) {
    case CurveKind::Circle: {
      if (distance(a, b) == 0.0) return 0.0;
      const Vec3 da = direction_to(center_, a).dir;
      const Vec3 db = direction_to(center_, b).dir;
      double phi = signed_angle(center_, da, db);
      if (phi < 0.0) phi += 2.0 * std::numbers::pi;
      return generalized_trig(kappa_, radius_).sn * phi;
    }
    case CurveKind::Horocycle:
    case CurveKind::Hypercycle: {
      const double c = distance(a, b);
      if (c == 0.0) return 0.0;
      double s = 0.0;
      if (kind_ == CurveKind::Horocycle) {
        s = 2.0 * std::sinh(0.5 * k * c) / k;
      } else {
        const double ch = std::cosh(k * axis_distance_);
        s = ch * 2.0 * std::asinh(std::sinh(0.5 * k * c) / ch) / k;
      }
      const TangentVector inward = inward_normal(a);
      const Vec3 forward = -left_normal(a, inward.dir);
      const double ahead = ambient_inner(kappa_, forward, direction_to(a, b).dir);
      return ahead >= 0.0 ? s : -s;
    }
  }
  return 0.0;
}

std::optional<double> FLambdaRegion::exit_distance(const TangentVector& ray) const {
  const Vec3& o = ray.base.coords();
  const Vec3& u = ray.dir;
  if (kappa_.sign() == 0) {
    const Vec3 oc = o - center_.coords();
    const double b = u.dot(oc);
    const double disc = b * b - (oc.squaredNorm() - radius_ * radius_);
    if (disc < 0.0) return std::nullopt;
    return std::max(0.0, -b + std::sqrt(disc));
  }
  const double k = kappa_.root();
  const double P = ambient_inner(kappa_, o, pole_);
  const double Q = ambient_inner(kappa_, u, pole_) / k;
  const double c = level_;
  if (kappa_.sign() > 0) {
    // P cos θ + Q sin θ = c with θ = k t.
    const double R = std::hypot(P, Q);
    if (R == 0.0) return std::nullopt;
    const double ratio = c / R;
    if (ratio < -1.0) return std::nullopt;
    if (ratio >= 1.0) return 0.0;
    const double theta = std::atan2(Q, P) + std::acos(ratio);
    return std::max(0.0, theta) / k;
  }
  // P cosh θ + Q sinh θ = c; with y = e^θ: (P+Q) y² − 2c y + (P−Q) = 0.
  const double a = P + Q;
  const double b = P - Q;
  double best = std::numeric_limits<double>::infinity();
  auto consider = [&](double y) {
    if (std::isfinite(y) && y >= 1.0 - 1e-15) best = std::min(best, std::max(y, 1.0));
  };
  if (std::abs(a) <= 1e-300) {
    if (c != 0.0) consider(b / (2.0 * c));
  } else {
    const double disc = c * c - a * b;
    if (disc < 0.0) return std::nullopt;
    const double q = c + std::copysign(std::sqrt(disc), c);
    consider(q / a);
    if (q != 0.0) consider(b / q);
  }
  if (!std::isfinite(best)) return std::nullopt;
  return std::log(best) / k;
}

FLambdaRegion f_lambda_supporting_at(const ModelPoint& s, const TangentVector& inward, double lambda) {
  require_positive_lambda(lambda, "f_lambda_supporting_at");
  require_same_curvature(s, inward.base, "f_lambda_supporting_at");
  if ((s.coords() - inward.base.coords()).norm() > 1e-9 * std::max(1.0, s.coords().norm())) {
    throw GeometryError("f_lambda_supporting_at: inward direction is not based at s");
  }
  if (!inward.is_normalized(1e-9)) throw GeometryError("f_lambda_supporting_at: degenerate inward direction");
  const TangentVector u{s, inward.dir};
  switch (classify(s.curvature(), lambda)) {
    case CurveKind::Circle: {
      const double r = *f_lambda_radius(s.curvature(), lambda);
      return FLambdaRegion::disk(exp_map(u, r), r, lambda);
    }
    case CurveKind::Horocycle:
      return FLambdaRegion::horoball(u);
    case CurveKind::Hypercycle:
      return FLambdaRegion::hypercycle_region(u, lambda);
  }
  throw GeometryError("f_lambda_supporting_at: unreachable");
}

Membership region_contains(const FLambdaRegion& region, const ModelPoint& p, double tol) {
  if (p.kappa() != region.curvature().value()) throw GeometryError("region_contains: curvature mismatch");
  const double sd = region.signed_distance(p);
  if (std::abs(sd) <= tol) return Membership::Boundary;
  return sd < 0.0 ? Membership::Inside : Membership::Outside;
}

double swerve(std::span<const ModelPoint> points, Closure closure, Side side) {
  std::size_t n = points.size();
  if (closure == Closure::Closed && n > 1 && points.front().coords() == points.back().coords()) --n;
  if (n < 3) throw GeometryError("swerve: need at least three points");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (points[i].coords() == points[i + 1].coords()) throw GeometryError("swerve: repeated consecutive points");
  }
  double total = 0.0;
  if (closure == Closure::Closed) {
    if (points[n - 1].coords() == points[0].coords()) throw GeometryError("swerve: repeated consecutive points");
    for (std::size_t i = 0; i < n; ++i) {
      total += turning_angle(points[(i + n - 1) % n], points[i], points[(i + 1) % n]);
    }
  } else {
    for (std::size_t i = 1; i + 1 < n; ++i) total += turning_angle(points[i - 1], points[i], points[i + 1]);
  }
  return side == Side::Left ? total : -total;
}

}  // namespace lunekit
