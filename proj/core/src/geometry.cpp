#include "lunekit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace lunekit {

namespace {

// Minkowski "cross product": orthogonal to both arguments under diag(+,+,−).
Vec3 minkowski_cross(const Vec3& a, const Vec3& b) {
  Vec3 c = a.cross(b);
  c.z() = -c.z();
  return c;
}

void require_not_antipodal(const ModelPoint& p, const ModelPoint& q, const char* op) {
  if (p.curvature().sign() <= 0) return;
  const double k = p.curvature().root();
  const double d = std::atan2(p.coords().cross(q.coords()).norm(), p.coords().dot(q.coords())) / k;
  if (std::numbers::pi / k - d < 1e-9) {
    throw GeometryError(std::string(op) + ": antipodal points on the sphere");
  }
}

}  // namespace

double Curvature::root() const { return std::sqrt(std::abs(kappa_)); }

ModelPoint ModelPoint::from_coords(Curvature kappa, const Vec3& coords) {
  if (!coords.allFinite()) throw GeometryError("ModelPoint: non-finite coordinates");
  constexpr double tol = 1e-9;
  switch (kappa.sign()) {
    case 0:
      if (std::abs(coords.z()) > tol * (1.0 + coords.head<2>().norm())) {
        throw GeometryError("ModelPoint: planar point must have z = 0");
      }
      break;
    case 1: {
      const double q = kappa.value() * coords.squaredNorm();
      if (std::abs(q - 1.0) > tol) throw GeometryError("ModelPoint: point is off the sphere");
      break;
    }
    default: {
      const double q = kappa.value() * ambient_inner(kappa, coords, coords);
      if (std::abs(q - 1.0) > tol * std::max(1.0, kappa.value() * -coords.z() * coords.z())) {
        throw GeometryError("ModelPoint: point is off the hyperboloid");
      }
      if (coords.z() <= 0) throw GeometryError("ModelPoint: point is on the lower sheet");
      break;
    }
  }
  return project(kappa, coords);
}

ModelPoint ModelPoint::project(Curvature kappa, const Vec3& coords) {
  switch (kappa.sign()) {
    case 0:
      return ModelPoint(kappa, Vec3(coords.x(), coords.y(), 0.0));
    case 1: {
      const double n = coords.norm();
      if (n == 0.0) throw GeometryError("ModelPoint: cannot project the zero vector");
      return ModelPoint(kappa, coords / (n * kappa.root()));
    }
    default: {
      const double k = kappa.root();
      const double z = std::sqrt(coords.x() * coords.x() + coords.y() * coords.y() + 1.0 / (k * k));
      return ModelPoint(kappa, Vec3(coords.x(), coords.y(), z));
    }
  }
}

ModelPoint ModelPoint::planar(double x, double y) { return ModelPoint(Curvature(0.0), Vec3(x, y, 0.0)); }

double TangentVector::norm() const {
  const double q = ambient_inner(base.curvature(), dir, dir);
  return std::sqrt(std::max(q, 0.0));
}

bool TangentVector::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

TangentVector TangentVector::normalized() const {
  const double n = norm();
  if (!(n > 0.0)) throw GeometryError("TangentVector: degenerate direction");
  return {base, dir / n};
}

TrigPair generalized_trig(Curvature kappa, double t) {
  switch (kappa.sign()) {
    case 0:
      return {t, 1.0};
    case 1: {
      const double k = kappa.root();
      return {std::sin(k * t) / k, std::cos(k * t)};
    }
    default: {
      const double k = kappa.root();
      return {std::sinh(k * t) / k, std::cosh(k * t)};
    }
  }
}

double generalized_tan(Curvature kappa, double t) {
  switch (kappa.sign()) {
    case 0:
      return t;
    case 1:
      return std::tan(kappa.root() * t) / kappa.root();
    default:
      return std::tanh(kappa.root() * t) / kappa.root();
  }
}

double ambient_inner(Curvature kappa, const Vec3& u, const Vec3& v) {
  if (kappa.sign() < 0) return u.x() * v.x() + u.y() * v.y() - u.z() * v.z();
  return u.dot(v);
}

ModelPoint base_point(Curvature kappa) {
  if (kappa.sign() == 0) return ModelPoint::project(kappa, Vec3::Zero());
  return ModelPoint::project(kappa, Vec3(0.0, 0.0, 1.0));
}

TangentVector base_direction(Curvature kappa, double theta) {
  return {base_point(kappa), Vec3(std::cos(theta), std::sin(theta), 0.0)};
}

ModelPoint polar_point(Curvature kappa, double theta, double radius) {
  return exp_map(base_direction(kappa, theta), radius);
}

void require_same_curvature(const ModelPoint& p, const ModelPoint& q, const char* op) {
  if (p.kappa() != q.kappa()) throw GeometryError(std::string(op) + ": curvature mismatch");
}

double distance(const ModelPoint& p, const ModelPoint& q) {
  require_same_curvature(p, q, "distance");
  const Curvature kappa = p.curvature();
  switch (kappa.sign()) {
    case 0:
      return (p.coords() - q.coords()).norm();
    case 1: {
      require_not_antipodal(p, q, "distance");
      const double k = kappa.root();
      return std::atan2(p.coords().cross(q.coords()).norm(), p.coords().dot(q.coords())) / k;
    }
    default: {
      const double k = kappa.root();
      const double c = kappa.value() * ambient_inner(kappa, p.coords(), q.coords());
      if (c > 2.0) return std::acosh(c) / k;
      const Vec3 diff = p.coords() - q.coords();
      const double chord = std::sqrt(std::max(ambient_inner(kappa, diff, diff), 0.0));
      return 2.0 * std::asinh(0.5 * k * chord) / k;
    }
  }
}

ModelPoint exp_map(const TangentVector& v, double t) {
  if (!v.is_normalized()) throw GeometryError("exp_map: direction is not normalized");
  if (t < 0.0 || !std::isfinite(t)) throw GeometryError("exp_map: t must be finite and non-negative");
  const Curvature kappa = v.base.curvature();
  if (kappa.sign() > 0 && t >= std::numbers::pi / kappa.root()) {
    throw GeometryError("exp_map: t reaches the antipode");
  }
  const TrigPair tr = generalized_trig(kappa, t);
  if (kappa.sign() == 0) return ModelPoint::project(kappa, v.base.coords() + t * v.dir);
  return ModelPoint::project(kappa, tr.cs * v.base.coords() + tr.sn * v.dir);
}

Vec3 tangent_part(const ModelPoint& p, const Vec3& v) {
  const Curvature kappa = p.curvature();
  if (kappa.sign() == 0) return Vec3(v.x(), v.y(), 0.0);
  return v - kappa.value() * ambient_inner(kappa, p.coords(), v) * p.coords();
}

TangentVector direction_to(const ModelPoint& p, const ModelPoint& q) {
  require_same_curvature(p, q, "direction_to");
  require_not_antipodal(p, q, "direction_to");
  const Vec3 d = tangent_part(p, q.coords() - p.coords());
  const double n = std::sqrt(std::max(ambient_inner(p.curvature(), d, d), 0.0));
  if (!(n > 0.0)) throw GeometryError("direction_to: coincident points");
  return {p, d / n};
}

Vec3 left_normal(const ModelPoint& p, const Vec3& dir) {
  const Curvature kappa = p.curvature();
  switch (kappa.sign()) {
    case 0:
      return Vec3(-dir.y(), dir.x(), 0.0);
    case 1:
      return (kappa.root() * p.coords()).cross(dir);
    default:
      return minkowski_cross(kappa.root() * p.coords(), dir);
  }
}

TangentVector rotate(const TangentVector& v, double angle) {
  return {v.base, std::cos(angle) * v.dir + std::sin(angle) * left_normal(v.base, v.dir)};
}

double signed_angle(const ModelPoint& base, const Vec3& u, const Vec3& w) {
  const Curvature kappa = base.curvature();
  return std::atan2(ambient_inner(kappa, left_normal(base, u), w), ambient_inner(kappa, u, w));
}

double angle(const ModelPoint& at, const ModelPoint& p, const ModelPoint& q) {
  const TangentVector u = direction_to(at, p);
  const TangentVector w = direction_to(at, q);
  return std::abs(signed_angle(at, u.dir, w.dir));
}

double turning_angle(const ModelPoint& prev, const ModelPoint& vertex, const ModelPoint& next) {
  const Vec3 incoming = -direction_to(vertex, prev).dir;
  const Vec3 outgoing = direction_to(vertex, next).dir;
  return signed_angle(vertex, incoming, outgoing);
}

ModelPoint point_reflection(const ModelPoint& m, const ModelPoint& x) {
  require_same_curvature(m, x, "point_reflection");
  const Curvature kappa = m.curvature();
  if (kappa.sign() == 0) return ModelPoint::project(kappa, 2.0 * m.coords() - x.coords());
  require_not_antipodal(m, x, "point_reflection");
  const double c = kappa.value() * ambient_inner(kappa, m.coords(), x.coords());
  return ModelPoint::project(kappa, 2.0 * c * m.coords() - x.coords());
}

TangentVector reflect_tangent(const ModelPoint& m, const TangentVector& v) {
  const Curvature kappa = m.curvature();
  const ModelPoint base = point_reflection(m, v.base);
  if (kappa.sign() == 0) return {base, -v.dir};
  const double c = kappa.value() * ambient_inner(kappa, m.coords(), v.dir);
  return {base, 2.0 * c * m.coords() - v.dir};
}

ModelPoint geodesic_lerp(const ModelPoint& p, const ModelPoint& q, double t) {
  const double d = distance(p, q);
  if (d == 0.0) return p;
  return exp_map(direction_to(p, q), t * d);
}

ModelPoint midpoint(const ModelPoint& p, const ModelPoint& q) { return geodesic_lerp(p, q, 0.5); }

GeodesicSegment make_segment(const ModelPoint& p, const ModelPoint& q) { return {p, q, distance(p, q)}; }

double segment_distance(const ModelPoint& p, const ModelPoint& a, const ModelPoint& b) {
  const Curvature kappa = p.curvature();
  const Vec3& x = p.coords();
  const Vec3& u = a.coords();
  const Vec3& w = b.coords();
  if (kappa.sign() == 0) {
    const Vec3 ab = w - u;
    const double len2 = ab.squaredNorm();
    if (len2 == 0.0) return (x - u).norm();
    const double t = std::clamp((x - u).dot(ab) / len2, 0.0, 1.0);
    return (x - (u + t * ab)).norm();
  }
  const double K = kappa.value();
  const double ab = ambient_inner(kappa, u, w);
  const double ap = ambient_inner(kappa, u, x);
  const double bp = ambient_inner(kappa, w, x);
  // Foot of the perpendicular lies on the segment iff both base angles ≤ π/2.
  if (bp - K * ab * ap <= 0.0) return distance(p, a);
  if (ap - K * ab * bp <= 0.0) return distance(p, b);
  const Vec3 n = kappa.sign() > 0 ? u.cross(w) : minkowski_cross(u, w);
  const double nn = ambient_inner(kappa, n, n);
  if (!(nn > 0.0)) return std::min(distance(p, a), distance(p, b));
  const double s = std::abs(ambient_inner(kappa, x, n)) / std::sqrt(nn);
  const double k = kappa.root();
  if (kappa.sign() > 0) return std::asin(std::min(1.0, k * s)) / k;
  return std::asinh(k * s) / k;
}

std::pair<Vec3, Vec3> tangent_basis(const ModelPoint& p) {
  Vec3 e1 = tangent_part(p, Vec3::UnitX());
  double n = std::sqrt(std::max(ambient_inner(p.curvature(), e1, e1), 0.0));
  if (n < 1e-6) {
    e1 = tangent_part(p, Vec3::UnitY());
    n = std::sqrt(std::max(ambient_inner(p.curvature(), e1, e1), 0.0));
  }
  e1 /= n;
  return {e1, left_normal(p, e1)};
}

ModelPoint move_to_frame(const TangentVector& frame, const ModelPoint& p) {
  require_same_curvature(frame.base, p, "move_to_frame");
  const Curvature kappa = p.curvature();
  const Vec3& u = frame.dir;
  const Vec3 n = left_normal(frame.base, u);
  const Vec3& x = p.coords();
  if (kappa.sign() == 0) return ModelPoint::project(kappa, frame.base.coords() + x.x() * u + x.y() * n);
  const Vec3 c = kappa.root() * frame.base.coords();
  return ModelPoint::project(kappa, x.x() * u + x.y() * n + x.z() * c);
}

ModelPoint move_from_frame(const TangentVector& frame, const ModelPoint& p) {
  require_same_curvature(frame.base, p, "move_from_frame");
  const Curvature kappa = p.curvature();
  const Vec3& u = frame.dir;
  const Vec3 n = left_normal(frame.base, u);
  if (kappa.sign() == 0) {
    const Vec3 d = p.coords() - frame.base.coords();
    return ModelPoint::project(kappa, Vec3(d.dot(u), d.dot(n), 0.0));
  }
  const Vec3 c = kappa.root() * frame.base.coords();
  const double sz = kappa.sign() > 0 ? 1.0 : -1.0;
  return ModelPoint::project(kappa, Vec3(ambient_inner(kappa, p.coords(), u), ambient_inner(kappa, p.coords(), n),
                                         sz * ambient_inner(kappa, p.coords(), c)));
}

ModelPoint rescale(const ModelPoint& p, double c) {
  if (!(c > 0.0)) throw GeometryError("rescale: factor must be positive");
  return ModelPoint::project(Curvature(p.kappa() / (c * c)), c * p.coords());
}

std::string to_string(const ModelPoint& p) {
  std::ostringstream os;
  os.precision(17);
  os << "ModelPoint(kappa=" << p.kappa() << ", [" << p.coords().x() << ", " << p.coords().y() << ", "
     << p.coords().z() << "])";
  return os.str();
}

}  // namespace lunekit
