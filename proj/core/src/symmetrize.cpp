#include "lunekit/domains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

namespace lunekit {

namespace {

double unsigned_angle(const ModelPoint& base, const Vec3& u, const Vec3& w) {
  return std::abs(signed_angle(base, u, w));
}

double wrap(double s, double L) {
  s = std::fmod(s, L);
  return s < 0.0 ? s + L : s;
}

// Vertex index at arclength s, if s sits on a vertex.
std::optional<std::size_t> vertex_at(const ConvexPolyDomain& d, double s) {
  const double L = d.perimeter();
  s = wrap(s, L);
  const auto& cum = d.cumulative_arclength();
  const double eps = 1e-12 * L;
  const std::size_t i = d.edge_at(s);
  if (std::abs(s - cum[i]) <= eps) return i;
  if (std::abs(cum[i + 1] - s) <= eps) return (i + 1) % d.size();
  return std::nullopt;
}

enum class TangentRule { Bisector, Edge };

TangentVector tangent_at(const ConvexPolyDomain& d, double s, TangentRule rule) {
  if (rule == TangentRule::Bisector) {
    if (const auto v = vertex_at(d, s)) return d.vertex_tangent(*v);
  }
  return d.edge_tangent_at(s);
}

double defect(const ModelPoint& x, const Vec3& tx, const ModelPoint& y, const Vec3& ty) {
  const double alpha = unsigned_angle(x, tx, direction_to(x, y).dir);
  const double beta = unsigned_angle(y, -ty, direction_to(y, x).dir);
  return alpha + beta - std::numbers::pi;
}

double defect_at(const ConvexPolyDomain& d, double s, TangentRule rule) {
  const double L = d.perimeter();
  const TangentVector tx = tangent_at(d, s, rule);
  const TangentVector ty = tangent_at(d, s + 0.5 * L, rule);
  return defect(tx.base, tx.dir, ty.base, ty.dir);
}

// Vertices strictly between arclength positions a and b (moving forward).
std::pair<std::size_t, std::size_t> interior_range(const ConvexPolyDomain& d, double a, double b) {
  const std::size_t n = d.size();
  const std::size_t first = (d.edge_at(wrap(a, d.perimeter())) + 1) % n;
  std::size_t end = 0;
  if (const auto v = vertex_at(d, b)) {
    end = *v;
  } else {
    end = (d.edge_at(wrap(b, d.perimeter())) + 1) % n;
  }
  return {first, end};
}

double polyline_length(const ConvexPolyDomain& d, const ModelPoint& a, std::pair<std::size_t, std::size_t> range,
                       const ModelPoint& b) {
  double len = 0.0;
  ModelPoint prev = a;
  for (std::size_t i = range.first; i != range.second; i = (i + 1) % d.size()) {
    len += distance(prev, d.vertex(i));
    prev = d.vertex(i);
  }
  return len + distance(prev, b);
}

BalancedChord make_chord(const ConvexPolyDomain& d, double s, const TangentVector& tx, const TangentVector& ty) {
  const double L = d.perimeter();
  BalancedChord c;
  c.s_p = wrap(s, L);
  c.s_q = wrap(s + 0.5 * L, L);
  c.p_star = tx.base;
  c.q_star = ty.base;
  c.m = midpoint(c.p_star, c.q_star);
  c.u_p = tx;
  c.u_q = ty;
  c.g = defect(tx.base, tx.dir, ty.base, ty.dir);
  c.arc1 = interior_range(d, s, s + 0.5 * L);
  c.arc2 = interior_range(d, s + 0.5 * L, s + L);
  c.arc_lengths = {polyline_length(d, c.p_star, c.arc1, c.q_star), polyline_length(d, c.q_star, c.arc2, c.p_star)};
  return c;
}

// Direction at vertex x for which α_x + β_y = π, given the tangent at y.
TangentVector balancing_tangent(const ModelPoint& x, const TangentVector& ty) {
  const double beta = unsigned_angle(ty.base, -ty.dir, direction_to(ty.base, x).dir);
  return rotate(direction_to(x, ty.base), -(std::numbers::pi - beta));
}

// t lies between the incoming and outgoing edge directions at vertex i.
bool in_cone(const ConvexPolyDomain& d, std::size_t i, const TangentVector& t) {
  const std::size_t n = d.size();
  const ModelPoint& x = d.vertex(i);
  const Vec3 in = -direction_to(x, d.vertex(i + n - 1)).dir;
  const Vec3 out = direction_to(x, d.vertex(i + 1)).dir;
  const double a = signed_angle(x, in, t.dir);
  return a >= -1e-12 && a <= signed_angle(x, in, out) + 1e-12;
}

}  // namespace

double balance_defect(const ConvexPolyDomain& d, double s) { return defect_at(d, s, TangentRule::Bisector); }

BalancedChord balanced_chord(const ConvexPolyDomain& d, const ModelPoint& o) {
  if (!d.contains(o)) throw DomainError("balanced_chord: o is not an interior point");
  const double L = d.perimeter();

  std::size_t i0 = 0;
  double far = -1.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double r = distance(o, d.vertex(i));
    if (r > far) {
      far = r;
      i0 = i;
    }
  }
  const double s0 = d.cumulative_arclength()[i0];
  {
    const TangentVector ty = tangent_at(d, s0 + 0.5 * L, TangentRule::Bisector);
    const TangentVector tx = balancing_tangent(d.vertex(i0), ty);
    if (in_cone(d, i0, tx)) return make_chord(d, s0, tx, ty);
  }

  // With right-continuous edge tangents g(s + L/2) = −g(s), so [s0, s0 + L/2]
  // brackets a sign change.
  const auto g = [&](double s) { return defect_at(d, s, TangentRule::Edge); };
  double lo = s0;
  double hi = s0 + 0.5 * L;
  const double glo = g(lo);
  if (glo == 0.0) return make_chord(d, lo, d.edge_tangent_at(lo), d.edge_tangent_at(lo + 0.5 * L));
  const bool lo_positive = glo > 0.0;
  for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (gm == 0.0) {
      lo = hi = mid;
      break;
    }
    ((gm > 0.0) == lo_positive ? lo : hi) = mid;
  }
  for (double s : {hi, lo}) {
    if (std::abs(g(s)) <= 1e-9) return make_chord(d, s, d.edge_tangent_at(s), d.edge_tangent_at(s + 0.5 * L));
  }

  // The sign change is a jump: one endpoint of the chord sits on a vertex.
  // Pick the supporting direction in that vertex's cone that balances g.
  const auto& cum = d.cumulative_arclength();
  const std::size_t ix = d.edge_at(wrap(hi, L));
  const std::size_t iy = d.edge_at(wrap(hi + 0.5 * L, L));
  const double dx = std::abs(wrap(hi, L) - cum[ix]);
  const double dy = std::abs(wrap(hi + 0.5 * L, L) - cum[iy]);
  if (dx <= dy) {
    const double s = cum[ix];
    const TangentVector ty = d.edge_tangent_at(s + 0.5 * L);
    const TangentVector tx = balancing_tangent(d.vertex(ix), ty);
    if (!in_cone(d, ix, tx)) throw SolverError("balanced_chord: root not bracketed");
    return make_chord(d, s, tx, ty);
  }
  const double s = cum[iy] - 0.5 * L;
  const TangentVector tx = d.edge_tangent_at(s);
  const ModelPoint y = d.vertex(iy);
  const double alpha = unsigned_angle(tx.base, tx.dir, direction_to(tx.base, y).dir);
  const TangentVector back = rotate(direction_to(y, tx.base), std::numbers::pi - alpha);
  const TangentVector ty{y, -back.dir};
  const BalancedChord c = make_chord(d, s, tx, ty);
  if (!in_cone(d, iy, ty) || std::abs(c.g) > 1e-6) throw SolverError("balanced_chord: root not bracketed");
  return c;
}

ConvexPolyDomain reflect_arc(const ConvexPolyDomain& d, const BalancedChord& chord) {
  std::vector<ModelPoint> half{chord.p_star};
  const std::size_t n = d.size();
  for (std::size_t i = chord.arc1.first; i != chord.arc1.second; i = (i + 1) % n) half.push_back(d.vertex(i));
  const std::size_t inner = half.size() - 1;
  std::vector<ModelPoint> ring = half;
  ring.push_back(chord.q_star);
  for (std::size_t j = 1; j <= inner; ++j) ring.push_back(point_reflection(chord.m, half[j]));
  return ConvexPolyDomain(d.curvature(), std::move(ring));
}

RollingReport rolling_check(const ConvexPolyDomain& d, double lambda, int n_samples, double tol) {
  if (n_samples < 1) throw GeometryError("rolling_check: need at least one sample");
  RollingReport rep;
  rep.max_violation = -std::numeric_limits<double>::infinity();
  const std::size_t n = d.size();
  const std::size_t samples = std::min<std::size_t>(static_cast<std::size_t>(n_samples), n);
  for (std::size_t j = 0; j < samples; ++j) {
    const std::size_t i = j * n / samples;
    const TangentVector t = d.vertex_tangent(i);
    const TangentVector inward{t.base, left_normal(t.base, t.dir)};
    const FLambdaRegion f = f_lambda_supporting_at(t.base, inward.normalized(), lambda);
    for (std::size_t v = 0; v < n; ++v) {
      const double sd = f.signed_distance(d.vertex(v));
      if (sd > rep.max_violation) {
        rep.max_violation = sd;
        rep.worst_sample = i;
        rep.worst_vertex = v;
      }
    }
  }
  rep.passed = rep.max_violation <= tol;
  return rep;
}

}  // namespace lunekit
