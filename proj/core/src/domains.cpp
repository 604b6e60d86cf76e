#include "lunekit/domains.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

namespace lunekit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

// Monotone stand-in for distance: cheap to evaluate, increasing in d.
double proximity_key(Curvature kappa, const Vec3& p, const Vec3& v) {
  switch (kappa.sign()) {
    case 0:
      return (p - v).squaredNorm();
    case 1:
      return -kappa.value() * p.dot(v);
    default:
      return kappa.value() * ambient_inner(kappa, p, v);
  }
}

double key_of_distance(Curvature kappa, double d) {
  switch (kappa.sign()) {
    case 0:
      return d * d;
    case 1: {
      const double k = kappa.root();
      return k * d >= std::numbers::pi ? kInf : -std::cos(k * d);
    }
    default:
      return std::cosh(kappa.root() * d);
  }
}

// Point of the quadric on the ray through an ambient vector (central scaling).
ModelPoint central_project(Curvature kappa, const Vec3& v) {
  if (kappa.sign() >= 0) return ModelPoint::project(kappa, v);
  const double q = -ambient_inner(kappa, v, v);
  if (!(q > 0.0)) throw DomainError("central_project: vector is not timelike");
  return ModelPoint::project(kappa, v / (kappa.root() * std::sqrt(q)));
}

std::optional<std::pair<double, double>> vertical_extent(const std::vector<Vec2>& poly, double x) {
  double lo = kInf;
  double hi = -kInf;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % n];
    const double xmin = std::min(a.x(), b.x());
    const double xmax = std::max(a.x(), b.x());
    if (x < xmin || x > xmax) continue;
    if (xmax - xmin <= 0.0) {
      lo = std::min({lo, a.y(), b.y()});
      hi = std::max({hi, a.y(), b.y()});
      continue;
    }
    const double t = (x - a.x()) / (b.x() - a.x());
    const double y = a.y() + t * (b.y() - a.y());
    lo = std::min(lo, y);
    hi = std::max(hi, y);
  }
  if (!(lo <= hi)) return std::nullopt;
  return std::make_pair(lo, hi);
}

bool chart_inside(const std::vector<Vec2>& poly, const Vec2& y) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % n];
    if (cross2(b - a, y - a) < 0.0) return false;
  }
  return true;
}

int precision_bits(double tol) {
  const double t = std::max(tol, std::numeric_limits<double>::min());
  return std::clamp(static_cast<int>(std::ceil(-std::log2(t))), 10, std::numeric_limits<double>::digits / 2);
}

struct ChartOptimum {
  Vec2 y;
  double value;
};

// Maximizes a quasi-concave function over the chart polygon: a 16×16 grid
// followed by nested golden-section (Brent) search along x, then y.
ChartOptimum maximize_over_polygon(const std::vector<Vec2>& poly, const auto& f, double tol) {
  double x0 = kInf, x1 = -kInf, y0 = kInf, y1 = -kInf;
  for (const Vec2& p : poly) {
    x0 = std::min(x0, p.x());
    x1 = std::max(x1, p.x());
    y0 = std::min(y0, p.y());
    y1 = std::max(y1, p.y());
  }
  ChartOptimum best{Vec2(0.0, 0.0), -kInf};
  constexpr int kGrid = 16;
  for (int i = 0; i < kGrid; ++i) {
    for (int j = 0; j < kGrid; ++j) {
      const Vec2 y(x0 + (x1 - x0) * (i + 0.5) / kGrid, y0 + (y1 - y0) * (j + 0.5) / kGrid);
      if (!chart_inside(poly, y)) continue;
      const double v = f(y);
      if (v > best.value) best = {y, v};
    }
  }

  const int bits = precision_bits(tol);
  constexpr std::uintmax_t kMaxIter = 200;
  bool capped = false;
  auto inner = [&](double x) -> ChartOptimum {
    const auto ext = vertical_extent(poly, x);
    if (!ext) return {Vec2(x, 0.0), -kInf};
    if (ext->second - ext->first <= 0.0) {
      const Vec2 y(x, ext->first);
      return {y, f(y)};
    }
    std::uintmax_t it = kMaxIter;
    const auto r = boost::math::tools::brent_find_minima([&](double yy) { return -f(Vec2(x, yy)); }, ext->first,
                                                         ext->second, bits, it);
    if (it >= kMaxIter) capped = true;
    return {Vec2(x, r.first), -r.second};
  };
  std::uintmax_t it = kMaxIter;
  const auto r = boost::math::tools::brent_find_minima([&](double x) { return -inner(x).value; }, x0, x1, bits, it);
  if (it >= kMaxIter || capped) throw SolverError("chart optimizer: iteration cap reached");
  const ChartOptimum refined = inner(r.first);
  if (refined.value > best.value) best = refined;
  if (!std::isfinite(best.value)) throw SolverError("chart optimizer: no interior point found");
  return best;
}

}  // namespace

// ---------------------------------------------------------------------------

GnomonicChart::GnomonicChart(const ModelPoint& center, const Vec3& e1)
    : center_(center), e1_(e1), e2_(left_normal(center, e1)) {}

Vec2 GnomonicChart::to_chart(const ModelPoint& p) const {
  const Curvature kappa = center_.curvature();
  if (kappa.sign() == 0) {
    const Vec3 d = p.coords() - center_.coords();
    return {d.dot(e1_), d.dot(e2_)};
  }
  const double alpha = kappa.value() * ambient_inner(kappa, p.coords(), center_.coords());
  if (!(alpha > 1e-12)) throw DomainError("chart: point is not representable in the central projection");
  return Vec2(ambient_inner(kappa, p.coords(), e1_), ambient_inner(kappa, p.coords(), e2_)) / alpha;
}

ModelPoint GnomonicChart::from_chart(const Vec2& y) const {
  const Curvature kappa = center_.curvature();
  const Vec3 v = center_.coords() + y.x() * e1_ + y.y() * e2_;
  if (kappa.sign() < 0 && !representable(y)) throw DomainError("chart: point lies outside the Klein disk");
  return central_project(kappa, v);
}

bool GnomonicChart::representable(const Vec2& y) const {
  const Curvature kappa = center_.curvature();
  if (kappa.sign() >= 0) return true;
  return y.squaredNorm() * -kappa.value() < 1.0 - 1e-12;
}

// ---------------------------------------------------------------------------

ConvexPolyDomain::ConvexPolyDomain(Curvature kappa, std::vector<ModelPoint> boundary)
    : kappa_(kappa), boundary_(std::move(boundary)) {
  for (const ModelPoint& p : boundary_) {
    if (p.kappa() != kappa.value()) throw DomainError("ConvexPolyDomain: curvature mismatch");
  }
  if (boundary_.size() > 1 && distance(boundary_.front(), boundary_.back()) == 0.0) boundary_.pop_back();
  const std::size_t n = boundary_.size();
  if (n < 3) throw DomainError("ConvexPolyDomain: need at least three vertices");

  Vec3 sum = Vec3::Zero();
  for (const ModelPoint& p : boundary_) sum += p.coords();
  sum /= static_cast<double>(n);
  if (kappa.sign() > 0) {
    const Vec3 c = sum.normalized();
    for (std::size_t i = 0; i < n; ++i) {
      if (!(boundary_[i].coords().dot(c) * kappa.root() > 1e-9)) {
        throw DomainError("ConvexPolyDomain: boundary is not contained in an open hemisphere");
      }
    }
  }

  cumulative_.assign(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double len = distance(boundary_[i], boundary_[(i + 1) % n]);
    if (!(len > 0.0)) {
      std::ostringstream os;
      os << "ConvexPolyDomain: repeated consecutive vertices at index " << i;
      throw DomainError(os.str());
    }
    cumulative_[i + 1] = cumulative_[i] + len;
    max_edge_ = std::max(max_edge_, len);
  }
  turns_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    turns_[i] = turning_angle(boundary_[(i + n - 1) % n], boundary_[i], boundary_[(i + 1) % n]);
    if (turns_[i] < -1e-9) {
      std::ostringstream os;
      os.precision(6);
      os << "ConvexPolyDomain: boundary turns right at vertex " << i << " (turn " << turns_[i] << ")";
      throw DomainError(os.str());
    }
  }

  constexpr std::size_t kBlock = 64;
  for (std::size_t first = 0; first < n; first += kBlock) {
    EdgeBlock b{first, std::min(n, first + kBlock), 0, 0.0};
    b.center = (b.first + b.last) / 2;
    for (std::size_t j = b.first; j <= b.last; ++j) {
      b.radius = std::max(b.radius, distance(boundary_[b.center], boundary_[j % n]));
    }
    // Spherical balls stop being convex at a quarter circle.
    if (kappa.sign() > 0 && kappa.root() * b.radius > 0.45 * std::numbers::pi) b.radius = kInf;
    blocks_.push_back(b);
  }

  const ModelPoint center = central_project(kappa, sum);
  chart_ = GnomonicChart(center, tangent_basis(center).first);
  chart_polygon_.reserve(n);
  for (const ModelPoint& p : boundary_) chart_polygon_.push_back(chart_.to_chart(p));
  double winding = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = chart_polygon_[i] - chart_polygon_[(i + n - 1) % n];
    const Vec2 b = chart_polygon_[(i + 1) % n] - chart_polygon_[i];
    winding += std::atan2(cross2(a, b), a.dot(b));
  }
  if (std::abs(winding - 2.0 * std::numbers::pi) > 1e-6) {
    throw DomainError("ConvexPolyDomain: boundary does not wind once counterclockwise");
  }
}

double ConvexPolyDomain::edge_length(std::size_t i) const {
  i %= size();
  return cumulative_[i + 1] - cumulative_[i];
}

std::size_t ConvexPolyDomain::edge_at(double s) const {
  const double L = perimeter();
  s = std::fmod(s, L);
  if (s < 0.0) s += L;
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
  const std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - cumulative_.begin() - 1, 0));
  return std::min(i, size() - 1);
}

ModelPoint ConvexPolyDomain::point_at(double s) const {
  const double L = perimeter();
  s = std::fmod(s, L);
  if (s < 0.0) s += L;
  const std::size_t i = edge_at(s);
  const double t = std::clamp((s - cumulative_[i]) / edge_length(i), 0.0, 1.0);
  if (t == 0.0) return boundary_[i];
  return geodesic_lerp(boundary_[i], vertex(i + 1), t);
}

TangentVector ConvexPolyDomain::edge_tangent_at(double s) const {
  const std::size_t i = edge_at(s);
  const ModelPoint p = point_at(s);
  const ModelPoint& b = vertex(i + 1);
  if (distance(p, b) > 1e-14 * std::max(1.0, perimeter())) return direction_to(p, b);
  return {p, -direction_to(p, boundary_[i]).dir};
}

TangentVector ConvexPolyDomain::vertex_tangent(std::size_t i) const {
  const ModelPoint& v = vertex(i);
  const Vec3 in = -direction_to(v, vertex(i + size() - 1)).dir;
  const Vec3 out = direction_to(v, vertex(i + 1)).dir;
  return TangentVector{v, in + out}.normalized();
}

bool ConvexPolyDomain::contains(const ModelPoint& p) const {
  if (p.kappa() != kappa_.value()) throw DomainError("contains: curvature mismatch");
  try {
    return chart_inside(chart_polygon_, chart_.to_chart(p));
  } catch (const DomainError&) {
    return false;
  }
}

double ConvexPolyDomain::boundary_distance(const ModelPoint& p) const {
  const std::size_t n = size();
  const Vec3& x = p.coords();
  std::vector<std::pair<double, std::size_t>> order;
  order.reserve(blocks_.size());
  double best = kInf;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const double dc = distance(p, boundary_[blocks_[b].center]);
    best = std::min(best, dc);
    order.emplace_back(dc - blocks_[b].radius, b);
  }
  std::sort(order.begin(), order.end());
  for (const auto& [bound, b] : order) {
    if (bound >= best) break;
    const EdgeBlock& blk = blocks_[b];
    // Every point of an edge lies within half its length of an endpoint.
    const double key_cut = key_of_distance(kappa_, best + 0.5 * max_edge_);
    double prev_key = proximity_key(kappa_, x, boundary_[blk.first].coords());
    for (std::size_t i = blk.first; i < blk.last; ++i) {
      const double next_key = proximity_key(kappa_, x, boundary_[(i + 1) % n].coords());
      if (prev_key <= key_cut || next_key <= key_cut) {
        best = std::min(best, segment_distance(p, boundary_[i], boundary_[(i + 1) % n]));
      }
      prev_key = next_key;
    }
  }
  return best;
}

double ConvexPolyDomain::max_vertex_distance(const ModelPoint& p) const {
  std::vector<std::pair<double, std::size_t>> order;
  order.reserve(blocks_.size());
  double best = 0.0;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const double dc = distance(p, boundary_[blocks_[b].center]);
    best = std::max(best, dc);
    order.emplace_back(-(dc + blocks_[b].radius), b);
  }
  std::sort(order.begin(), order.end());
  for (const auto& [bound, b] : order) {
    if (-bound <= best) break;
    const EdgeBlock& blk = blocks_[b];
    std::size_t imax = blk.first;
    double kmax = -kInf;
    for (std::size_t i = blk.first; i < blk.last; ++i) {
      const double key = proximity_key(kappa_, p.coords(), boundary_[i].coords());
      if (key > kmax) {
        kmax = key;
        imax = i;
      }
    }
    best = std::max(best, distance(p, boundary_[imax]));
  }
  return best;
}

// ---------------------------------------------------------------------------

void validate_sampling(const ConvexPolyDomain& d, double h) {
  if (d.size() < 8) {
    std::ostringstream os;
    os << "domain has " << d.size() << " boundary vertices; at least 8 are required";
    throw DomainError(os.str());
  }
  if (d.max_edge() > 10.0 * h) {
    std::ostringstream os;
    os.precision(6);
    os << "domain edge of length " << d.max_edge() << " exceeds 10*h = " << 10.0 * h;
    throw DomainError(os.str());
  }
}

double perimeter(const ConvexPolyDomain& d) { return d.perimeter(); }

double area(const ConvexPolyDomain& d) {
  const Curvature kappa = d.curvature();
  const ModelPoint& c = d.chart().center();
  double total = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const ModelPoint& a = d.vertex(i);
    const ModelPoint& b = d.vertex(i + 1);
    if (kappa.sign() == 0) {
      const Vec3 u = a.coords() - c.coords();
      const Vec3 w = b.coords() - c.coords();
      total += 0.5 * (u.x() * w.y() - u.y() * w.x());
      continue;
    }
    const double excess = angle(c, a, b) + angle(a, b, c) + angle(b, c, a) - std::numbers::pi;
    total += excess / kappa.value();
  }
  return total;
}

double gauss_bonnet_residual(const ConvexPolyDomain& d) {
  double swerve = 0.0;
  for (double t : d.turns()) swerve += t;
  const double k = d.curvature().sign() == 0 ? 0.0 : d.curvature().value();
  return swerve + k * area(d) - 2.0 * std::numbers::pi;
}

RadiusResult inradius(const ConvexPolyDomain& d, double tol) {
  const GnomonicChart& chart = d.chart();
  const auto& poly = d.chart_polygon();
  // The optimizer only samples the closed polygon.
  const auto phi = [&](const Vec2& y) {
    if (!chart.representable(y)) return -kInf;
    return d.boundary_distance(chart.from_chart(y));
  };
  const ChartOptimum opt = maximize_over_polygon(poly, phi, tol);
  return {opt.value, chart.from_chart(opt.y)};
}

RadiusResult circumradius(const ConvexPolyDomain& d, double tol) {
  const GnomonicChart& chart = d.chart();
  const auto neg_reach = [&](const Vec2& y) {
    if (!chart.representable(y)) return -kInf;
    return -d.max_vertex_distance(chart.from_chart(y));
  };
  const ChartOptimum opt = maximize_over_polygon(d.chart_polygon(), neg_reach, tol);
  return {-opt.value, chart.from_chart(opt.y)};
}

// ---------------------------------------------------------------------------

LambdaConvexityReport is_lambda_convex(const ConvexPolyDomain& d, double lambda, double tol) {
  if (!(lambda > 0.0)) throw GeometryError("is_lambda_convex: lambda must be positive");
  const std::size_t n = d.size();
  const Curvature kappa = d.curvature();
  std::vector<double> psi(n);
  for (std::size_t i = 0; i < n; ++i) psi[i] = chord_angle(kappa, lambda, d.edge_length(i));
  std::vector<double> e(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    e[i] = d.turn(i) - psi[(i + n - 1) % n] - psi[i];
    total += e[i];
  }

  // Minimum over linear windows.
  double best = kInf;
  std::size_t bf = 0, bl = 0;
  {
    double cur = 0.0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (cur > 0.0) {
        cur = 0.0;
        start = i;
      }
      cur += e[i];
      if (cur < best) {
        best = cur;
        bf = start;
        bl = i;
      }
    }
  }
  // Windows wrapping past index 0 are complements of windows inside [1, n−2].
  {
    double cur = 0.0;
    double top = -kInf;
    std::size_t start = 1, tf = 1, tl = 1;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (cur < 0.0 || i == 1) {
        cur = 0.0;
        start = i;
      }
      cur += e[i];
      if (cur > top) {
        top = cur;
        tf = start;
        tl = i;
      }
    }
    if (std::isfinite(top) && total - top < best) {
      best = total - top;
      bf = tl + 1;
      bl = tf - 1;
    }
  }

  LambdaConvexityReport rep;
  rep.min_excess = best;
  rep.lambda_convex = best >= -tol;
  rep.first = bf;
  rep.last = bl;
  const std::size_t count = (bl + n - bf) % n + 1;
  for (std::size_t j = 0; j < count; ++j) rep.swerve += d.turn(bf + j);
  for (std::size_t j = 0; j <= count; ++j) rep.length += d.edge_length(bf + n - 1 + j);
  return rep;
}

ConvexPolyDomain lune_domain(const Lune& lune, double h) { return {lune.kappa, lune_boundary(lune, h)}; }

}  // namespace lunekit
