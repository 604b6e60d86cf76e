#include "lunekit/domains.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>

namespace lunekit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Unbounded {};
struct TooCoarse {};

struct Hit {
  std::size_t region;
  double t;
};

struct Corner {
  double phi;
  std::size_t from;
  std::size_t to;
};

class Tracer {
 public:
  Tracer(Curvature kappa, const std::vector<FLambdaRegion>& regions) : kappa_(kappa), regions_(regions) {}

  double exit(std::size_t r, double phi) const {
    const auto t = regions_[r].exit_distance(base_direction(kappa_, phi));
    return t ? *t : kInf;
  }

  Hit active(double phi) const {
    Hit best{0, kInf};
    for (std::size_t r = 0; r < regions_.size(); ++r) {
      const double t = exit(r, phi);
      if (t < best.t) best = {r, t};
    }
    if (!std::isfinite(best.t)) throw Unbounded{};
    return best;
  }

  ModelPoint point(double phi, double t) const { return exp_map(base_direction(kappa_, phi), t); }

  // Switch points of the active region between phi_a (region a) and phi_b
  // (region b), splitting whenever a third region wins at the crossing.
  void resolve(double pa, std::size_t a, double pb, std::size_t b, std::vector<Corner>& out, int depth = 0) const {
    if (a == b) return;
    if (depth > 64) throw TooCoarse{};
    const auto f = [&](double phi) {
      const double ta = exit(a, phi);
      const double tb = exit(b, phi);
      if (!std::isfinite(ta) && !std::isfinite(tb)) return 0.0;
      if (!std::isfinite(ta)) return 1.0;
      if (!std::isfinite(tb)) return -1.0;
      return ta - tb;
    };
    std::uintmax_t it = 200;
    const auto br = boost::math::tools::bisect(f, pa, pb, boost::math::tools::eps_tolerance<double>(), it);
    const double pc = 0.5 * (br.first + br.second);
    const Hit h = active(pc);
    const double ta = exit(a, pc);
    if (h.region != a && h.region != b && h.t < ta - 1e-12 * std::max(1.0, ta)) {
      resolve(pa, a, pc, h.region, out, depth + 1);
      resolve(pc, h.region, pb, b, out, depth + 1);
      return;
    }
    out.push_back({pc, a, b});
  }

 private:
  Curvature kappa_;
  const std::vector<FLambdaRegion>& regions_;
};

std::vector<ModelPoint> trace_boundary(Curvature kappa, const std::vector<FLambdaRegion>& regions, double h,
                                       int grid) {
  const Tracer tr(kappa, regions);
  std::vector<Hit> hits(static_cast<std::size_t>(grid));
  for (int j = 0; j < grid; ++j) hits[j] = tr.active(kTwoPi * j / grid);

  std::vector<Corner> corners;
  for (int j = 0; j < grid; ++j) {
    const int jn = (j + 1) % grid;
    const double pa = kTwoPi * j / grid;
    const double pb = kTwoPi * (j + 1) / grid;
    tr.resolve(pa, hits[j].region, pb, hits[jn].region, corners);
  }

  std::vector<ModelPoint> ring;
  if (corners.empty()) {
    const FLambdaRegion& reg = regions[hits[0].region];
    if (!reg.compact()) throw Unbounded{};
    const ModelPoint start = tr.point(0.0, hits[0].t);
    const double S = f_lambda_perimeter(kappa, reg.lambda());
    const int n = std::max(8, static_cast<int>(std::ceil(S / h)));
    const ConstantCurvatureArc arc = reg.boundary_arc(start, 0.0, S);
    for (int i = 0; i < n; ++i) ring.push_back(arc.point_unchecked(S * i / n));
    return ring;
  }

  for (std::size_t c = 0; c < corners.size(); ++c) {
    const Corner& from = corners[c];
    const Corner& to = corners[(c + 1) % corners.size()];
    if (from.to != to.from) throw TooCoarse{};
    const FLambdaRegion& reg = regions[from.to];
    const ModelPoint p = tr.point(from.phi, tr.exit(from.to, from.phi));
    const ModelPoint q = tr.point(to.phi, tr.exit(to.from, to.phi));
    const double S = reg.boundary_arclength(p, q);
    if (!(S > 0.0)) {
      ring.push_back(p);
      continue;
    }
    const int n = std::max(1, static_cast<int>(std::ceil(S / h)));
    const ConstantCurvatureArc arc = reg.boundary_arc(p, 0.0, S);
    ring.push_back(p);
    for (int i = 1; i < n; ++i) ring.push_back(arc.point_unchecked(S * i / n));
  }

  // A region active only between grid angles would leave samples outside it.
  for (const ModelPoint& x : ring) {
    for (const FLambdaRegion& reg : regions) {
      if (reg.signed_distance(x) > 1e-9) throw TooCoarse{};
    }
  }
  return ring;
}

}  // namespace

ConvexPolyDomain generate_lambda_convex(Curvature kappa, double lambda, std::uint64_t seed, int n_supports,
                                        double h) {
  if (n_supports < 2) throw GeometryError("generate_lambda_convex: n_supports must be at least 2");
  if (!(h > 0.0)) throw GeometryError("generate_lambda_convex: sampling step must be positive");
  const CurveKind kind = classify(kappa, lambda);
  double scale = 0.0;
  switch (kind) {
    case CurveKind::Circle:
      scale = *f_lambda_radius(kappa, lambda);
      break;
    case CurveKind::Horocycle:
      scale = 1.0 / kappa.root();
      break;
    case CurveKind::Hypercycle:
      scale = hypercycle_axis_distance(kappa, lambda);
      break;
  }

  std::mt19937_64 rng(seed);
  const auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  const ModelPoint o = base_point(kappa);

  for (int attempt = 0; attempt < 100; ++attempt) {
    const double theta0 = kTwoPi * uniform();
    std::vector<FLambdaRegion> regions;
    const auto add = [&](double theta, double t) {
      const ModelPoint s = exp_map(base_direction(kappa, theta), t);
      regions.push_back(f_lambda_supporting_at(s, direction_to(s, o), lambda));
    };
    if (n_supports == 2) {
      const double t = scale * (0.1 + 0.85 * uniform());
      add(theta0, t);
      add(theta0 + std::numbers::pi, t);
    } else {
      for (int i = 0; i < n_supports; ++i) {
        const double theta = theta0 + kTwoPi * (i + 0.8 * (uniform() - 0.5)) / n_supports;
        add(theta, scale * (0.2 + 0.75 * uniform()));
      }
    }
    for (int grid = 1024; grid <= (1 << 16); grid *= 4) {
      try {
        ConvexPolyDomain d(kappa, trace_boundary(kappa, regions, h, grid));
        if (!is_lambda_convex(d, lambda, 1e-9).lambda_convex) break;
        return d;
      } catch (const Unbounded&) {
        break;
      } catch (const TooCoarse&) {
        continue;
      } catch (const DomainError&) {
        break;
      }
    }
  }
  throw GenerationError("generate_lambda_convex: no bounded lambda-convex intersection after 100 draws");
}

}  // namespace lunekit
