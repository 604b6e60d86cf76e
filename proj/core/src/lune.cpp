#include "lunekit/lune.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <sstream>

namespace lunekit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw GeometryError("lambda must be positive and finite");
}

double sq(double x) { return x * x; }

// sin(x)/x and sinh(x)/x scaled: f(L, μ) = sin(Lμ/8)/μ, well defined as μ → 0.
double sin_over(double L, double mu) { return mu == 0.0 ? L / 8.0 : std::sin(L * mu / 8.0) / mu; }
double sinh_over(double L, double nu) { return nu == 0.0 ? L / 8.0 : std::sinh(L * nu / 8.0) / nu; }

double rho_unchecked(RhoBranch b, Curvature kappa, double lambda, double L) {
  const double k = kappa.root();
  switch (b) {
    case RhoBranch::Eq2: {
      const double mu = std::sqrt(lambda * lambda + k * k);
      const double a = k / lambda;
      const double c = std::cos(L * mu / 4.0);
      // atan(a) − atan(a c) = atan2(a(1 − c), 1 + a² c)
      return std::atan2(2.0 * a * sq(std::sin(L * mu / 8.0)), 1.0 + a * a * c) / k;
    }
    case RhoBranch::Eq3:
      return 2.0 * sq(std::sin(L * lambda / 8.0)) / lambda;
    case RhoBranch::Eq4: {
      const double mu = std::sqrt((lambda - k) * (lambda + k));
      const double c = std::cos(L * mu / 4.0);
      const double s = sin_over(L, mu);
      const double t1 = std::log1p(2.0 * k * (lambda + k) * s * s);
      const double t2 = std::log1p(2.0 * k * sq(std::sin(L * mu / 8.0)) / (lambda + k * c));
      return (t1 + t2) / (2.0 * k);
    }
    case RhoBranch::Eq5:
      return std::log1p(L * L * k * k / 16.0) / (2.0 * k);
    case RhoBranch::Eq7: {
      const double nu = std::sqrt((k - lambda) * (k + lambda));
      const double s = sinh_over(L, nu);
      const double t1 = std::log1p(2.0 * k * (k + lambda) * s * s);
      const double t2 = std::log1p(2.0 * k * sq(std::sinh(L * nu / 8.0)) / (k + lambda));
      return (t1 - t2) / (2.0 * k);
    }
  }
  return 0.0;
}

double y_of(const ConstantCurvatureArc& arc, double s) { return arc.point_unchecked(s).coords().y(); }

struct Support {
  ModelPoint s_star;
  TangentVector inward;
  FLambdaRegion region;
  ConstantCurvatureArc arc;
};

// F_λ supporting at s* = exp_m(−e_y, h) with inward normal towards m, and its
// boundary traversed counterclockwise from s*.
Support support_at_depth(Curvature kappa, double lambda, double h) {
  const ModelPoint m = base_point(kappa);
  const ModelPoint s = exp_map(base_direction(kappa, -0.5 * std::numbers::pi), h);
  const TangentVector inward = direction_to(s, m);
  FLambdaRegion region = f_lambda_supporting_at(s, inward, lambda);
  const TangentVector t0 = TangentVector{s, -left_normal(s, inward.dir)}.normalized();
  return {s, inward, region, ConstantCurvatureArc(t0, lambda, 0.0, 0.0)};
}

// Arclength from s* to the first crossing of the line y = 0.
double crossing_length(Curvature kappa, double lambda, double h) {
  if (h <= 0.0) return 0.0;
  const Support sup = support_at_depth(kappa, lambda, h);
  const auto f = [&](double s) { return y_of(sup.arc, s); };
  double hi = 0.0;
  if (sup.region.kind() == CurveKind::Circle) {
    hi = 0.5 * f_lambda_perimeter(kappa, lambda);
    if (!(f(hi) > 0.0)) return kInf;
  } else {
    hi = 1.0;
    while (!(f(hi) > 0.0)) {
      hi *= 2.0;
      if (hi > 1e6 || !std::isfinite(f(hi))) return kInf;
    }
  }
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(f, 0.0, hi, f(0.0), f(hi),
                                                   boost::math::tools::eps_tolerance<double>(), iters);
  return 0.5 * (r.first + r.second);
}

}  // namespace

std::string_view branch_name(RhoBranch b) {
  switch (b) {
    case RhoBranch::Eq2:
      return "eq2";
    case RhoBranch::Eq3:
      return "eq3";
    case RhoBranch::Eq4:
      return "eq4";
    case RhoBranch::Eq5:
      return "eq5";
    case RhoBranch::Eq7:
      return "eq7";
  }
  return "?";
}

RhoBranch rho_branch(Curvature kappa, double lambda) {
  require_positive_lambda(lambda);
  switch (kappa.sign()) {
    case 1:
      return RhoBranch::Eq2;
    case 0:
      return RhoBranch::Eq3;
    default:
      switch (classify(kappa, lambda)) {
        case CurveKind::Circle:
          return RhoBranch::Eq4;
        case CurveKind::Horocycle:
          return RhoBranch::Eq5;
        case CurveKind::Hypercycle:
          return RhoBranch::Eq7;
      }
  }
  return RhoBranch::Eq3;
}

bool RhoDomain::bounded() const { return std::isfinite(upper); }

bool RhoDomain::contains(double L) const {
  if (!(L >= 0.0) || !std::isfinite(L)) return false;
  return !bounded() || L <= upper * (1.0 + 1e-12);
}

bool RhoDomain::interior(double L) const { return L > 0.0 && std::isfinite(L) && (!bounded() || L < upper); }

std::string RhoDomain::describe() const {
  std::ostringstream os;
  os.precision(12);
  if (bounded()) {
    os << "[0, " << upper << "]";
  } else {
    os << "[0, inf)";
  }
  return os.str();
}

RhoDomain rho_domain(Curvature kappa, double lambda) {
  require_positive_lambda(lambda);
  return {kappa, lambda, f_lambda_perimeter(kappa, lambda)};
}

double rho(Curvature kappa, double lambda, double L) {
  const RhoDomain dom = rho_domain(kappa, lambda);
  if (!dom.contains(L)) {
    std::ostringstream os;
    os.precision(12);
    os << "L = " << L << " is outside I_lambda = " << dom.describe();
    throw OutOfDomainError(os.str());
  }
  if (L == 0.0) return 0.0;
  if (dom.bounded()) L = std::min(L, dom.upper);
  return rho_unchecked(rho_branch(kappa, lambda), kappa, lambda, L);
}

double rho_derivative(Curvature kappa, double lambda, double L) {
  const RhoDomain dom = rho_domain(kappa, lambda);
  if (!dom.interior(L)) {
    std::ostringstream os;
    os.precision(12);
    os << "rho_derivative: L = " << L << " is not interior to I_lambda = " << dom.describe();
    throw OutOfDomainError(os.str());
  }
  const double k = kappa.root();
  switch (rho_branch(kappa, lambda)) {
    case RhoBranch::Eq2: {
      const double mu = std::sqrt(lambda * lambda + k * k);
      const double a = k / lambda;
      const double c = std::cos(L * mu / 4.0);
      return a * std::sin(L * mu / 4.0) * (mu / 4.0) / (1.0 + a * a * c * c) / k;
    }
    case RhoBranch::Eq3:
      return std::sin(L * lambda / 4.0) / 4.0;
    case RhoBranch::Eq4: {
      const double mu = std::sqrt((lambda - k) * (lambda + k));
      const double a = k / lambda;
      const double c = std::cos(L * mu / 4.0);
      const double s = sin_over(L, mu);
      const double s4 = mu == 0.0 ? L / 4.0 : std::sin(L * mu / 4.0) / mu;
      return 0.25 * s4 / ((1.0 / (lambda + k) + 2.0 * k * s * s) * (1.0 + a * c));
    }
    case RhoBranch::Eq5:
      return (L * k / 16.0) / (1.0 + L * L * k * k / 16.0);
    case RhoBranch::Eq7: {
      const double nu = std::sqrt((k - lambda) * (k + lambda));
      const double C = std::cosh(L * nu / 4.0);
      const double s = sinh_over(L, nu);
      const double s4 = nu == 0.0 ? L / 4.0 : std::sinh(L * nu / 4.0) / nu;
      return (lambda / k) * 0.25 * s4 / ((1.0 / (k + lambda) + 2.0 * k * s * s) * (C + lambda / k));
    }
  }
  return 0.0;
}

double rho_hypercycle_variant(Curvature kappa, double lambda, double L) {
  if (rho_branch(kappa, lambda) != RhoBranch::Eq7) {
    throw GeometryError("rho_hypercycle_variant: (kappa, lambda) is not a hypercycle pair");
  }
  if (!(L >= 0.0)) throw OutOfDomainError("rho_hypercycle_variant: L must be non-negative");
  const double k = kappa.root();
  const double C = std::cosh(L * std::sqrt(k * k - lambda * lambda) / 4.0);
  const double num = (k + lambda) * (C * C - lambda * lambda / (k * k));
  const double den = (k - lambda) * sq(C + 1.0);
  return std::log(num / den) / (2.0 * k);
}

// ---------------------------------------------------------------------------

Lune build_lune(Curvature kappa, double lambda, double L) {
  const RhoDomain dom = rho_domain(kappa, lambda);
  if (!dom.interior(L)) {
    std::ostringstream os;
    os.precision(12);
    os << "build_lune: L = " << L << " must lie strictly inside I_lambda = " << dom.describe();
    throw OutOfDomainError(os.str());
  }
  const CurveKind kind = classify(kappa, lambda);
  const double k = kappa.root();

  // 4·ℓ(h) − L is increasing in the depth h of the arc midpoint below m.
  const auto excess = [&](double h) {
    const double ell = crossing_length(kappa, lambda, h);
    return std::isfinite(ell) ? 4.0 * ell - L : kInf;
  };
  double h_hi = 0.0;
  switch (kind) {
    case CurveKind::Circle:
      h_hi = *f_lambda_radius(kappa, lambda);
      break;
    case CurveKind::Hypercycle:
      h_hi = hypercycle_axis_distance(kappa, lambda);
      break;
    case CurveKind::Horocycle:
      h_hi = 1.0 / k;
      while (excess(h_hi) <= 0.0) {
        h_hi *= 2.0;
        if (h_hi * k > 300.0) throw GeometryError("build_lune: horocycle lune too long to construct");
      }
      break;
  }
  const auto sign_excess = [&](double h) {
    if (h <= 0.0) return -L;
    if (h >= h_hi && kind != CurveKind::Horocycle) return kInf;
    return excess(h);
  };
  std::uintmax_t iters = 80;
  const auto bracket = boost::math::tools::bisect(sign_excess, 0.0, h_hi,
                                                  boost::math::tools::eps_tolerance<double>(), iters);
  const double h = 0.5 * (bracket.first + bracket.second);

  const ModelPoint m = base_point(kappa);
  const Support sup = support_at_depth(kappa, lambda, h);
  const double ell = 0.25 * L;
  const ConstantCurvatureArc arc1(sup.arc.frame(), lambda, -ell, ell);
  const TangentVector frame2 = reflect_tangent(m, sup.arc.frame()).normalized();
  const ConstantCurvatureArc arc2(frame2, lambda, -ell, ell);
  const ModelPoint s2 = frame2.base;
  const FLambdaRegion region2 = f_lambda_supporting_at(s2, direction_to(s2, m), lambda);

  return Lune{kappa,
              lambda,
              L,
              m,
              base_direction(kappa, -0.5 * std::numbers::pi),
              {arc1, arc2},
              {arc1.point(ell), arc1.point(-ell)},
              {sup.s_star, s2},
              {sup.region, region2}};
}

double lune_inradius_numeric(const Lune& lune, double tol) {
  const auto& arc = lune.arcs[0];
  const auto f = [&](double s) { return distance(lune.center, arc.point_unchecked(s)); };
  const int bits = std::clamp(static_cast<int>(std::ceil(-std::log2(std::max(tol, 1e-300)))), 8,
                              std::numeric_limits<double>::digits / 2);
  std::uintmax_t iters = 500;
  const auto r = boost::math::tools::brent_find_minima(f, arc.s_min(), arc.s_max(), bits, iters);
  return std::min({r.second, f(arc.s_min()), f(arc.s_max())});
}

double lune_corner_turn(const Lune& lune) {
  const ModelPoint& p = lune.corners[0];
  const Vec3 incoming = tangent_part(p, lune.arcs[0].tangent(lune.arcs[0].s_max()).dir);
  const Vec3 outgoing = tangent_part(p, lune.arcs[1].tangent(lune.arcs[1].s_min()).dir);
  return signed_angle(p, incoming, outgoing);
}

double lune_area(const Lune& lune) {
  if (lune.kappa.sign() == 0) {
    const double R = 1.0 / lune.lambda;
    const double theta = lune.length * lune.lambda / 4.0;
    return R * R * (2.0 * theta - std::sin(2.0 * theta));
  }
  const double turn = lune_corner_turn(lune);
  return (2.0 * std::numbers::pi - lune.lambda * lune.length - 2.0 * turn) / lune.kappa.value();
}

double lune_circumradius(const Lune& lune) { return distance(lune.center, lune.corners[0]); }

std::vector<ModelPoint> lune_boundary(const Lune& lune, double h) {
  if (!(h > 0.0)) throw GeometryError("lune_boundary: step must be positive");
  const int n = std::max(2, static_cast<int>(std::ceil(0.5 * lune.length / h)));
  std::vector<ModelPoint> ring = lune.arcs[0].sample(n);
  const std::vector<ModelPoint> second = lune.arcs[1].sample(n);
  ring.insert(ring.end(), second.begin() + 1, second.end() - 1);
  return ring;
}

double lune_signed_distance(const Lune& lune, const ModelPoint& p) {
  return std::max(lune.regions[0].signed_distance(p), lune.regions[1].signed_distance(p));
}

// ---------------------------------------------------------------------------

PhaseTransitionReport phase_transition_check(double k, double L, const std::vector<double>& eps_sequence,
                                             double kappa_eps, double threshold) {
  if (!(k > 0.0) || !(L > 0.0)) throw GeometryError("phase_transition_check: k and L must be positive");
  PhaseTransitionReport rep;
  rep.k = k;
  rep.L = L;
  rep.threshold = threshold;
  rep.kappa_eps = kappa_eps;
  const Curvature kappa(-k * k);
  const double base = rho(kappa, k, L);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (double eps : eps_sequence) {
    if (!(eps > 0.0 && eps < 0.5)) throw GeometryError("phase_transition_check: eps must lie in (0, 1/2)");
    PhaseTransitionRow row{eps, nan, nan};
    const double lp = k * (1.0 + eps);
    if (rho_domain(kappa, lp).contains(L)) row.gap_circle = std::abs(rho(kappa, lp, L) - base);
    row.gap_hypercycle = std::abs(rho(kappa, k * (1.0 - eps), L) - base);
    rep.rows.push_back(row);
  }
  // The flat limit only exists while L stays inside I_λ for κ = 0.
  if (rho_domain(Curvature(0.0), k).contains(L)) {
    const double flat = rho(Curvature(0.0), k, L);
    rep.gap_kappa_plus = rho_domain(Curvature(kappa_eps), k).contains(L)
                             ? std::abs(rho(Curvature(kappa_eps), k, L) - flat)
                             : nan;
    rep.gap_kappa_minus = std::abs(rho(Curvature(-kappa_eps), k, L) - flat);
  } else {
    rep.gap_kappa_plus = nan;
    rep.gap_kappa_minus = nan;
  }

  const auto non_increasing = [](double prev, double next) {
    return std::isnan(prev) || std::isnan(next) || next <= prev;
  };
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    rep.monotone = rep.monotone && non_increasing(rep.rows[i - 1].gap_circle, rep.rows[i].gap_circle) &&
                   non_increasing(rep.rows[i - 1].gap_hypercycle, rep.rows[i].gap_hypercycle);
  }
  const auto below = [&](double g) { return std::isnan(g) || g < threshold; };
  rep.below_threshold = below(rep.gap_kappa_plus) && below(rep.gap_kappa_minus);
  if (!rep.rows.empty()) {
    rep.below_threshold = rep.below_threshold && below(rep.rows.back().gap_circle) &&
                          below(rep.rows.back().gap_hypercycle);
  }
  return rep;
}

}  // namespace lunekit
