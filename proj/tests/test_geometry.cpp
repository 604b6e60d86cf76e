#include <gtest/gtest.h>

#include <boost/numeric/odeint.hpp>

#include "lunekit/geometry.hpp"
#include "support.hpp"

using namespace lunekit;
using lunekit::test::pi;

namespace {

const Curvature kFlat(0.0);
const Curvature kSphere(1.0);
const Curvature kHyp(-1.0);

ModelPoint hyp(double x, double y, double z) { return ModelPoint::from_coords(kHyp, Vec3(x, y, z)); }

TEST(Distance, PlanarPythagoras) {
  EXPECT_NEAR(distance(ModelPoint::planar(0, 0), ModelPoint::planar(3, 4)), 5.0, 1e-14);
}

TEST(Distance, QuarterGreatCircle) {
  const ModelPoint north = base_point(kSphere);
  const ModelPoint equator = ModelPoint::from_coords(kSphere, Vec3(1, 0, 0));
  EXPECT_NEAR(distance(north, equator), pi / 2, 1e-14);
}

TEST(Distance, HyperboloidUnitStep) {
  const ModelPoint o = base_point(kHyp);
  const ModelPoint p = hyp(std::sinh(1.0), 0, std::cosh(1.0));
  EXPECT_NEAR(distance(o, p), 1.0, 1e-13);

  // Arclength of the curve t ↦ (sinh t, 0, cosh t) by quadrature.
  double len = 0.0;
  const int n = 2000;
  for (int i = 0; i < n; ++i) {
    const double t = (i + 0.5) / n;
    const double speed2 = std::cosh(t) * std::cosh(t) - std::sinh(t) * std::sinh(t);
    len += std::sqrt(speed2) / n;
  }
  EXPECT_NEAR(distance(o, p), len, 1e-12);
}

TEST(Distance, RejectsMismatchedCurvature) {
  EXPECT_THROW(distance(base_point(kFlat), base_point(kSphere)), GeometryError);
}

TEST(Distance, RejectsAntipodes) {
  const ModelPoint n = base_point(kSphere);
  const ModelPoint s = ModelPoint::from_coords(kSphere, Vec3(0, 0, -1));
  EXPECT_THROW(distance(n, s), GeometryError);
}

TEST(ExpMap, Planar) {
  const ModelPoint p = exp_map(base_direction(kFlat, 0.0), 2.0);
  EXPECT_NEAR((p.coords() - Vec3(2, 0, 0)).norm(), 0.0, 1e-14);
}

TEST(ExpMap, SphereQuarterTurnHitsEquator) {
  for (double theta : {0.0, 0.7, 2.0, 4.5}) {
    const ModelPoint p = exp_map(base_direction(kSphere, theta), pi / 2);
    EXPECT_NEAR(p.coords().z(), 0.0, 1e-14);
  }
}

TEST(ExpMap, Hyperbolic) {
  const ModelPoint p = exp_map(base_direction(kHyp, 0.0), 1.0);
  EXPECT_NEAR((p.coords() - Vec3(std::sinh(1.0), 0, std::cosh(1.0))).norm(), 0.0, 1e-13);
  EXPECT_NEAR(distance(base_point(kHyp), p), 1.0, 1e-12);
}

TEST(ExpMap, RejectsUnnormalized) {
  TangentVector v = base_direction(kFlat, 0.0);
  v.dir *= 2.0;
  EXPECT_THROW(exp_map(v, 1.0), GeometryError);
  EXPECT_THROW(exp_map(base_direction(kFlat, 0.0), -1.0), GeometryError);
  EXPECT_THROW(exp_map(base_direction(kSphere, 0.0), 4.0), GeometryError);
}

TEST(Angle, Planar) {
  const auto P = ModelPoint::planar;
  EXPECT_NEAR(angle(P(0, 0), P(1, 0), P(0, 1)), pi / 2, 1e-14);
  EXPECT_NEAR(angle(P(0, 0), P(1, 0), P(2, 0)), 0.0, 1e-14);
  EXPECT_THROW(angle(P(0, 0), P(0, 0), P(1, 0)), GeometryError);
}

TEST(Angle, HyperbolicEquilateral) {
  const ModelPoint a = base_point(kHyp);
  const ModelPoint b = exp_map(base_direction(kHyp, 0.0), 1.0);
  // Apex direction with |b apex| = 1, by bisection.
  double lo = 0.1, hi = 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const ModelPoint cm = exp_map(base_direction(kHyp, mid), 1.0);
    (distance(b, cm) < 1.0 ? lo : hi) = mid;
  }
  const ModelPoint apex = exp_map(base_direction(kHyp, lo), 1.0);
  const double ch = std::cosh(1.0), sh = std::sinh(1.0);
  const double expected = std::acos(ch * (ch - 1.0) / (sh * sh));
  EXPECT_NEAR(angle(a, b, apex), expected, 1e-10);
  EXPECT_NEAR(angle(b, a, apex), expected, 1e-10);
  EXPECT_LT(expected, pi / 3);
}

TEST(PointReflection, Examples) {
  const ModelPoint r = point_reflection(base_point(kFlat), ModelPoint::planar(1, 2));
  EXPECT_NEAR((r.coords() - Vec3(-1, -2, 0)).norm(), 0.0, 1e-14);

  const ModelPoint x = hyp(std::sinh(1.0), 0, std::cosh(1.0));
  const ModelPoint rx = point_reflection(base_point(kHyp), x);
  EXPECT_NEAR((rx.coords() - Vec3(-std::sinh(1.0), 0, std::cosh(1.0))).norm(), 0.0, 1e-13);
  // Same point by continuing the geodesic x → m for twice the distance.
  const ModelPoint via_exp = exp_map(direction_to(x, base_point(kHyp)), 2.0);
  EXPECT_NEAR((rx.coords() - via_exp.coords()).norm(), 0.0, 1e-12);
}

TEST(PointReflection, FixesCenterAndIsInvolution) {
  std::mt19937_64 rng(7);
  for (double k : {-1.0, 0.0, 1.0}) {
    const Curvature K(k);
    for (int i = 0; i < 100; ++i) {
      const ModelPoint m = test::random_point(K, rng, 0.7);
      const ModelPoint x = test::random_point(K, rng, 0.7);
      EXPECT_NEAR((point_reflection(m, m).coords() - m.coords()).norm(), 0.0, 1e-12);
      EXPECT_NEAR((point_reflection(m, point_reflection(m, x)).coords() - x.coords()).norm(), 0.0, 1e-10);
      EXPECT_NEAR(distance(midpoint(x, point_reflection(m, x)), m), 0.0, 1e-7);
    }
  }
}

TEST(PointReflection, RejectsAntipode) {
  const ModelPoint s = ModelPoint::from_coords(kSphere, Vec3(0, 0, -1));
  EXPECT_THROW(point_reflection(base_point(kSphere), s), GeometryError);
}

TEST(GeneralizedTrig, Examples) {
  auto t = generalized_trig(kFlat, 3.0);
  EXPECT_DOUBLE_EQ(t.sn, 3.0);
  EXPECT_DOUBLE_EQ(t.cs, 1.0);
  t = generalized_trig(kSphere, pi / 2);
  EXPECT_NEAR(t.sn, 1.0, 1e-15);
  EXPECT_NEAR(t.cs, 0.0, 1e-15);
  t = generalized_trig(Curvature(-4.0), 1.0);
  EXPECT_NEAR(t.sn, std::sinh(2.0) / 2, 1e-14);
  EXPECT_NEAR(t.cs, std::cosh(2.0), 1e-14);
}

TEST(GeneralizedTrig, MatchesJacobiOde) {
  using State = std::array<double, 2>;
  for (double k : {-4.0, -1.0, 0.3, 2.0}) {
    State y{0.0, 1.0};
    boost::numeric::odeint::integrate_adaptive(
        boost::numeric::odeint::make_controlled<boost::numeric::odeint::runge_kutta_dopri5<State>>(1e-13, 1e-13),
        [k](const State& s, State& d, double) {
          d[0] = s[1];
          d[1] = -k * s[0];
        },
        y, 0.0, 1.0, 1e-3);
    const TrigPair t = generalized_trig(Curvature(k), 1.0);
    EXPECT_NEAR(t.sn, y[0], 1e-10) << k;
    EXPECT_NEAR(t.cs, y[1], 1e-10) << k;
  }
}

TEST(GeneralizedTrig, NearFlatIsContinuous) {
  const TrigPair a = generalized_trig(Curvature(1e-13), 2.0);
  EXPECT_DOUBLE_EQ(a.sn, 2.0);
  const TrigPair b = generalized_trig(Curvature(1e-9), 2.0);
  EXPECT_NEAR(b.sn, 2.0, 1e-8);
}

class Properties : public ::testing::TestWithParam<double> {};

TEST_P(Properties, TriangleInequality) {
  const Curvature K(GetParam());
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const ModelPoint p = test::random_point(K, rng, 1.4);
    const ModelPoint q = test::random_point(K, rng, 1.4);
    const ModelPoint r = test::random_point(K, rng, 1.4);
    EXPECT_LE(distance(p, q), distance(p, r) + distance(r, q) + 1e-10);
  }
}

TEST_P(Properties, ReflectionIsIsometry) {
  const Curvature K(GetParam());
  std::mt19937_64 rng(12);
  for (int i = 0; i < 200; ++i) {
    const ModelPoint m = test::random_point(K, rng, 1.0);
    const ModelPoint p = test::random_point(K, rng, 1.0);
    const ModelPoint q = test::random_point(K, rng, 1.0);
    EXPECT_NEAR(distance(point_reflection(m, p), point_reflection(m, q)), distance(p, q), 1e-10);
  }
}

TEST_P(Properties, ExpDistanceConsistency) {
  const Curvature K(GetParam());
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> t(0.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const ModelPoint b = test::random_point(K, rng, 1.0);
    const auto [e1, e2] = tangent_basis(b);
    const TangentVector v = rotate(TangentVector{b, e1}, t(rng) * 2.0);
    const double s = t(rng);
    EXPECT_NEAR(distance(b, exp_map(v, s)), s, 1e-10);
  }
}

TEST_P(Properties, ScalingCovariance) {
  const Curvature K(GetParam());
  std::mt19937_64 rng(14);
  for (double c : {0.5, 2.0, 10.0}) {
    const Curvature Kc(K.value() / (c * c));
    for (int i = 0; i < 50; ++i) {
      const ModelPoint p = test::random_point(K, rng, 1.0);
      const ModelPoint q = test::random_point(K, rng, 1.0);
      const ModelPoint pc = rescale(p, c);
      EXPECT_EQ(pc.curvature(), Kc);
      EXPECT_NEAR(distance(pc, rescale(q, c)), c * distance(p, q), 1e-9 * c);
      const TangentVector v = direction_to(p, q);
      const TangentVector vc = direction_to(pc, rescale(q, c));
      const ModelPoint a = rescale(exp_map(v, 0.5), c);
      const ModelPoint b = exp_map(vc, 0.5 * c);
      EXPECT_NEAR((a.coords() - b.coords()).norm(), 0.0, 1e-9 * c);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Models, Properties, ::testing::Values(-1.0, 0.0, 1.0));

TEST(Frames, MoveToFrameRoundTrip) {
  std::mt19937_64 rng(15);
  for (double k : {-1.0, 0.0, 1.0}) {
    const Curvature K(k);
    const ModelPoint b = test::random_point(K, rng, 1.0);
    const auto [e1, e2] = tangent_basis(b);
    const TangentVector frame = rotate(TangentVector{b, e1}, 0.8);
    const ModelPoint moved = move_to_frame(frame, base_point(K));
    EXPECT_NEAR(distance(moved, b), 0.0, 1e-7);
    const ModelPoint x = test::random_point(K, rng, 1.0);
    EXPECT_NEAR((move_from_frame(frame, move_to_frame(frame, x)).coords() - x.coords()).norm(), 0.0, 1e-10);
  }
}

}  // namespace
