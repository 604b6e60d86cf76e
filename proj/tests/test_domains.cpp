#include <gtest/gtest.h>

#include <cmath>

#include "lunekit/domains.hpp"
#include "lunekit/verify.hpp"
#include "support.hpp"

using namespace lunekit;
using lunekit::test::pi;

namespace {

const Curvature kFlat(0.0);

ConvexPolyDomain unit_square() { return ConvexPolyDomain(kFlat, test::planar_ring({{0, 0}, {1, 0}, {1, 1}, {0, 1}})); }

struct CellCase {
  double kappa;
  double lambda;
};
const CellCase kCells[] = {{1, 1}, {0, 1}, {-1, 2}, {-1, 1}, {-1, 0.5}};

TEST(ConvexPolyDomain, Validation) {
  EXPECT_THROW(ConvexPolyDomain(kFlat, test::planar_ring({{0, 0}, {1, 0}})), DomainError);
  // Clockwise ring.
  EXPECT_THROW(ConvexPolyDomain(kFlat, test::planar_ring({{0, 0}, {0, 1}, {1, 1}, {1, 0}})), DomainError);
  // Reflex vertex.
  EXPECT_THROW(ConvexPolyDomain(kFlat, test::planar_ring({{0, 0}, {2, 0}, {1, 0.3}, {2, 2}, {0, 2}})), DomainError);
  // A repeated closing vertex is dropped.
  const ConvexPolyDomain d(kFlat, test::planar_ring({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}}));
  EXPECT_EQ(d.size(), 4u);
  EXPECT_NEAR(d.cumulative_arclength()[2], 2.0, 1e-15);
}

TEST(ConvexPolyDomain, SamplingPolicy) {
  EXPECT_THROW(validate_sampling(unit_square(), 1e-3), DomainError);
  const ConvexPolyDomain d = test::disk(kFlat, 1.0, 1000);
  EXPECT_NO_THROW(validate_sampling(d, 1e-3));
  EXPECT_THROW(validate_sampling(test::disk(kFlat, 1.0, 100), 1e-3), DomainError);
}

TEST(Measures, UnitSquare) {
  const ConvexPolyDomain d = unit_square();
  EXPECT_NEAR(perimeter(d), 4.0, 1e-15);
  EXPECT_NEAR(area(d), 1.0, 1e-14);
}

TEST(Measures, Disk) {
  const int n = 6284;
  const ConvexPolyDomain d = test::disk(kFlat, 1.0, n);
  const double h = 2 * pi / n;
  EXPECT_NEAR(perimeter(d), 2 * pi, h * h);
  EXPECT_NEAR(area(d), pi, 2 * h * h);
}

TEST(Measures, SphericalOctant) {
  const Curvature K(1);
  const std::vector<ModelPoint> corners{ModelPoint::from_coords(K, Vec3(1, 0, 0)),
                                        ModelPoint::from_coords(K, Vec3(0, 1, 0)),
                                        ModelPoint::from_coords(K, Vec3(0, 0, 1))};
  const ConvexPolyDomain d(K, test::densify(corners, 200));
  EXPECT_NEAR(area(d), pi / 2, 1e-10);
  EXPECT_NEAR(perimeter(d), 3 * pi / 2, 1e-10);
  EXPECT_NEAR(gauss_bonnet_residual(d), 0.0, 1e-10);
}

TEST(Measures, GaussBonnetAcrossModels) {
  for (const CellCase& c : kCells) {
    const ConvexPolyDomain d = generate_lambda_convex(Curvature(c.kappa), c.lambda, 5, 4, 1e-3);
    EXPECT_LT(std::abs(gauss_bonnet_residual(d)), 10 * 1e-3);
  }
}

TEST(Inradius, UnitSquare) {
  const RadiusResult r = inradius(unit_square());
  EXPECT_NEAR(r.radius, 0.5, 1e-9);
  EXPECT_NEAR(r.center.coords().y(), 0.5, 1e-6);
}

TEST(Inradius, Disk) {
  const int n = 6284;
  const RadiusResult r = inradius(test::disk(kFlat, 1.0, n));
  const double h = 2 * pi / n;
  EXPECT_NEAR(r.radius, 1.0, h * h);
  EXPECT_LT(r.center.coords().norm(), 1e-6);
}

TEST(Inradius, EuclideanLune) {
  const ConvexPolyDomain d = lune_domain(build_lune(kFlat, 1, pi), 1e-3);
  EXPECT_NEAR(inradius(d).radius, 1 - std::cos(pi / 4), 1e-5);
}

TEST(Inradius, AttainedAtCenter) {
  for (const CellCase& c : kCells) {
    const ConvexPolyDomain d = generate_lambda_convex(Curvature(c.kappa), c.lambda, 9, 5, 1e-3);
    const RadiusResult r = inradius(d);
    EXPECT_TRUE(d.contains(r.center));
    EXPECT_NEAR(d.boundary_distance(r.center), r.radius, 1e-12);
  }
}

TEST(Circumradius, Examples) {
  EXPECT_NEAR(circumradius(unit_square()).radius, std::sqrt(0.5), 1e-8);
  const int n = 6284;
  EXPECT_NEAR(circumradius(test::disk(kFlat, 1.0, n)).radius, 1.0, 1e-8);
  const Lune lune = build_lune(kFlat, 1, pi);
  const RadiusResult R = circumradius(lune_domain(lune, 1e-3));
  EXPECT_NEAR(R.radius, std::sin(pi / 4), 1e-8);
  EXPECT_NEAR(distance(R.center, lune.center), 0.0, 1e-5);
}

TEST(LambdaConvex, Circles) {
  EXPECT_TRUE(is_lambda_convex(test::disk(kFlat, 1.0, 6284), 1.0, 1e-9).lambda_convex);
  const LambdaConvexityReport big = is_lambda_convex(test::disk(kFlat, 2.0, 12567), 1.0, 1e-9);
  EXPECT_FALSE(big.lambda_convex);
  EXPECT_LT(big.min_excess, 0.0);
}

TEST(LambdaConvex, LuneCornerWindowsHaveSlack) {
  const Lune lune = build_lune(kFlat, 1, pi);
  const ConvexPolyDomain d = lune_domain(lune, 1e-3);
  const LambdaConvexityReport rep = is_lambda_convex(d, 1.0, 1e-9);
  EXPECT_TRUE(rep.lambda_convex);
  // A window made of the corner alone turns by the corner angle at no extra length.
  std::size_t corner = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d.turn(i) > d.turn(corner)) corner = i;
  }
  EXPECT_NEAR(d.turn(corner), lune_corner_turn(lune), 1e-3);
  const double local = d.edge_length(corner) + d.edge_length(corner + d.size() - 1);
  EXPECT_GT(d.turn(corner), 1.0 * local + 0.5);
}

TEST(Generate, DeterministicInSeed) {
  const ConvexPolyDomain a = generate_lambda_convex(kFlat, 1, 42, 5, 1e-3);
  const ConvexPolyDomain b = generate_lambda_convex(kFlat, 1, 42, 5, 1e-3);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a.vertex(i).coords(), b.vertex(i).coords());
  const ConvexPolyDomain c = generate_lambda_convex(kFlat, 1, 43, 5, 1e-3);
  EXPECT_NE(a.perimeter(), c.perimeter());
}

TEST(Generate, EuclideanFiveSupports) {
  const ConvexPolyDomain d = generate_lambda_convex(kFlat, 1, 42, 5, 1e-3);
  EXPECT_LT(d.perimeter(), 2 * pi);
  EXPECT_TRUE(is_lambda_convex(d, 1.0, 1e-9).lambda_convex);
  EXPECT_LE(d.max_edge(), 1e-3 * (1 + 1e-9));
  EXPECT_NO_THROW(validate_sampling(d, 1e-3));
}

TEST(Generate, TwoSupportsGiveALune) {
  for (const CellCase& c : kCells) {
    const Curvature K(c.kappa);
    const ConvexPolyDomain d = generate_lambda_convex(K, c.lambda, 17, 2, 1e-3);
    EXPECT_NEAR(inradius(d).radius, rho(K, c.lambda, d.perimeter()), 1e-4);
  }
}

TEST(Generate, AllCellsLambdaConvex) {
  for (const CellCase& c : kCells) {
    for (int ns : {3, 4, 6}) {
      const ConvexPolyDomain d = generate_lambda_convex(Curvature(c.kappa), c.lambda, 100 + ns, ns, 1e-3);
      EXPECT_TRUE(is_lambda_convex(d, c.lambda, 1e-9).lambda_convex) << c.kappa << ' ' << c.lambda << ' ' << ns;
    }
  }
}

TEST(Generate, RejectsBadArguments) {
  EXPECT_THROW(generate_lambda_convex(kFlat, 1, 1, 1, 1e-3), GeometryError);
  EXPECT_THROW(generate_lambda_convex(kFlat, 1, 1, 3, 0.0), GeometryError);
}

TEST(BalancedChord, DiskDiameter) {
  const ConvexPolyDomain d = test::disk(kFlat, 1.0, 2000);
  const BalancedChord c = balanced_chord(d, base_point(kFlat));
  EXPECT_LT(std::abs(c.g), 1e-6);
  EXPECT_NEAR(distance(c.p_star, c.q_star), 2.0, 1e-6);
  EXPECT_NEAR(c.arc_lengths.first, c.arc_lengths.second, 1e-8);
}

TEST(BalancedChord, LuneCorners) {
  for (const CellCase& c : kCells) {
    const Curvature K(c.kappa);
    const double L = 0.5 * (rho_domain(K, c.lambda).bounded() ? rho_domain(K, c.lambda).upper : 8.0);
    const Lune lune = build_lune(K, c.lambda, L);
    const ConvexPolyDomain d = lune_domain(lune, 1e-3);
    const BalancedChord chord = balanced_chord(d, lune.center);
    const double to_corner = std::min(distance(chord.p_star, lune.corners[0]), distance(chord.p_star, lune.corners[1]));
    EXPECT_LT(to_corner, 1e-9);
    EXPECT_NEAR(distance(chord.m, lune.center), 0.0, 1e-9);

    // Gluing the half boundary to its reflection gives the lune back.
    const ConvexPolyDomain glued = reflect_arc(d, chord);
    EXPECT_NEAR(glued.perimeter(), d.perimeter(), 1e-8);
    EXPECT_LT(lune_hausdorff(glued, c.lambda, balanced_chord(glued, chord.m)), 1e-4);
  }
}

TEST(BalancedChord, GeneratedDomains) {
  for (const CellCase& c : kCells) {
    for (int ns : {3, 5}) {
      const Curvature K(c.kappa);
      const ConvexPolyDomain d = generate_lambda_convex(K, c.lambda, 7 * ns, ns, 1e-3);
      const RadiusResult in = inradius(d);
      const BalancedChord chord = balanced_chord(d, in.center);
      EXPECT_LT(std::abs(chord.g), 1e-6);
      EXPECT_NEAR(chord.arc_lengths.first, chord.arc_lengths.second, 1e-8);
      EXPECT_NEAR(distance(chord.m, midpoint(chord.p_star, chord.q_star)), 0.0, 1e-10);

      const ConvexPolyDomain glued = reflect_arc(d, chord);
      EXPECT_NEAR(glued.perimeter(), d.perimeter(), 1e-8);
      EXPECT_TRUE(is_lambda_convex(glued, c.lambda, 1e-9).lambda_convex);
      for (std::size_t i = 0; i < glued.size(); ++i) {
        const ModelPoint r = point_reflection(chord.m, glued.vertex(i));
        EXPECT_LT(glued.boundary_distance(r), 1e-8);
      }

      // g(f(x)) = −g(x).
      const double L = d.perimeter();
      for (int j = 0; j < 100; ++j) {
        const double s = L * (j + 0.37) / 100.0;
        EXPECT_NEAR(balance_defect(d, s + 0.5 * L), -balance_defect(d, s), 1e-8);
      }
    }
  }
}

TEST(BalancedChord, RejectsExteriorCenter) {
  const ConvexPolyDomain d = test::disk(kFlat, 1.0, 500);
  EXPECT_THROW(balanced_chord(d, ModelPoint::planar(3, 0)), DomainError);
}

TEST(Rolling, Circles) {
  const RollingReport unit = rolling_check(test::disk(kFlat, 1.0, 6284), 1.0, 200, 1e-2);
  EXPECT_TRUE(unit.passed);
  EXPECT_NEAR(unit.max_violation, 0.0, 1e-6);

  const RollingReport half = rolling_check(test::disk(kFlat, 0.5, 3142), 1.0, 200, 1e-2);
  EXPECT_TRUE(half.passed);
  EXPECT_NEAR(half.max_violation, 0.0, 1e-9);

  const RollingReport two = rolling_check(test::disk(kFlat, 2.0, 12567), 1.0, 200, 1e-2);
  EXPECT_FALSE(two.passed);
  EXPECT_NEAR(two.max_violation, 2.0, 1e-3);
}

TEST(Rolling, GeneratedDomains) {
  for (const CellCase& c : kCells) {
    const ConvexPolyDomain d = generate_lambda_convex(Curvature(c.kappa), c.lambda, 31, 4, 1e-3);
    EXPECT_TRUE(rolling_check(d, c.lambda, 100, 1e-2).passed);
  }
}

}  // namespace
