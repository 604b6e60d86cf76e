#pragma once

// λ-convex lunes and the inradius bound ρ_λ(L).

#include <array>
#include <string_view>
#include <vector>

#include "lunekit/curves.hpp"

namespace lunekit {

/// L outside the domain of ρ_λ.
class OutOfDomainError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

/// Closed-form branch of ρ_λ. The names are the ones printed by the CLI.
enum class RhoBranch {
  Eq2,  // κ > 0
  Eq3,  // κ = 0
  Eq4,  // κ < 0, λ > √−κ
  Eq5,  // κ < 0, λ = √−κ
  Eq7,  // κ < 0, λ < √−κ
};

std::string_view branch_name(RhoBranch b);
RhoBranch rho_branch(Curvature kappa, double lambda);

struct RhoDomain {
  Curvature kappa;
  double lambda = 0.0;
  /// L_λ, or +∞ when F_λ is unbounded.
  double upper = 0.0;

  bool bounded() const;
  bool contains(double L) const;
  bool interior(double L) const;
  std::string describe() const;
};

RhoDomain rho_domain(Curvature kappa, double lambda);

/// Inradius of the λ-convex lune with boundary length L.
double rho(Curvature kappa, double lambda, double L);
/// dρ/dL on the interior of the domain.
double rho_derivative(Curvature kappa, double lambda, double L);

/// The hypercycle closed form with (cosh + 1)² in place of (cosh + λ/k)², as
/// it is sometimes quoted. It is not zero at L = 0; kept only for comparison.
double rho_hypercycle_variant(Curvature kappa, double lambda, double L);

/// Intersection of two F_λ regions whose boundary arcs have equal length.
///
/// The center m is the base point of the model and the corners lie on the
/// geodesic through m along e_x. arcs[0] runs from corners[1] to corners[0]
/// through mid_points[0]; arcs[1] is its image under point reflection in m.
/// Both arcs are parametrized over [−ℓ, ℓ] with ℓ = L/4.
struct Lune {
  Curvature kappa;
  double lambda;
  double length;
  ModelPoint center;
  /// Unit direction at m towards mid_points[0].
  TangentVector axis;
  std::array<ConstantCurvatureArc, 2> arcs;
  std::array<ModelPoint, 2> corners;
  std::array<ModelPoint, 2> mid_points;
  std::array<FLambdaRegion, 2> regions;
};

/// 0 < L < L_λ. Throws OutOfDomainError otherwise.
Lune build_lune(Curvature kappa, double lambda, double L);

/// Minimum distance from m to the boundary arcs, by golden-section search.
double lune_inradius_numeric(const Lune& lune, double tol = 1e-12);

double lune_area(const Lune& lune);
/// Half the corner-to-corner distance; attained at m.
double lune_circumradius(const Lune& lune);
/// Exterior angle at either corner.
double lune_corner_turn(const Lune& lune);

/// Counterclockwise ring of boundary samples with step ≤ h along each arc,
/// corners included once.
std::vector<ModelPoint> lune_boundary(const Lune& lune, double h);

/// max of the two region signed distances: negative inside the lune.
double lune_signed_distance(const Lune& lune, const ModelPoint& p);

struct PhaseTransitionRow {
  double eps = 0.0;
  /// |ρ(λ = k(1+ε)) − ρ(λ = k)| and |ρ(λ = k(1−ε)) − ρ(λ = k)|.
  double gap_circle = 0.0;
  double gap_hypercycle = 0.0;
};

struct PhaseTransitionReport {
  double k = 0.0;
  double L = 0.0;
  double threshold = 1e-6;
  std::vector<PhaseTransitionRow> rows;
  /// κ = ±kappa_eps with λ = k against the flat value.
  double kappa_eps = 1e-8;
  double gap_kappa_plus = 0.0;
  double gap_kappa_minus = 0.0;

  bool monotone = true;
  /// Gaps at the smallest ε (and the κ gaps) are below the threshold.
  bool below_threshold = true;
  bool passed() const { return monotone && below_threshold; }
};

/// eps values in (0, 1/2), expected in decreasing order.
PhaseTransitionReport phase_transition_check(double k, double L, const std::vector<double>& eps_sequence,
                                             double kappa_eps = 1e-8, double threshold = 1e-6);

}  // namespace lunekit
