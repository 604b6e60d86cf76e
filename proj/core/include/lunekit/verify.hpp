#pragma once

// Corpus harness: generates λ-convex domains, evaluates the inradius bound and
// the symmetrization machinery on them, and collects pass/fail reports.

#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lunekit/domains.hpp"
#include "lunekit/lune.hpp"

namespace lunekit {

inline constexpr int kSchemaVersion = 1;

struct Tolerances {
  /// |slack| bound for two-support (lune) rows.
  double lune_equality = 1e-4;
  /// Rows farther than this from their best-fit lune must have slack > 0.
  double strict_hausdorff = 0.05;
  /// Closed form against the lune construction.
  double formula = 1e-6;
  double chord_defect = 1e-6;
  double arc_mismatch = 1e-8;
  double antisymmetry = 1e-8;
  /// Multiples of h.
  double rolling = 10.0;
  double gauss_bonnet = 10.0;
  /// Absolute bound on the rho scaling defect.
  double scaling = 1e-9;
  /// Tolerance handed to is_lambda_convex.
  double lambda_convex = 1e-9;
};

struct Cell {
  double kappa = 0.0;
  double lambda = 1.0;
};

struct CorpusSpec {
  std::vector<Cell> cells;
  /// Domains generated per cell.
  int n_domains = 0;
  /// Support counts cycled over the domain index.
  std::vector<int> supports{2, 3, 4, 5, 6};
  std::uint64_t seed = 1;
  double h = 1e-3;
  Tolerances tolerances;

  /// Extra domain files checked alongside the generated ones.
  std::vector<std::filesystem::path> domain_files;
  /// Rolling checks run on the first rolling_domains rows of each cell.
  int rolling_domains = 20;
  int rolling_samples = 200;
  int antisymmetry_samples = 100;

  /// Closed-form grid: interior L values per cell, and the largest L used
  /// where L_λ is infinite.
  int formula_points = 10;
  double unbounded_length = 12.0;

  std::vector<double> remark_k{1.0};
  std::vector<double> remark_lengths{1.0, 4.0, 10.0};
  std::vector<double> remark_eps{1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7};
  double remark_threshold = 1e-6;

  std::vector<double> scaling_factors{0.5, 2.0, 10.0};

  /// Checks to run; empty means all of all_checks().
  std::vector<std::string> checks;
  /// Worker threads; 0 reads LUNEKIT_THREADS, then the hardware count.
  int threads = 0;

  /// Throws std::invalid_argument.
  void validate() const;
};

/// Names accepted in CorpusSpec::checks.
const std::vector<std::string>& all_checks();
bool is_gating(const std::string& check);

/// Per-domain stream derived from (master seed, cell, index) only.
std::uint64_t domain_seed(std::uint64_t master, std::size_t cell, std::size_t index);

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct RowFlags {
  std::optional<bool> theorem1;
  std::optional<bool> symmetrization;
  std::optional<bool> rolling;
  std::optional<bool> conservation;
  std::optional<bool> conjecture_area;
  std::optional<bool> conjecture_circumradius;
};

struct DomainRow {
  std::size_t cell = 0;
  std::size_t index = 0;
  double kappa = 0.0;
  double lambda = 0.0;
  std::uint64_t seed = 0;
  int n_supports = 0;
  /// "generated" or the input file.
  std::string source;
  /// ok, generation_failed, invalid_domain, not_lambda_convex, solver_error.
  std::string status = "ok";
  std::string message;

  std::size_t n_vertices = 0;
  double L = kNaN;
  double area = kNaN;
  double r = kNaN;
  double rho = kNaN;
  double slack = kNaN;
  double epsilon_h = kNaN;
  double hausdorff = kNaN;
  double lambda_excess = kNaN;
  double gauss_bonnet = kNaN;

  double chord_defect = kNaN;
  /// min over vertices of |m v| − ρ, m the chord midpoint.
  double chord_clearance = kNaN;
  double arc_mismatch = kNaN;
  double antisymmetry = kNaN;
  double reflected_excess = kNaN;
  double rolling_violation = kNaN;

  double area_lune_length = kNaN;
  double area_lune_r = kNaN;
  double R = kNaN;
  double lune_R = kNaN;

  RowFlags pass;
};

struct CellSummary {
  Cell cell;
  std::size_t generated = 0;
  std::size_t files = 0;
  std::size_t generation_failures = 0;
  double min_slack = kNaN;
  double min_non_lune_slack = kNaN;
  double max_lune_slack = kNaN;
  /// ε_h = 2·C·h + 1e-8 with C the largest lune error per unit h measured at
  /// h, 2h and 4h.
  double epsilon_h = kNaN;
  double calibration_constant = kNaN;
};

struct FormulaRow {
  double kappa = 0.0;
  double lambda = 0.0;
  std::string branch;
  double L = 0.0;
  double closed_form = 0.0;
  double oracle = 0.0;
  double error = 0.0;
  /// The (cosh + 1)² hypercycle variant, eq7 rows only.
  double variant = kNaN;
  bool passed = false;
};

struct CheckResult {
  std::string name;
  bool gating = true;
  bool passed = true;
  std::size_t evaluated = 0;
  std::vector<std::string> failures;
  std::map<std::string, double> metrics;
};

struct VerificationReport {
  std::uint64_t seed = 0;
  double h = 0.0;
  std::string version;
  std::vector<CellSummary> cells;
  std::vector<DomainRow> rows;
  std::vector<FormulaRow> formula_rows;
  std::vector<PhaseTransitionReport> phase;
  std::vector<CheckResult> checks;

  /// All gating checks passed.
  bool passed() const;
  const CheckResult* find(const std::string& name) const;
};

/// Runs the requested checks. Domains are evaluated once and shared.
VerificationReport run_suite(const CorpusSpec& spec);

VerificationReport run_theorem1(const CorpusSpec& spec);
VerificationReport run_theorem2_formulas(const CorpusSpec& spec);
VerificationReport run_remark1(const CorpusSpec& spec);
VerificationReport run_conjecture_area(const CorpusSpec& spec);
VerificationReport run_conjecture_circumradius(const CorpusSpec& spec);

/// Set Hausdorff distance between D and the lune of the same κ, λ and
/// perimeter, centered at the balanced-chord midpoint and rotated to fit.
double lune_hausdorff(const ConvexPolyDomain& d, double lambda, const BalancedChord& chord);

/// The lune of the given area (bisection on L); nullopt when no lune has it.
std::optional<double> lune_length_for_area(Curvature kappa, double lambda, double area, double max_length);

/// |c·ρ(κ, λ, L) − ρ(κ/c², λ/c, c·L)|.
double rho_scaling_defect(Curvature kappa, double lambda, double L, double c);

/// Worker count from LUNEKIT_THREADS, else the hardware count.
int default_threads();

}  // namespace lunekit
