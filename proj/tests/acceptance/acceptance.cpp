// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
//
//   lunekit_acceptance [--domains N] [--threads T]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <algorithm>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "lunekit/lune.hpp"
#include "lunekit/verify.hpp"

using namespace lunekit;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

struct Grid {
  double kappa;
  double lambda;
};

const std::vector<Grid> kGrid = {{1, 1}, {0, 1}, {-1, 2}, {-1, 1}, {-1, 0.5}};
constexpr double kUnbounded = 12.0;

double top_length(const Grid& g) {
  const RhoDomain dom = rho_domain(Curvature(g.kappa), g.lambda);
  return dom.bounded() ? dom.upper : kUnbounded;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int g_failed = 0;

void report(int id, const std::string& title, Outcome o, double secs, double budget) {
  if (secs >= budget) {
    o.passed = false;
    o.detail += "; over the " + fmt(budget) + " s budget";
  }
  if (!o.passed) ++g_failed;
  std::printf("criterion %d: %s  %s [%s; %.2f s]\n", id, o.passed ? "PASS" : "FAIL", title.c_str(), o.detail.c_str(),
              secs);
  std::fflush(stdout);
}

Outcome formula_oracle() {
  Outcome o;
  double worst = 0.0;
  for (const Grid& g : kGrid) {
    const Curvature K(g.kappa);
    for (int i = 1; i <= 10; ++i) {
      const double L = top_length(g) * i / 11.0;
      const double err = std::abs(rho(K, g.lambda, L) - lune_inradius_numeric(build_lune(K, g.lambda, L)));
      worst = std::max(worst, err);
      if (!(err < 1e-6)) {
        o.passed = false;
        o.detail += std::string(branch_name(rho_branch(K, g.lambda))) + " at L=" + fmt(L) + " off by " + fmt(err) + "; ";
      }
    }
  }
  o.detail += "max |closed form - construction| = " + fmt(worst) + " over 50 points";
  return o;
}

Outcome endpoints() {
  Outcome o;
  double worst = 0.0;
  for (const Grid& g : kGrid) {
    const Curvature K(g.kappa);
    if (rho(K, g.lambda, 0.0) != 0.0) {
      o.passed = false;
      o.detail += "rho(0) != 0 for " + std::string(branch_name(rho_branch(K, g.lambda))) + "; ";
    }
    if (const auto r = f_lambda_radius(K, g.lambda)) {
      const double err = std::abs(rho(K, g.lambda, f_lambda_perimeter(K, g.lambda)) - *r);
      worst = std::max(worst, err);
      if (!(err < 1e-9)) o.passed = false;
    }
  }
  o.detail += "rho(0) = 0 on 5 branches, max |rho(L_lambda) - r_lambda| = " + fmt(worst);
  return o;
}

Outcome monotonicity() {
  Outcome o;
  double worst_rel = 0.0;
  for (const Grid& g : kGrid) {
    const Curvature K(g.kappa);
    const double top = top_length(g);
    double prev = -std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 100; ++i) {
      const double L = top * i / 101.0;
      const double v = rho(K, g.lambda, L);
      const double d = rho_derivative(K, g.lambda, L);
      const double step = 1e-5 * top;
      const double fd = (rho(K, g.lambda, L + step) - rho(K, g.lambda, L - step)) / (2.0 * step);
      const double rel = std::abs(fd - d) / std::abs(d);
      worst_rel = std::max(worst_rel, rel);
      if (!(v > prev) || !(d > 0.0) || !(rel < 1e-6)) o.passed = false;
      prev = v;
    }
  }
  o.detail = "500 grid points, max relative derivative error " + fmt(worst_rel);
  return o;
}

Outcome phase_transitions() {
  Outcome o;
  double worst_lambda = 0.0;
  double worst_kappa = 0.0;
  int not_applicable = 0;
  const Curvature H(-1.0);
  const double eps = 1e-4;
  for (double L : {1.0, 4.0, 10.0}) {
    const double base = rho(H, 1.0, L);
    const double up = std::abs(rho(H, 1.0 + eps, L) - base);
    const double down = std::abs(rho(H, 1.0 - eps, L) - base);
    worst_lambda = std::max({worst_lambda, up, down});
    if (!(up < 1e-6)) {
      o.passed = false;
      o.detail += "eq4->eq5 gap " + fmt(up) + " at L=" + fmt(L) + "; ";
    }
    if (!(down < 1e-6)) {
      o.passed = false;
      o.detail += "eq7->eq5 gap " + fmt(down) + " at L=" + fmt(L) + "; ";
    }
    if (!rho_domain(Curvature(0.0), 1.0).contains(L)) {
      ++not_applicable;
      continue;
    }
    const double flat = rho(Curvature(0.0), 1.0, L);
    for (double k : {1e-8, -1e-8}) {
      const double gap = std::abs(rho(Curvature(k), 1.0, L) - flat);
      worst_kappa = std::max(worst_kappa, gap);
      if (!(gap < 1e-6)) {
        o.passed = false;
        o.detail += "kappa->0 gap " + fmt(gap) + " at L=" + fmt(L) + "; ";
      }
    }
  }
  o.detail += "max lambda gap " + fmt(worst_lambda) + " at eps=1e-4, max kappa gap " + fmt(worst_kappa);
  if (not_applicable > 0) o.detail += ", kappa limit undefined for " + std::to_string(not_applicable) + " L > 2*pi";
  return o;
}

CorpusSpec corpus(int n, int threads, std::vector<std::string> checks) {
  CorpusSpec s;
  for (const Grid& g : kGrid) s.cells.push_back({g.kappa, g.lambda});
  s.n_domains = n;
  s.h = 1e-3;
  s.seed = 1;
  s.threads = threads;
  s.unbounded_length = kUnbounded;
  s.checks = std::move(checks);
  return s;
}

const CheckResult& check(const VerificationReport& rep, const std::string& name) {
  static const CheckResult missing{};
  const CheckResult* c = rep.find(name);
  return c ? *c : missing;
}

double metric(const CheckResult& c, const std::string& key) {
  const auto it = c.metrics.find(key);
  return it == c.metrics.end() ? std::numeric_limits<double>::quiet_NaN() : it->second;
}

std::string first_failures(const CheckResult& c) {
  std::string out;
  for (std::size_t i = 0; i < c.failures.size() && i < 3; ++i) out += "; " + c.failures[i];
  return out;
}

Outcome main_inequality(const VerificationReport& rep, int n) {
  Outcome o;
  std::size_t below = 0, lune_bad = 0, strict_bad = 0, strict_rows = 0, failed = 0, rows = 0;
  double max_eps = 0.0;
  for (const CellSummary& c : rep.cells) max_eps = std::max(max_eps, c.epsilon_h);
  for (const DomainRow& r : rep.rows) {
    ++rows;
    if (r.status != "ok") {
      ++failed;
      continue;
    }
    if (r.slack < -r.epsilon_h) ++below;
    if (r.n_supports == 2 && !(std::abs(r.slack) < 1e-4)) ++lune_bad;
    if (r.n_supports >= 3 && r.hausdorff > 0.05) {
      ++strict_rows;
      if (!(r.slack > 0.0)) ++strict_bad;
    }
  }
  o.passed = rows == static_cast<std::size_t>(5 * n) && failed == 0 && below == 0 && lune_bad == 0 &&
             strict_bad == 0 && max_eps < 5e-3;
  const CheckResult& t1 = check(rep, "theorem1");
  o.detail = std::to_string(rows) + " domains, " + std::to_string(failed) + " not evaluated, " +
             std::to_string(below) + " below -eps_h (max eps_h " + fmt(max_eps) + "), max lune |slack| " +
             fmt(metric(t1, "max_lune_abs_slack")) + ", " + std::to_string(strict_bad) + "/" +
             std::to_string(strict_rows) + " far-from-lune rows without positive slack (min " +
             fmt(metric(t1, "min_non_lune_slack")) + ")" + first_failures(t1);
  return o;
}

Outcome symmetrization(const VerificationReport& rep) {
  const CheckResult& c = check(rep, "symmetrization");
  Outcome o;
  o.passed = c.passed && c.evaluated == rep.rows.size() && !rep.rows.empty();
  o.detail = std::to_string(c.evaluated) + " domains, max |g| " + fmt(metric(c, "max_chord_defect")) +
             ", max arc mismatch " + fmt(metric(c, "max_arc_mismatch")) + ", max antisymmetry " +
             fmt(metric(c, "max_antisymmetry")) + ", min reflected excess " + fmt(metric(c, "min_reflected_excess")) +
             first_failures(c);
  return o;
}

Outcome rolling(const VerificationReport& rep, std::size_t expected) {
  const CheckResult& c = check(rep, "rolling");
  Outcome o;
  o.passed = c.passed && c.evaluated == expected;
  o.detail = std::to_string(c.evaluated) + " domains, max violation " + fmt(metric(c, "max_violation")) +
             " (tol 1e-2)" + first_failures(c);
  return o;
}

Outcome conservation(const VerificationReport& rep) {
  const CheckResult& c = check(rep, "conservation");
  Outcome o;
  o.passed = c.passed && c.evaluated > 0;
  o.detail = "max Gauss-Bonnet residual " + fmt(metric(c, "max_gauss_bonnet")) + " (tol 1e-2), max scaling defect " +
             fmt(metric(c, "max_scaling_defect")) + first_failures(c);
  return o;
}

Outcome conjectures(const VerificationReport& rep) {
  Outcome o;
  std::size_t area_bad = 0, circ_bad = 0, area_na = 0, sphere_bad = 0, evaluated = 0;
  for (const DomainRow& r : rep.rows) {
    if (r.status != "ok") continue;
    ++evaluated;
    const bool area_fail = r.pass.conjecture_area.has_value() && !*r.pass.conjecture_area;
    const bool circ_fail = r.pass.conjecture_circumradius.has_value() && !*r.pass.conjecture_circumradius;
    if (!r.pass.conjecture_area.has_value()) ++area_na;
    if (r.kappa > 0.0) {
      sphere_bad += area_fail + circ_fail;
      continue;
    }
    area_bad += area_fail;
    circ_bad += circ_fail;
  }
  o.passed = evaluated == rep.rows.size() && !rep.rows.empty() && area_bad == 0 && circ_bad == 0;
  o.detail = std::to_string(evaluated) + " domains, " + std::to_string(area_bad) + " area and " +
             std::to_string(circ_bad) + " circumradius violations on flat/hyperbolic cells, " +
             std::to_string(sphere_bad) + " on the sphere (reported only), " + std::to_string(area_na) +
             " area rows not applicable";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  int n = 200;
  int threads = 0;
  for (int i = 1; i + 1 < argc; i += 2) {
    if (!std::strcmp(argv[i], "--domains")) n = std::atoi(argv[i + 1]);
    else if (!std::strcmp(argv[i], "--threads")) threads = std::atoi(argv[i + 1]);
    else {
      std::fprintf(stderr, "usage: %s [--domains N] [--threads T]\n", argv[0]);
      return 2;
    }
  }
  const int workers = threads > 0 ? threads : default_threads();
  std::printf("lunekit acceptance: %d domains per cell, h = 1e-3, %d worker thread(s)\n", n, workers);

  auto t0 = Clock::now();
  Outcome o = formula_oracle();
  report(1, "closed form matches the lune construction", o, seconds_since(t0), 10.0);

  t0 = Clock::now();
  o = endpoints();
  report(2, "endpoint identities", o, seconds_since(t0), 1.0);

  t0 = Clock::now();
  o = monotonicity();
  report(3, "monotone bound with matching derivative", o, seconds_since(t0), 1.0);

  t0 = Clock::now();
  o = phase_transitions();
  report(4, "phase transitions at eps = 1e-4", o, seconds_since(t0), 1.0);

  const double corpus_budget = workers >= 8 ? 60.0 : 300.0;
  t0 = Clock::now();
  const VerificationReport main_run =
      run_suite(corpus(n, threads, {"theorem1", "conservation", "conjecture_area", "conjecture_circumradius"}));
  const double main_secs = seconds_since(t0);
  report(5, "inradius bound over the corpus", main_inequality(main_run, n), main_secs, corpus_budget);

  t0 = Clock::now();
  const VerificationReport sym_run = run_suite(corpus(n, threads, {"symmetrization"}));
  report(6, "balanced chord and reflection", symmetrization(sym_run), seconds_since(t0), 60.0);

  t0 = Clock::now();
  const VerificationReport roll_run = run_suite(corpus(std::min(n, 20), threads, {"rolling"}));
  report(7, "rolling containment", rolling(roll_run, 5u * std::min(n, 20)), seconds_since(t0), 60.0);

  const double unlimited = std::numeric_limits<double>::infinity();
  report(8, "Gauss-Bonnet and scaling", conservation(main_run), main_secs, unlimited);
  report(9, "conjecture explorations (non-gating)", conjectures(main_run), main_secs, unlimited);

  std::printf("%d of 9 criteria failed\n", g_failed);
  return g_failed == 0 ? 0 : 1;
}
