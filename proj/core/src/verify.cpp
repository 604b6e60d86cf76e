#include "lunekit/verify.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "lunekit/io.hpp"

#ifndef LUNEKIT_VERSION
#define LUNEKIT_VERSION "0.0.0"
#endif

namespace lunekit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const std::vector<std::string> kChecks{"theorem1",     "theorem2", "remark1",         "symmetrization",
                                       "rolling",      "conservation", "conjecture_area", "conjecture_circumradius"};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

template <class F>
void parallel_for(std::size_t n, int threads, F&& fn) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, threads)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          const std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

void fold_min(double& acc, double x) {
  if (std::isnan(x)) return;
  if (std::isnan(acc) || x < acc) acc = x;
}

void fold_max(double& acc, double x) {
  if (std::isnan(x)) return;
  if (std::isnan(acc) || x > acc) acc = x;
}

std::string row_tag(const DomainRow& row) {
  std::ostringstream os;
  os << "cell " << row.cell << " (kappa=" << row.kappa << ", lambda=" << row.lambda << ") ";
  if (row.source == "generated") {
    os << "index " << row.index << " seed " << row.seed << " supports " << row.n_supports;
  } else {
    os << row.source;
  }
  return os.str();
}

double reference_length(Curvature kappa, double lambda, double unbounded_length) {
  const RhoDomain dom = rho_domain(kappa, lambda);
  return dom.bounded() ? dom.upper : unbounded_length;
}

struct Needs {
  bool theorem1 = false;
  bool symmetrization = false;
  bool rolling = false;
  bool conservation = false;
  bool area = false;
  bool circumradius = false;

  bool any() const { return theorem1 || symmetrization || rolling || conservation || area || circumradius; }
};

Needs needs_for(const std::set<std::string>& checks) {
  Needs n;
  n.theorem1 = checks.count("theorem1") > 0;
  n.symmetrization = checks.count("symmetrization") > 0;
  n.rolling = checks.count("rolling") > 0;
  n.conservation = checks.count("conservation") > 0;
  n.area = checks.count("conjecture_area") > 0;
  n.circumradius = checks.count("conjecture_circumradius") > 0;
  return n;
}

std::pair<double, double> calibrate(Curvature kappa, double lambda, const CorpusSpec& spec) {
  const double Lref = reference_length(kappa, lambda, spec.unbounded_length);
  double C = 0.0;
  for (double f : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const Lune lune = build_lune(kappa, lambda, f * Lref);
    const double exact = rho(kappa, lambda, f * Lref);
    for (double m : {1.0, 2.0, 4.0}) {
      const double hh = m * spec.h;
      const double err = std::abs(inradius(lune_domain(lune, hh)).radius - exact);
      C = std::max(C, err / hh);
    }
  }
  return {C, 2.0 * C * spec.h + 1e-8};
}

void evaluate_domain(const ConvexPolyDomain& d, DomainRow& row, const Needs& needs, const CorpusSpec& spec,
                     bool rolling) {
  const Tolerances& tol = spec.tolerances;
  const Curvature kappa = d.curvature();
  const double lambda = row.lambda;
  const double eps = row.epsilon_h;

  row.n_vertices = d.size();
  row.L = perimeter(d);
  row.area = area(d);
  row.gauss_bonnet = gauss_bonnet_residual(d);
  if (needs.conservation) row.pass.conservation = std::abs(row.gauss_bonnet) < tol.gauss_bonnet * spec.h;

  const LambdaConvexityReport lc = is_lambda_convex(d, lambda, tol.lambda_convex);
  row.lambda_excess = lc.min_excess;
  const auto fail_all = [&](const std::string& status, const std::string& message) {
    row.status = status;
    row.message = message;
    if (needs.theorem1) row.pass.theorem1 = false;
    if (needs.symmetrization) row.pass.symmetrization = false;
    if (needs.rolling && rolling) row.pass.rolling = false;
    if (needs.area) row.pass.conjecture_area = false;
    if (needs.circumradius) row.pass.conjecture_circumradius = false;
  };
  if (!lc.lambda_convex) {
    std::ostringstream os;
    os << "is_lambda_convex failed: excess " << lc.min_excess << " on vertices " << lc.first << ".." << lc.last;
    fail_all("not_lambda_convex", os.str());
    return;
  }

  try {
    row.rho = rho(kappa, lambda, row.L);
    RadiusResult in;
    if (needs.theorem1 || needs.symmetrization || needs.area) {
      in = inradius(d);
      row.r = in.radius;
      row.slack = row.r - row.rho;
    }

    BalancedChord chord;
    if (needs.theorem1 || needs.symmetrization) chord = balanced_chord(d, in.center);

    if (needs.theorem1) {
      row.hausdorff = lune_hausdorff(d, lambda, chord);
      bool ok = row.slack >= -eps;
      if (row.n_supports == 2) ok = ok && std::abs(row.slack) <= tol.lune_equality;
      if (row.n_supports != 2 && row.hausdorff > tol.strict_hausdorff) ok = ok && row.slack > 0.0;
      row.pass.theorem1 = ok;
    }

    if (needs.symmetrization) {
      row.chord_defect = std::abs(chord.g);
      row.arc_mismatch = std::abs(chord.arc_lengths.first - chord.arc_lengths.second);
      double clearance = kInf;
      for (std::size_t i = 0; i < d.size(); ++i) clearance = std::min(clearance, distance(chord.m, d.vertex(i)));
      row.chord_clearance = clearance - row.rho;
      double anti = 0.0;
      const int N = std::max(1, spec.antisymmetry_samples);
      for (int j = 0; j < N; ++j) {
        const double s = row.L * j / N;
        anti = std::max(anti, std::abs(balance_defect(d, s) + balance_defect(d, s + 0.5 * row.L)));
      }
      row.antisymmetry = anti;
      bool reflected_ok = false;
      try {
        const ConvexPolyDomain gamma = reflect_arc(d, chord);
        const LambdaConvexityReport rl = is_lambda_convex(gamma, lambda, tol.lambda_convex);
        row.reflected_excess = rl.min_excess;
        reflected_ok = rl.lambda_convex;
      } catch (const DomainError& e) {
        row.message = std::string("reflect_arc: ") + e.what();
      }
      row.pass.symmetrization = row.chord_defect < tol.chord_defect && row.arc_mismatch < tol.arc_mismatch &&
                                row.antisymmetry < tol.antisymmetry && row.chord_clearance >= -eps && reflected_ok;
    }

    if (needs.rolling && rolling) {
      const RollingReport rr = rolling_check(d, lambda, spec.rolling_samples, tol.rolling * spec.h);
      row.rolling_violation = rr.max_violation;
      row.pass.rolling = rr.passed;
    }

    if (needs.area) {
      const auto La = lune_length_for_area(kappa, lambda, row.area, 4.0 * std::max(row.L, spec.unbounded_length));
      if (La) {
        row.area_lune_length = *La;
        row.area_lune_r = rho(kappa, lambda, *La);
        row.pass.conjecture_area = row.r >= row.area_lune_r - eps;
      }
    }

    if (needs.circumradius) {
      row.R = circumradius(d).radius;
      row.lune_R = lune_circumradius(build_lune(kappa, lambda, row.L));
      row.pass.conjecture_circumradius = row.R <= row.lune_R + eps;
    }
  } catch (const SolverError& e) {
    fail_all("solver_error", e.what());
  } catch (const GeometryError& e) {
    fail_all("invalid_domain", e.what());
  }
}

struct CellPlan {
  Cell cell;
  std::size_t generated = 0;
  std::vector<std::size_t> files;
};

std::vector<CellPlan> plan_cells(const CorpusSpec& spec, std::vector<DomainRecord>& records) {
  std::vector<CellPlan> plans;
  for (const Cell& c : spec.cells) plans.push_back({c, static_cast<std::size_t>(spec.n_domains), {}});
  for (const auto& path : spec.domain_files) {
    const std::size_t index = records.size();
    records.push_back(read_domain(path));
    const DomainRecord& rec = records.back();
    auto it = std::find_if(plans.begin(), plans.end(), [&](const CellPlan& p) {
      return p.cell.kappa == rec.kappa.value() && p.cell.lambda == rec.lambda;
    });
    if (it == plans.end()) {
      plans.push_back({{rec.kappa.value(), rec.lambda}, 0, {}});
      it = plans.end() - 1;
    }
    it->files.push_back(index);
  }
  return plans;
}

void evaluate_corpus(const CorpusSpec& spec, const Needs& needs, VerificationReport& rep) {
  std::vector<DomainRecord> records;
  const std::vector<CellPlan> plans = plan_cells(spec, records);
  const int threads = spec.threads > 0 ? spec.threads : default_threads();

  rep.cells.resize(plans.size());
  parallel_for(plans.size(), threads, [&](std::size_t c) {
    CellSummary& s = rep.cells[c];
    s.cell = plans[c].cell;
    s.generated = plans[c].generated;
    s.files = plans[c].files.size();
    if (s.generated + s.files == 0) return;
    const auto [C, eps] = calibrate(Curvature(s.cell.kappa), s.cell.lambda, spec);
    s.calibration_constant = C;
    s.epsilon_h = eps;
  });

  struct Job {
    std::size_t cell;
    std::size_t index;
    std::optional<std::size_t> record;
  };
  std::vector<Job> jobs;
  for (std::size_t c = 0; c < plans.size(); ++c) {
    for (std::size_t i = 0; i < plans[c].generated; ++i) jobs.push_back({c, i, std::nullopt});
    for (std::size_t f = 0; f < plans[c].files.size(); ++f) {
      jobs.push_back({c, plans[c].generated + f, plans[c].files[f]});
    }
  }

  rep.rows.resize(jobs.size());
  parallel_for(jobs.size(), threads, [&](std::size_t j) {
    const Job& job = jobs[j];
    const CellSummary& cs = rep.cells[job.cell];
    DomainRow& row = rep.rows[j];
    row.cell = job.cell;
    row.index = job.index;
    row.kappa = cs.cell.kappa;
    row.lambda = cs.cell.lambda;
    row.epsilon_h = cs.epsilon_h;
    const Curvature kappa(row.kappa);
    std::optional<ConvexPolyDomain> d;
    if (!job.record) {
      row.source = "generated";
      row.seed = domain_seed(spec.seed, job.cell, job.index);
      row.n_supports = spec.supports[job.index % spec.supports.size()];
      try {
        d.emplace(generate_lambda_convex(kappa, row.lambda, row.seed, row.n_supports, spec.h));
      } catch (const GenerationError& e) {
        row.status = "generation_failed";
        row.message = e.what();
        return;
      }
    } else {
      const DomainRecord& rec = records[*job.record];
      row.source = spec.domain_files[*job.record].string();
      if (rec.seed) row.seed = *rec.seed;
      try {
        d.emplace(kappa, rec.boundary);
        validate_sampling(*d, rec.h.value_or(spec.h));
      } catch (const GeometryError& e) {
        row.status = "invalid_domain";
        row.message = e.what();
        if (needs.theorem1) row.pass.theorem1 = false;
        return;
      }
    }
    evaluate_domain(*d, row, needs, spec, job.index < static_cast<std::size_t>(spec.rolling_domains));
  });

  for (const DomainRow& row : rep.rows) {
    CellSummary& s = rep.cells[row.cell];
    if (row.status == "generation_failed") ++s.generation_failures;
    fold_min(s.min_slack, row.slack);
    if (row.n_supports == 2) fold_max(s.max_lune_slack, std::abs(row.slack));
    if (row.n_supports != 2 && row.hausdorff > spec.tolerances.strict_hausdorff) fold_min(s.min_non_lune_slack, row.slack);
  }
}

CheckResult summarize_rows(const std::string& name, const VerificationReport& rep,
                           std::optional<bool> RowFlags::*flag, const std::string& what) {
  CheckResult res;
  res.name = name;
  res.gating = is_gating(name);
  for (const DomainRow& row : rep.rows) {
    const std::optional<bool>& f = row.pass.*flag;
    if (!f) continue;
    ++res.evaluated;
    if (!*f) {
      res.passed = false;
      std::string msg = row_tag(row) + ": " + what;
      if (row.status != "ok") msg += " [" + row.status + "] " + row.message;
      res.failures.push_back(msg);
    }
  }
  return res;
}

void add_corpus_checks(const std::set<std::string>& checks, VerificationReport& rep, const CorpusSpec& spec) {
  const auto metric_over = [&](CheckResult& res, const std::string& key, double DomainRow::*field, bool take_max,
                               bool absolute) {
    double acc = kNaN;
    for (const DomainRow& row : rep.rows) {
      const double v = absolute ? std::abs(row.*field) : row.*field;
      take_max ? fold_max(acc, v) : fold_min(acc, v);
    }
    if (!std::isnan(acc)) res.metrics[key] = acc;
  };

  if (checks.count("theorem1")) {
    CheckResult res = summarize_rows("theorem1", rep, &RowFlags::theorem1, "inradius bound violated");
    metric_over(res, "min_slack", &DomainRow::slack, false, false);
    double lune = kNaN;
    double strict = kNaN;
    std::size_t failures = 0;
    for (const DomainRow& row : rep.rows) {
      if (row.n_supports == 2) fold_max(lune, std::abs(row.slack));
      if (row.n_supports != 2 && row.hausdorff > spec.tolerances.strict_hausdorff) fold_min(strict, row.slack);
      if (row.status == "generation_failed") ++failures;
    }
    if (!std::isnan(lune)) res.metrics["max_lune_abs_slack"] = lune;
    if (!std::isnan(strict)) res.metrics["min_non_lune_slack"] = strict;
    res.metrics["generation_failures"] = static_cast<double>(failures);
    rep.checks.push_back(std::move(res));
  }
  if (checks.count("symmetrization")) {
    CheckResult res = summarize_rows("symmetrization", rep, &RowFlags::symmetrization,
                                     "balanced chord or reflected arc check failed");
    metric_over(res, "max_chord_defect", &DomainRow::chord_defect, true, false);
    metric_over(res, "max_arc_mismatch", &DomainRow::arc_mismatch, true, false);
    metric_over(res, "max_antisymmetry", &DomainRow::antisymmetry, true, false);
    metric_over(res, "min_chord_clearance", &DomainRow::chord_clearance, false, false);
    metric_over(res, "min_reflected_excess", &DomainRow::reflected_excess, false, false);
    rep.checks.push_back(std::move(res));
  }
  if (checks.count("rolling")) {
    CheckResult res = summarize_rows("rolling", rep, &RowFlags::rolling, "vertex outside a supporting F_lambda");
    metric_over(res, "max_violation", &DomainRow::rolling_violation, true, false);
    rep.checks.push_back(std::move(res));
  }
  if (checks.count("conservation")) {
    CheckResult res = summarize_rows("conservation", rep, &RowFlags::conservation, "Gauss-Bonnet residual too large");
    metric_over(res, "max_gauss_bonnet", &DomainRow::gauss_bonnet, true, true);
    double worst = 0.0;
    for (const Cell& cell : spec.cells) {
      const Curvature kappa(cell.kappa);
      const double Lref = reference_length(kappa, cell.lambda, spec.unbounded_length);
      for (int j = 0; j < spec.formula_points; ++j) {
        const double L = Lref * (j + 0.5) / spec.formula_points;
        for (double c : spec.scaling_factors) {
          const double defect = rho_scaling_defect(kappa, cell.lambda, L, c);
          worst = std::max(worst, defect);
          ++res.evaluated;
          if (!(defect < spec.tolerances.scaling)) {
            res.passed = false;
            res.failures.push_back("rho scaling kappa=" + fmt(cell.kappa) + " lambda=" + fmt(cell.lambda) +
                                   " L=" + fmt(L) + " c=" + fmt(c) + ": defect " + fmt(defect));
          }
        }
      }
    }
    res.metrics["max_scaling_defect"] = worst;
    rep.checks.push_back(std::move(res));
  }
  if (checks.count("conjecture_area")) {
    CheckResult res =
        summarize_rows("conjecture_area", rep, &RowFlags::conjecture_area, "inradius below the equal-area lune");
    std::size_t na = 0;
    for (const DomainRow& row : rep.rows) {
      if (row.status == "ok" && !row.pass.conjecture_area) ++na;
    }
    res.metrics["not_applicable"] = static_cast<double>(na);
    rep.checks.push_back(std::move(res));
  }
  if (checks.count("conjecture_circumradius")) {
    CheckResult res = summarize_rows("conjecture_circumradius", rep, &RowFlags::conjecture_circumradius,
                                     "circumradius above the equal-perimeter lune");
    double worst = kNaN;
    for (const DomainRow& row : rep.rows) fold_max(worst, row.R - row.lune_R);
    if (!std::isnan(worst)) res.metrics["max_excess_over_lune"] = worst;
    rep.checks.push_back(std::move(res));
  }
}

void add_formula_check(const CorpusSpec& spec, VerificationReport& rep) {
  CheckResult res;
  res.name = "theorem2";
  res.gating = true;
  struct Item {
    Cell cell;
    double L;
  };
  std::vector<Item> items;
  for (const Cell& cell : spec.cells) {
    const double Lref = reference_length(Curvature(cell.kappa), cell.lambda, spec.unbounded_length);
    for (int j = 0; j < spec.formula_points; ++j) items.push_back({cell, Lref * (j + 0.5) / spec.formula_points});
  }
  std::vector<FormulaRow> rows(items.size());
  parallel_for(items.size(), spec.threads > 0 ? spec.threads : default_threads(), [&](std::size_t i) {
    const Curvature kappa(items[i].cell.kappa);
    const double lambda = items[i].cell.lambda;
    FormulaRow& row = rows[i];
    row.kappa = kappa.value();
    row.lambda = lambda;
    row.L = items[i].L;
    const RhoBranch b = rho_branch(kappa, lambda);
    row.branch = std::string(branch_name(b));
    row.closed_form = rho(kappa, lambda, row.L);
    row.oracle = lune_inradius_numeric(build_lune(kappa, lambda, row.L));
    row.error = std::abs(row.closed_form - row.oracle);
    if (b == RhoBranch::Eq7) row.variant = rho_hypercycle_variant(kappa, lambda, row.L);
    row.passed = row.error < spec.tolerances.formula;
  });
  double worst = 0.0;
  std::map<std::string, double> per_branch;
  for (const FormulaRow& row : rows) {
    ++res.evaluated;
    worst = std::max(worst, row.error);
    per_branch[row.branch] = std::max(per_branch[row.branch], row.error);
    if (!row.passed) {
      res.passed = false;
      res.failures.push_back("branch " + row.branch + " kappa=" + fmt(row.kappa) + " lambda=" + fmt(row.lambda) +
                             " L=" + fmt(row.L) + ": closed form " + fmt(row.closed_form) + " vs lune " +
                             fmt(row.oracle));
    }
  }
  res.metrics["max_error"] = worst;
  for (const auto& [b, e] : per_branch) res.metrics["max_error_" + b] = e;
  rep.formula_rows = std::move(rows);
  rep.checks.push_back(std::move(res));
}

void add_remark_check(const CorpusSpec& spec, VerificationReport& rep) {
  CheckResult res;
  res.name = "remark1";
  res.gating = true;
  double circle = 0.0;
  double hyper = 0.0;
  double kgap = 0.0;
  std::size_t not_applicable = 0;
  for (double k : spec.remark_k) {
    for (double L : spec.remark_lengths) {
      PhaseTransitionReport pt = phase_transition_check(k, L, spec.remark_eps, 1e-8, spec.remark_threshold);
      ++res.evaluated;
      const std::string where = "k=" + fmt(k) + " L=" + fmt(L) + ": ";
      const auto check_seq = [&](const char* limit, double PhaseTransitionRow::*gap, double& worst) {
        double prev = kInf;
        double last = kNaN;
        bool monotone = true;
        for (const PhaseTransitionRow& row : pt.rows) {
          const double g = row.*gap;
          if (std::isnan(g)) continue;
          if (g > prev) monotone = false;
          prev = g;
          last = g;
        }
        if (!std::isnan(last)) worst = std::max(worst, last);
        if (!monotone) {
          res.passed = false;
          res.failures.push_back(where + limit + " gaps do not decrease with eps");
        }
        if (std::isnan(last) || !(last < spec.remark_threshold)) {
          res.passed = false;
          res.failures.push_back(where + limit + " gap " + fmt(last) + " at the smallest eps is not below " +
                                 fmt(spec.remark_threshold));
        }
      };
      check_seq("eq4->eq5", &PhaseTransitionRow::gap_circle, circle);
      check_seq("eq7->eq5", &PhaseTransitionRow::gap_hypercycle, hyper);
      for (const auto& [limit, g] : {std::pair{"kappa->+0 (eq2->eq3)", pt.gap_kappa_plus},
                                     std::pair{"kappa->-0 (eq4->eq3)", pt.gap_kappa_minus}}) {
        if (std::isnan(g)) {
          ++not_applicable;
          continue;
        }
        kgap = std::max(kgap, g);
        if (!(g < spec.remark_threshold)) {
          res.passed = false;
          res.failures.push_back(where + limit + " gap " + fmt(g) + " is not below " + fmt(spec.remark_threshold));
        }
      }
      rep.phase.push_back(std::move(pt));
    }
  }
  res.metrics["max_gap_eq4_eq5"] = circle;
  res.metrics["max_gap_eq7_eq5"] = hyper;
  res.metrics["max_gap_kappa"] = kgap;
  res.metrics["kappa_limits_not_applicable"] = static_cast<double>(not_applicable);
  rep.checks.push_back(std::move(res));
}

VerificationReport run_checks(const CorpusSpec& spec, const std::set<std::string>& checks) {
  spec.validate();
  VerificationReport rep;
  rep.seed = spec.seed;
  rep.h = spec.h;
  rep.version = LUNEKIT_VERSION;
  const Needs needs = needs_for(checks);
  if (needs.any()) {
    evaluate_corpus(spec, needs, rep);
    add_corpus_checks(checks, rep, spec);
  }
  if (checks.count("theorem2")) add_formula_check(spec, rep);
  if (checks.count("remark1")) add_remark_check(spec, rep);
  std::stable_sort(rep.checks.begin(), rep.checks.end(), [](const CheckResult& a, const CheckResult& b) {
    const auto ia = std::find(kChecks.begin(), kChecks.end(), a.name) - kChecks.begin();
    const auto ib = std::find(kChecks.begin(), kChecks.end(), b.name) - kChecks.begin();
    return ia < ib;
  });
  return rep;
}

}  // namespace

void CorpusSpec::validate() const {
  if (n_domains < 0) throw std::invalid_argument("n_domains must be non-negative");
  if (!(h > 0.0)) throw std::invalid_argument("h must be positive");
  if (supports.empty()) throw std::invalid_argument("supports must be nonempty");
  for (int s : supports) {
    if (s < 2) throw std::invalid_argument("every support count must be at least 2");
  }
  for (const Cell& c : cells) {
    if (!(c.lambda > 0.0)) throw std::invalid_argument("lambda entries must be positive");
  }
  for (const std::string& c : checks) {
    if (std::find(kChecks.begin(), kChecks.end(), c) == kChecks.end()) {
      throw std::invalid_argument("unknown check '" + c + "'");
    }
  }
  if (formula_points < 1) throw std::invalid_argument("formula_points must be positive");
  if (rolling_samples < 1) throw std::invalid_argument("rolling_samples must be positive");
  for (double c : scaling_factors) {
    if (!(c > 0.0)) throw std::invalid_argument("scaling factors must be positive");
  }
}

const std::vector<std::string>& all_checks() { return kChecks; }

bool is_gating(const std::string& check) { return check.rfind("conjecture_", 0) != 0; }

std::uint64_t domain_seed(std::uint64_t master, std::size_t cell, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(cell), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(static_cast<std::uint64_t>(index) >> 32)};
  std::mt19937_64 rng(seq);
  return rng();
}

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.gating || c.passed; });
}

const CheckResult* VerificationReport::find(const std::string& name) const {
  for (const CheckResult& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

VerificationReport run_suite(const CorpusSpec& spec) {
  const std::vector<std::string>& names = spec.checks.empty() ? kChecks : spec.checks;
  return run_checks(spec, std::set<std::string>(names.begin(), names.end()));
}

VerificationReport run_theorem1(const CorpusSpec& spec) { return run_checks(spec, {"theorem1"}); }
VerificationReport run_theorem2_formulas(const CorpusSpec& spec) { return run_checks(spec, {"theorem2"}); }
VerificationReport run_remark1(const CorpusSpec& spec) { return run_checks(spec, {"remark1"}); }
VerificationReport run_conjecture_area(const CorpusSpec& spec) { return run_checks(spec, {"conjecture_area"}); }
VerificationReport run_conjecture_circumradius(const CorpusSpec& spec) {
  return run_checks(spec, {"conjecture_circumradius"});
}

double lune_hausdorff(const ConvexPolyDomain& d, double lambda, const BalancedChord& chord) {
  const Curvature kappa = d.curvature();
  const double L = d.perimeter();
  const Lune lune = build_lune(kappa, lambda, std::min(L, reference_length(kappa, lambda, kInf) * (1.0 - 1e-12)));
  const std::vector<ModelPoint> lune_ring = lune_boundary(lune, L / 200.0);

  const std::size_t stride = std::max<std::size_t>(1, d.size() / 200);
  std::vector<ModelPoint> sub;
  const double corner_turn = 4.0 * lambda * d.max_edge();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i % stride == 0 || d.turn(i) > corner_turn) sub.push_back(d.vertex(i));
  }
  const ConvexPolyDomain dsub(kappa, sub);

  const TangentVector axis = direction_to(chord.m, chord.q_star);
  const auto outside = [](const ConvexPolyDomain& s, const ModelPoint& x) {
    return s.contains(x) ? 0.0 : s.boundary_distance(x);
  };
  const auto H = [&](double theta) {
    const TangentVector frame = rotate(axis, theta);
    std::vector<ModelPoint> ring;
    ring.reserve(lune_ring.size());
    for (const ModelPoint& p : lune_ring) ring.push_back(move_to_frame(frame, p));
    const ConvexPolyDomain moved(kappa, ring);
    double h = 0.0;
    for (const ModelPoint& x : sub) h = std::max(h, outside(moved, x));
    for (const ModelPoint& y : ring) h = std::max(h, outside(dsub, y));
    return h;
  };

  constexpr int kSweep = 16;
  const double step = 2.0 * std::numbers::pi / kSweep;
  double best_theta = 0.0;
  double best = kInf;
  for (int j = 0; j < kSweep; ++j) {
    const double v = H(j * step);
    if (v < best) {
      best = v;
      best_theta = j * step;
    }
  }
  std::uintmax_t it = 40;
  const auto m = boost::math::tools::brent_find_minima(H, best_theta - step, best_theta + step, 16, it);
  return std::min(best, m.second);
}

std::optional<double> lune_length_for_area(Curvature kappa, double lambda, double target, double max_length) {
  if (!(target > 0.0)) return std::nullopt;
  const RhoDomain dom = rho_domain(kappa, lambda);
  const auto f = [&](double L) { return lune_area(build_lune(kappa, lambda, L)) - target; };
  double hi = 0.0;
  if (dom.bounded()) {
    hi = dom.upper * (1.0 - 1e-12);
    if (f(hi) < 0.0) return std::nullopt;
  } else {
    hi = 1.0;
    while (f(hi) < 0.0) {
      hi *= 2.0;
      if (hi > max_length) return std::nullopt;
    }
  }
  std::uintmax_t it = 200;
  const auto r = boost::math::tools::toms748_solve(f, hi * 1e-12, hi, boost::math::tools::eps_tolerance<double>(50), it);
  return 0.5 * (r.first + r.second);
}

double rho_scaling_defect(Curvature kappa, double lambda, double L, double c) {
  const Curvature scaled(kappa.value() / (c * c));
  return std::abs(c * rho(kappa, lambda, L) - rho(scaled, lambda / c, c * L));
}

int default_threads() {
  if (const char* env = std::getenv("LUNEKIT_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace lunekit
