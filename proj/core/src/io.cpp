#include "lunekit/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace lunekit {

using nlohmann::json;

namespace {

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json flag(const std::optional<bool>& f) { return f ? json(*f) : json(nullptr); }

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  const auto it = j.find(key);
  return it == j.end() || it->is_null() ? fallback : it->get<T>();
}

json row_json(const DomainRow& r) {
  return json{{"cell", r.cell},
              {"index", r.index},
              {"kappa", r.kappa},
              {"lambda", r.lambda},
              {"seed", r.seed},
              {"n_supports", r.n_supports},
              {"source", r.source},
              {"status", r.status},
              {"message", r.message},
              {"n_vertices", r.n_vertices},
              {"L", number_or_null(r.L)},
              {"area", number_or_null(r.area)},
              {"r", number_or_null(r.r)},
              {"rho", number_or_null(r.rho)},
              {"slack", number_or_null(r.slack)},
              {"epsilon_h", number_or_null(r.epsilon_h)},
              {"hausdorff", number_or_null(r.hausdorff)},
              {"lambda_excess", number_or_null(r.lambda_excess)},
              {"gauss_bonnet", number_or_null(r.gauss_bonnet)},
              {"chord_defect", number_or_null(r.chord_defect)},
              {"chord_clearance", number_or_null(r.chord_clearance)},
              {"arc_mismatch", number_or_null(r.arc_mismatch)},
              {"antisymmetry", number_or_null(r.antisymmetry)},
              {"reflected_excess", number_or_null(r.reflected_excess)},
              {"rolling_violation", number_or_null(r.rolling_violation)},
              {"area_lune_length", number_or_null(r.area_lune_length)},
              {"area_lune_r", number_or_null(r.area_lune_r)},
              {"R", number_or_null(r.R)},
              {"lune_R", number_or_null(r.lune_R)},
              {"pass",
               {{"theorem1", flag(r.pass.theorem1)},
                {"symmetrization", flag(r.pass.symmetrization)},
                {"rolling", flag(r.pass.rolling)},
                {"conservation", flag(r.pass.conservation)},
                {"conjecture_area", flag(r.pass.conjecture_area)},
                {"conjecture_circumradius", flag(r.pass.conjecture_circumradius)}}}};
}

std::string csv_number(double x) {
  if (!std::isfinite(x)) return "";
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::string csv_flag(const std::optional<bool>& f) { return f ? (*f ? "1" : "0") : ""; }

std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string domain_json(const DomainRecord& rec) {
  json boundary = json::array();
  for (const ModelPoint& p : rec.boundary) {
    const Vec3& c = p.coords();
    boundary.push_back({c.x(), c.y(), c.z()});
  }
  json meta = {{"seed", rec.seed ? json(*rec.seed) : json(nullptr)},
               {"h", rec.h ? json(*rec.h) : json(nullptr)},
               {"generator", rec.generator}};
  const json j = {{"schema_version", kSchemaVersion},
                  {"kappa", rec.kappa.value()},
                  {"lambda", rec.lambda},
                  {"boundary", std::move(boundary)},
                  {"metadata", std::move(meta)}};
  return j.dump(1) + "\n";
}

DomainRecord parse_domain_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError(std::string("domain file is not valid JSON: ") + e.what());
  }
  DomainRecord rec;
  try {
    if (j.at("schema_version").get<int>() != kSchemaVersion) throw IoError("unsupported domain schema_version");
    rec.kappa = Curvature(j.at("kappa").get<double>());
    rec.lambda = j.at("lambda").get<double>();
    for (const json& p : j.at("boundary")) {
      if (!p.is_array() || p.size() != 3) throw IoError("boundary entries must be [x, y, z]");
      rec.boundary.push_back(
          ModelPoint::from_coords(rec.kappa, Vec3(p[0].get<double>(), p[1].get<double>(), p[2].get<double>())));
    }
    if (const auto m = j.find("metadata"); m != j.end() && m->is_object()) {
      if (const auto s = m->find("seed"); s != m->end() && !s->is_null()) rec.seed = s->get<std::uint64_t>();
      if (const auto h = m->find("h"); h != m->end() && !h->is_null()) rec.h = h->get<double>();
      rec.generator = get_or<std::string>(*m, "generator", "");
    }
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed domain file: ") + e.what());
  }
  return rec;
}

DomainRecord read_domain(const std::filesystem::path& path) {
  try {
    return parse_domain_json(read_text(path));
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_domain(const std::filesystem::path& path, const DomainRecord& rec) { write_text(path, domain_json(rec)); }

CorpusSpec parse_corpus_spec(const std::string& text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError(std::string("corpus spec is not valid JSON: ") + e.what());
  }
  CorpusSpec spec;
  try {
    if (const auto cells = j.find("cells"); cells != j.end()) {
      for (const json& c : *cells) spec.cells.push_back({c.at(0).get<double>(), c.at(1).get<double>()});
    } else if (j.contains("kappa_list") || j.contains("lambda_list")) {
      for (double k : j.at("kappa_list").get<std::vector<double>>()) {
        for (double l : j.at("lambda_list").get<std::vector<double>>()) spec.cells.push_back({k, l});
      }
    }
    spec.n_domains = get_or(j, "n_domains", spec.n_domains);
    spec.supports = get_or(j, "supports", spec.supports);
    spec.seed = get_or(j, "seed", spec.seed);
    spec.h = get_or(j, "h", spec.h);
    for (const std::string& f : get_or(j, "domains", std::vector<std::string>{})) {
      const std::filesystem::path p(f);
      spec.domain_files.push_back(p.is_absolute() || base_dir.empty() ? p : base_dir / p);
    }
    spec.rolling_domains = get_or(j, "rolling_domains", spec.rolling_domains);
    spec.rolling_samples = get_or(j, "rolling_samples", spec.rolling_samples);
    spec.antisymmetry_samples = get_or(j, "antisymmetry_samples", spec.antisymmetry_samples);
    spec.formula_points = get_or(j, "formula_points", spec.formula_points);
    spec.unbounded_length = get_or(j, "unbounded_length", spec.unbounded_length);
    if (const auto r = j.find("remark"); r != j.end()) {
      spec.remark_k = get_or(*r, "k", spec.remark_k);
      spec.remark_lengths = get_or(*r, "lengths", spec.remark_lengths);
      spec.remark_eps = get_or(*r, "eps", spec.remark_eps);
      spec.remark_threshold = get_or(*r, "threshold", spec.remark_threshold);
    }
    spec.scaling_factors = get_or(j, "scaling_factors", spec.scaling_factors);
    spec.checks = get_or(j, "checks", spec.checks);
    spec.threads = get_or(j, "threads", spec.threads);
    if (const auto t = j.find("tolerances"); t != j.end()) {
      Tolerances& tol = spec.tolerances;
      tol.lune_equality = get_or(*t, "lune_equality", tol.lune_equality);
      tol.strict_hausdorff = get_or(*t, "strict_hausdorff", tol.strict_hausdorff);
      tol.formula = get_or(*t, "formula", tol.formula);
      tol.chord_defect = get_or(*t, "chord_defect", tol.chord_defect);
      tol.arc_mismatch = get_or(*t, "arc_mismatch", tol.arc_mismatch);
      tol.antisymmetry = get_or(*t, "antisymmetry", tol.antisymmetry);
      tol.rolling = get_or(*t, "rolling", tol.rolling);
      tol.gauss_bonnet = get_or(*t, "gauss_bonnet", tol.gauss_bonnet);
      tol.scaling = get_or(*t, "scaling", tol.scaling);
      tol.lambda_convex = get_or(*t, "lambda_convex", tol.lambda_convex);
    }
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed corpus spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

CorpusSpec read_corpus_spec(const std::filesystem::path& path) {
  return parse_corpus_spec(read_text(path), path.parent_path());
}

std::string report_json(const VerificationReport& rep) {
  json cells = json::array();
  for (const CellSummary& c : rep.cells) {
    cells.push_back({{"kappa", c.cell.kappa},
                     {"lambda", c.cell.lambda},
                     {"generated", c.generated},
                     {"files", c.files},
                     {"generation_failures", c.generation_failures},
                     {"min_slack", number_or_null(c.min_slack)},
                     {"min_non_lune_slack", number_or_null(c.min_non_lune_slack)},
                     {"max_lune_abs_slack", number_or_null(c.max_lune_slack)},
                     {"epsilon_h", number_or_null(c.epsilon_h)},
                     {"calibration_constant", number_or_null(c.calibration_constant)}});
  }
  json checks = json::array();
  for (const CheckResult& c : rep.checks) {
    json metrics = json::object();
    for (const auto& [k, v] : c.metrics) metrics[k] = number_or_null(v);
    checks.push_back({{"name", c.name},
                      {"gating", c.gating},
                      {"passed", c.passed},
                      {"evaluated", c.evaluated},
                      {"failures", c.failures},
                      {"metrics", std::move(metrics)}});
  }
  json formula = json::array();
  for (const FormulaRow& f : rep.formula_rows) {
    formula.push_back({{"kappa", f.kappa},
                       {"lambda", f.lambda},
                       {"branch", f.branch},
                       {"L", f.L},
                       {"closed_form", f.closed_form},
                       {"oracle", f.oracle},
                       {"error", f.error},
                       {"variant", number_or_null(f.variant)},
                       {"passed", f.passed}});
  }
  json phase = json::array();
  for (const PhaseTransitionReport& p : rep.phase) {
    json rows = json::array();
    for (const PhaseTransitionRow& r : p.rows) {
      rows.push_back({{"eps", r.eps},
                      {"gap_eq4_eq5", number_or_null(r.gap_circle)},
                      {"gap_eq7_eq5", number_or_null(r.gap_hypercycle)}});
    }
    phase.push_back({{"k", p.k},
                     {"L", p.L},
                     {"threshold", p.threshold},
                     {"kappa_eps", p.kappa_eps},
                     {"gap_kappa_plus", number_or_null(p.gap_kappa_plus)},
                     {"gap_kappa_minus", number_or_null(p.gap_kappa_minus)},
                     {"monotone", p.monotone},
                     {"below_threshold", p.below_threshold},
                     {"rows", std::move(rows)}});
  }
  json rows = json::array();
  for (const DomainRow& r : rep.rows) rows.push_back(row_json(r));
  const json j = {{"schema_version", kSchemaVersion},
                  {"provenance", {{"seed", rep.seed}, {"h", rep.h}, {"version", rep.version}}},
                  {"passed", rep.passed()},
                  {"checks", std::move(checks)},
                  {"cells", std::move(cells)},
                  {"formula_rows", std::move(formula)},
                  {"phase_transition", std::move(phase)},
                  {"rows", std::move(rows)}};
  return j.dump(1) + "\n";
}

std::string report_csv(const VerificationReport& rep) {
  std::ostringstream os;
  os << "cell,index,kappa,lambda,seed,n_supports,source,status,n_vertices,L,area,r,rho,slack,epsilon_h,hausdorff,"
        "lambda_excess,gauss_bonnet,chord_defect,chord_clearance,arc_mismatch,antisymmetry,reflected_excess,"
        "rolling_violation,area_lune_length,area_lune_r,R,lune_R,pass_theorem1,pass_symmetrization,pass_rolling,"
        "pass_conservation,pass_conjecture_area,pass_conjecture_circumradius\n";
  for (const DomainRow& r : rep.rows) {
    os << r.cell << ',' << r.index << ',' << csv_number(r.kappa) << ',' << csv_number(r.lambda) << ',' << r.seed
       << ',' << r.n_supports << ',' << csv_text(r.source) << ',' << r.status << ',' << r.n_vertices;
    for (double x : {r.L, r.area, r.r, r.rho, r.slack, r.epsilon_h, r.hausdorff, r.lambda_excess, r.gauss_bonnet,
                     r.chord_defect, r.chord_clearance, r.arc_mismatch, r.antisymmetry, r.reflected_excess,
                     r.rolling_violation, r.area_lune_length, r.area_lune_r, r.R, r.lune_R}) {
      os << ',' << csv_number(x);
    }
    for (const auto* f : {&r.pass.theorem1, &r.pass.symmetrization, &r.pass.rolling, &r.pass.conservation,
                          &r.pass.conjecture_area, &r.pass.conjecture_circumradius}) {
      os << ',' << csv_flag(*f);
    }
    os << '\n';
  }
  return os.str();
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw IoError("cannot write " + path.string());
}

}  // namespace lunekit
