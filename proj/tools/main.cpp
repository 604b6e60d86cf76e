// lunekit: inradius bounds for λ-convex domains from the command line.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI/CLI.hpp>
#include <nlohmann/json.hpp>
#include "lunekit/domains.hpp"
#include "lunekit/io.hpp"
#include "lunekit/lune.hpp"
#include "lunekit/verify.hpp"
#include "render.hpp"

namespace fs = std::filesystem;
using namespace lunekit;

namespace {

enum Exit : int {
  kOk = 0,
  kInput = 2,
  kIo = 3,
  kGeneration = 4,
  kCheckFailed = 5,
};

struct Failure {
  int code;
  std::string message;
};

[[noreturn]] void fail(int code, const std::string& message) { throw Failure{code, message}; }

std::string format_number(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

int cmd_rho(double kappa, double lambda, double length, bool as_json) {
  const Curvature K(kappa);
  double value = 0.0;
  try {
    value = rho(K, lambda, length);
  } catch (const OutOfDomainError& e) {
    fail(kInput, e.what());
  }
  const std::string branch(branch_name(rho_branch(K, lambda)));
  if (as_json) {
    const nlohmann::json j = {{"kappa", kappa},   {"lambda", lambda},  {"L", length},
                              {"rho", value},     {"branch", branch},
                              {"interval", rho_domain(K, lambda).describe()}};
    std::cout << j.dump(1) << '\n';
  } else {
    std::cout << format_number(value) << ' ' << branch << '\n';
  }
  return kOk;
}

Style arc_style(const std::string& cls, const char* stroke) {
  Style s;
  s.css_class = cls;
  s.stroke = stroke;
  s.width = 2.0;
  return s;
}

int cmd_lune(double kappa, double lambda, double length, double h, const std::string& out, const std::string& svg) {
  const Curvature K(kappa);
  const Lune lune = [&] {
    try {
      return build_lune(K, lambda, length);
    } catch (const GeometryError& e) {
      fail(kInput, e.what());
    }
  }();
  DomainRecord rec;
  rec.kappa = K;
  rec.lambda = lambda;
  rec.boundary = lune_boundary(lune, h);
  rec.h = h;
  rec.generator = "lune";
  write_domain(out, rec);
  if (!svg.empty()) {
    RenderScene scene(K, default_projection(K));
    scene.set_view_center(lune.center);
    scene.add_arc(lune.arcs[0], arc_style("arc", "#1f5fbf"));
    scene.add_arc(lune.arcs[1], arc_style("arc", "#1f5fbf"));
    Style pt;
    pt.css_class = "corner";
    pt.fill = "#222";
    scene.add_point(lune.corners[0], pt);
    scene.add_point(lune.corners[1], pt);
    write_text(svg, scene.to_svg());
  }
  return kOk;
}

int cmd_gen(double kappa, double lambda, std::uint64_t seed, int n_supports, int count, double h,
            const std::string& out) {
  if (count < 0) fail(kInput, "--count must be non-negative");
  if (n_supports < 2) fail(kInput, "--n-supports must be at least 2");
  if (count == 0) return kOk;
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) fail(kIo, "cannot create " + out + ": " + ec.message());
  const Curvature K(kappa);
  for (int i = 0; i < count; ++i) {
    const std::uint64_t s = domain_seed(seed, 0, static_cast<std::size_t>(i));
    DomainRecord rec;
    rec.kappa = K;
    rec.lambda = lambda;
    rec.seed = s;
    rec.h = h;
    rec.generator = "generate_lambda_convex n_supports=" + std::to_string(n_supports);
    try {
      rec.boundary = generate_lambda_convex(K, lambda, s, n_supports, h).boundary();
    } catch (const GenerationError& e) {
      fail(kGeneration, e.what());
    }
    char name[32];
    std::snprintf(name, sizeof name, "domain_%04d.json", i);
    write_domain(fs::path(out) / name, rec);
  }
  return kOk;
}

int cmd_verify(const std::string& spec_path, const std::string& report_path, const std::string& csv_path,
               int threads) {
  CorpusSpec spec;
  try {
    spec = read_corpus_spec(spec_path);
  } catch (const std::invalid_argument& e) {
    fail(kInput, std::string("invalid corpus spec: ") + e.what());
  }
  if (threads > 0) spec.threads = threads;
  VerificationReport rep;
  try {
    rep = run_suite(spec);
  } catch (const std::invalid_argument& e) {
    fail(kInput, e.what());
  }
  write_text(report_path, report_json(rep));
  if (!csv_path.empty()) write_text(csv_path, report_csv(rep));
  for (const CheckResult& c : rep.checks) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.evaluated << " evaluated"
              << (c.gating ? "" : ", exploratory") << ")\n";
    if (!c.passed) {
      std::ostream& err = std::cerr;
      err << (c.gating ? "error: " : "warning: ") << c.name << ": " << c.failures.size() << " failure(s)\n";
      for (std::size_t i = 0; i < c.failures.size() && i < 10; ++i) err << "  " << c.failures[i] << '\n';
    }
  }
  return rep.passed() ? kOk : kCheckFailed;
}

int cmd_render(const std::string& in, const std::string& svg, const std::vector<std::string>& annotate,
               const std::string& projection_name) {
  const DomainRecord rec = read_domain(in);
  const Curvature K = rec.kappa;
  const Projection proj = projection_name.empty() ? default_projection(K) : parse_projection(projection_name);
  RenderScene scene(K, proj);
  ConvexPolyDomain d(K, rec.boundary);
  const RadiusResult in_r = inradius(d);
  scene.set_view_center(in_r.center);

  Style boundary = arc_style("domain", "#222");
  scene.add_polygon(d.boundary(), boundary);
  Style point;
  point.fill = "#222";
  for (const std::string& a : annotate) {
    if (a == "inradius") {
      scene.add_circle(in_r.center, in_r.radius, arc_style("inball", "#c0392b"));
      point.css_class = "incenter";
      scene.add_point(in_r.center, point, "o");
    } else if (a == "circumradius") {
      const RadiusResult out = circumradius(d);
      scene.add_circle(out.center, out.radius, arc_style("circumball", "#8e44ad"));
      point.css_class = "circumcenter";
      scene.add_point(out.center, point);
    } else if (a == "chord") {
      const BalancedChord chord = balanced_chord(d, in_r.center);
      scene.add_geodesic(chord.p_star, chord.q_star, arc_style("chord", "#27ae60"));
      try {
        Style reflected = arc_style("reflected", "#1f5fbf");
        reflected.dashed = true;
        scene.add_polygon(reflect_arc(d, chord).boundary(), reflected);
      } catch (const DomainError&) {
      }
      if (rec.lambda > 0.0 && d.perimeter() < rho_domain(K, rec.lambda).upper) {
        const Lune lune = build_lune(K, rec.lambda, d.perimeter());
        const TangentVector frame = direction_to(chord.m, chord.q_star);
        std::vector<ModelPoint> ring;
        for (const ModelPoint& p : lune_boundary(lune, d.perimeter() / 512.0)) ring.push_back(move_to_frame(frame, p));
        Style lune_style = arc_style("lune", "#e67e22");
        lune_style.dashed = true;
        scene.add_polygon(std::move(ring), lune_style);
      }
      point.css_class = "chord-point";
      scene.add_point(chord.p_star, point, "p*");
      scene.add_point(chord.q_star, point, "q*");
      scene.add_point(chord.m, point, "m");
    } else {
      fail(kInput, "unknown annotation '" + a + "'");
    }
  }
  write_text(svg, scene.to_svg());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lunekit: inradius bounds for lambda-convex domains in constant curvature"};
  app.require_subcommand(1);

  double kappa = 0.0, lambda = 1.0, length = 0.0, h = 1e-3;
  bool as_json = false;
  auto* rho_cmd = app.add_subcommand("rho", "Evaluate the lune inradius rho_lambda(L)");
  rho_cmd->add_option("--kappa", kappa, "Curvature")->required();
  rho_cmd->add_option("--lambda", lambda, "Curvature lower bound of the boundary")->required();
  rho_cmd->add_option("--length", length, "Boundary length L")->required();
  rho_cmd->add_flag("--json", as_json, "Print a JSON record");

  std::string out, svg;
  auto* lune_cmd = app.add_subcommand("lune", "Build a lune and write its boundary samples");
  lune_cmd->add_option("--kappa", kappa)->required();
  lune_cmd->add_option("--lambda", lambda)->required();
  lune_cmd->add_option("--length", length)->required();
  lune_cmd->add_option("--step", h, "Boundary sampling step")->capture_default_str();
  lune_cmd->add_option("--out", out, "Domain JSON path")->required();
  lune_cmd->add_option("--svg", svg, "Optional SVG path");

  std::uint64_t seed = 1;
  int n_supports = 3, count = 1;
  auto* gen_cmd = app.add_subcommand("gen", "Generate random lambda-convex domains");
  gen_cmd->add_option("--kappa", kappa)->required();
  gen_cmd->add_option("--lambda", lambda)->required();
  gen_cmd->add_option("--seed", seed)->required();
  gen_cmd->add_option("--n-supports", n_supports)->capture_default_str();
  gen_cmd->add_option("--count", count)->capture_default_str();
  gen_cmd->add_option("--step", h, "Boundary sampling step")->capture_default_str();
  gen_cmd->add_option("--out", out, "Output directory")->required();

  std::string spec_path, report_path, csv_path;
  int threads = 0;
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification corpus");
  verify_cmd->add_option("--spec", spec_path, "Corpus spec JSON")->required();
  verify_cmd->add_option("--report", report_path, "Report JSON path")->required();
  verify_cmd->add_option("--csv", csv_path, "Per-domain CSV path");
  verify_cmd->add_option("--threads", threads, "Worker threads (default LUNEKIT_THREADS or all cores)");

  std::string in, projection;
  std::vector<std::string> annotate;
  auto* render_cmd = app.add_subcommand("render", "Render a domain file as SVG");
  render_cmd->add_option("--in", in, "Domain JSON")->required();
  render_cmd->add_option("--svg", svg, "SVG path")->required();
  render_cmd->add_option("--annotate", annotate, "inradius, circumradius or chord")->take_all();
  render_cmd->add_option("--projection", projection, "plane, poincare or orthographic");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (*rho_cmd) return cmd_rho(kappa, lambda, length, as_json);
    if (*lune_cmd) return cmd_lune(kappa, lambda, length, h, out, svg);
    if (*gen_cmd) return cmd_gen(kappa, lambda, seed, n_supports, count, h, out);
    if (*verify_cmd) return cmd_verify(spec_path, report_path, csv_path, threads);
    if (*render_cmd) return cmd_render(in, svg, annotate, projection);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const GeometryError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kOk;
}
