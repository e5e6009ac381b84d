#include "bnls/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "bnls/asymptotics.hpp"
#include "bnls/best_constant.hpp"
#include "bnls/config.hpp"
#include "bnls/constants.hpp"
#include "bnls/errors.hpp"
#include "bnls/families.hpp"
#include "bnls/field_io.hpp"
#include "bnls/field_ops.hpp"
#include "bnls/functionals.hpp"
#include "bnls/manifest.hpp"
#include "bnls/measure_ratio.hpp"
#include "bnls/minimize.hpp"
#include "bnls/profiles.hpp"
#include "bnls/region.hpp"
#include "bnls/report.hpp"
#include "bnls/scan.hpp"
#include "bnls/util.hpp"
#include "bnls/witness.hpp"

namespace bnls {

const char* kArtifactVersion = "1.0.0";

namespace {

namespace fs = std::filesystem;

struct GlobalArgs {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int jobs = 0;  // 0 = available parallelism
  std::vector<std::string> waive;
  bool resolution_doubling = false;
};

std::string slug(const std::string& command) {
  std::string s = command;
  for (char& ch : s)
    if (ch == ' ') ch = '-';
  return s;
}

// Carries everything one command execution accumulates: consumed config,
// output records, validation flags. finish() writes the manifest and turns
// the flag summary into the exit code.
struct RunContext {
  Config cfg;
  std::string command;
  std::string outdir;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::vector<std::string> waive;
  bool resolution_doubling = false;
  std::vector<OutputRecord> outputs;
  std::vector<ValidationRecord> validation;
  std::chrono::steady_clock::time_point t0;

  bool is_waived(const std::string& name) const {
    return std::find(waive.begin(), waive.end(), name) != waive.end();
  }

  void add_flag(const ValidationFlag& f) {
    validation.push_back(
        {f.name, f.pass, is_waived(f.name), f.measured, f.bound});
  }
  void add_flags(const std::vector<ValidationFlag>& fs) {
    for (const ValidationFlag& f : fs) add_flag(f);
  }
  void add_check(const std::string& name, bool pass, double measured,
                 double bound) {
    validation.push_back({name, pass, is_waived(name), measured, bound});
  }

  void write_output(const std::string& name, const std::string& content) {
    atomic_write_file(outdir + "/" + name, content);
    outputs.push_back({name, content.size(), fnv1a64(content)});
  }
  // For files written by library serializers (field payload + sidecar).
  void record_file(const std::string& name) {
    const std::string bytes = read_file(outdir + "/" + name);
    outputs.push_back({name, bytes.size(), fnv1a64(bytes)});
  }

  int finish() {
    bool all = true;
    for (const ValidationRecord& v : validation)
      if (!v.pass && !v.waived) all = false;
    const int code = all ? 0 : 1;

    RunManifest m;
    m.artifact_version = kArtifactVersion;
    m.command = command;
    m.config_text = cfg.text();
    m.seed = seed;
    m.jobs = jobs;
    m.resolution_doubling = resolution_doubling;
    m.waived = waive;
    m.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    m.outputs = outputs;
    m.validation = validation;
    m.exit_code = code;
    atomic_write_file(outdir + "/manifest.json", manifest_json(m));

    for (const ValidationRecord& v : validation)
      std::cout << (v.pass ? "[pass] " : v.waived ? "[waived] " : "[FAIL] ")
                << command << ": " << v.name << "  measured=" << fmt17(v.measured)
                << " bound=" << fmt17(v.bound) << "\n";
    std::cout << command << ": wrote " << outputs.size() + 1 << " file(s) to "
              << outdir << "\n";
    return code;
  }
};

RunContext make_context(const GlobalArgs& ga, const std::string& command) {
  RunContext ctx;
  ctx.t0 = std::chrono::steady_clock::now();
  ctx.command = command;
  ctx.cfg = ga.config_path.empty()
                ? Config::from_text("", "<defaults>")
                : Config::from_file(ga.config_path);
  if (!ga.out_dir.empty()) {
    ctx.outdir = ga.out_dir;
  } else {
    const char* root = std::getenv("BNLS_OUT_ROOT");
    ctx.outdir = std::string(root && *root ? root : "out") + "/" + slug(command);
  }
  ctx.seed = ga.seed_given ? ga.seed
                           : ctx.cfg.get_u64_or("solver.seed", 20240809ULL);
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  ctx.jobs = ga.jobs > 0 ? ga.jobs : std::max(1, hw);
  ctx.waive = ga.waive;
  ctx.resolution_doubling = ga.resolution_doubling;
  fs::create_directories(ctx.outdir);
  return ctx;
}

Grid grid_from(Config& cfg, int scale = 1) {
  const int dim = static_cast<int>(cfg.get_int_or("grid.dim", 1));
  const int n = static_cast<int>(cfg.get_int_or("grid.n", 256));
  const double L = cfg.get_double_or("grid.L", 20.0);
  return make_grid(dim, n * scale, L);
}

SolverOptions solver_from(Config& cfg, const RunContext& ctx) {
  SolverOptions o;
  o.max_iter = static_cast<int>(cfg.get_int_or("solver.max_iter", o.max_iter));
  o.value_tol = cfg.get_double_or("solver.value_tol", o.value_tol);
  o.grad_tol = cfg.get_double_or("solver.grad_tol", o.grad_tol);
  o.stall_window =
      static_cast<int>(cfg.get_int_or("solver.stall_window", o.stall_window));
  o.random_starts =
      static_cast<int>(cfg.get_int_or("solver.random_starts", o.random_starts));
  o.start_band = cfg.get_double_or("solver.start_band", o.start_band);
  o.collect_history = cfg.get_bool_or("solver.collect_history", true);
  o.mu0_hint = cfg.get_double_or("solver.mu0_hint", 0.0);
  o.kstar_hint = cfg.get_double_or("solver.kstar_hint", 0.0);
  o.seed = ctx.seed;
  return o;
}

// scan.values = 1, 2, 3   or   scan.min/.max/.count with scan.spacing.
std::vector<double> param_grid_from(Config& cfg,
                                    const std::vector<double>& fallback,
                                    const std::string& default_spacing) {
  if (cfg.has("scan.values")) return cfg.get_list("scan.values");
  if (!cfg.has("scan.min") && !cfg.has("scan.max") && !cfg.has("scan.count"))
    return fallback;
  const double lo = cfg.get_double("scan.min");
  const double hi = cfg.get_double("scan.max");
  const int count = static_cast<int>(cfg.get_int_or("scan.count", 9));
  const std::string spacing = cfg.get_string_or("scan.spacing", default_spacing);
  if (count < 2 || !(lo < hi) || (spacing == "log" && !(lo > 0.0)))
    throw ConfigError("scan.min/max/count: need min < max, count >= 2, and "
                      "min > 0 for log spacing");
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) {
    const double th = static_cast<double>(i) / (count - 1);
    out[i] = spacing == "log" ? lo * std::pow(hi / lo, th)
                              : lo + (hi - lo) * th;
  }
  if (spacing != "log" && spacing != "linear")
    throw ConfigError("scan.spacing must be 'log' or 'linear'");
  return out;
}

Field field_from(Config& cfg, const Grid& g, std::uint64_t seed) {
  const std::string kind = cfg.get_string_or("field.kind", "gaussian");
  Field u;
  if (kind == "gaussian") {
    u = gaussian_wave(g, cfg.get_double_or("field.tau", 3.0),
                      cfg.get_double_or("field.xi0", 1.0));
  } else if (kind == "annulus") {
    u = annulus_bump(g, cfg.get_double_or("field.eps", 0.3));
  } else if (kind == "random") {
    Rng rng(seed);
    u = random_band_limited(g, rng, cfg.get_double_or("field.band", 3.0));
  } else if (kind == "file") {
    u = load_field(cfg.get_string("field.path"));
  } else {
    throw ConfigError("field.kind must be gaussian|annulus|random|file");
  }
  if (cfg.has("field.mass")) set_mass(u, cfg.get_double("field.mass"));
  return u;
}

void solver_json(JsonWriter& w, const SolverOptions& o) {
  w.begin_object();
  w.key("max_iter").value(o.max_iter);
  w.kv("value_tol", o.value_tol);
  w.kv("grad_tol", o.grad_tol);
  w.key("stall_window").value(o.stall_window);
  w.key("random_starts").value(o.random_starts);
  w.kv("start_band", o.start_band);
  w.kv("seed", o.seed);
  w.end_object();
}

// ----------------------------------------------------------------- commands

int cmd_functionals(const GlobalArgs& ga) {
  RunContext ctx = make_context(ga, "functionals");
  const double sigma = ctx.cfg.get_double_or("problem.sigma", 1.0);
  const double c = ctx.cfg.get_double_or("problem.c", 1.0);
  Grid g = grid_from(ctx.cfg);
  Field u = field_from(ctx.cfg, g, ctx.seed);
  ctx.cfg.check_consumed();

  const FunctionalReport f = functional_suite(u, {sigma, c});
  const int dim = u.grid.dim;
  const std::string js = functional_json(f, dim, sigma, c);
  ctx.write_output("functionals.json", js);
  std::cout << js;
  return ctx.finish();
}

MinimizerResult dispatch_minimizer(const std::string& kind, double sigma,
                                   double c, double m, const Grid& g,
                                   const SolverOptions& so) {
  if (kind == "pm") return minimize_global(m, {sigma, 0.0}, g, so);
  if (kind == "tc") return minimize_Tc(c, sigma, g, so);
  if (kind == "a") return minimize_A(sigma, g, so);
  if (kind == "ac") return minimize_Ac(c, sigma, g, so);
  return minimize_local(m, sigma, g, so);
}

int cmd_minimize(const GlobalArgs& ga, const std::string& kind) {
  RunContext ctx = make_context(ga, "minimize " + kind);
  const bool uses_c = kind == "tc" || kind == "ac";
  const bool uses_m = kind == "pm" || kind == "local";
  const double sigma = ctx.cfg.get_double_or("problem.sigma", 1.0);
  const double c = uses_c ? ctx.cfg.get_double_or("problem.c", 1.0) : 0.0;
  const double m = uses_m ? ctx.cfg.get_double_or("problem.mass", 1.0) : 0.0;
  Grid g = grid_from(ctx.cfg);
  SolverOptions so = solver_from(ctx.cfg, ctx);
  ctx.cfg.check_consumed();

  const MinimizerResult r = dispatch_minimizer(kind, sigma, c, m, g, so);
  const double param = uses_c ? c : uses_m ? m : sigma;
  const std::string base = "minimize_" + kind;
  ctx.write_output(base + ".json", result_json(r, kind, g.dim, sigma, param));
  ctx.write_output(base + "_history.csv", history_csv(r.history));
  save_field(r.field, ctx.outdir + "/" + base + ".field");
  ctx.record_file(base + ".field");
  ctx.record_file(base + ".field.json");

  ctx.add_check("converged", r.converged, r.residual_grad, so.grad_tol);
  if (kind == "pm" || kind == "tc" || kind == "local") {
    const double ident =
        std::max(std::max(r.residual_nehari, r.residual_pohozaev),
                 std::max(r.residual_p1, r.residual_p2));
    ctx.add_check("identities", ident <= 1e-5, ident, 1e-5);
  } else {
    ctx.add_check("nehari", r.residual_nehari <= 1e-5, r.residual_nehari,
                  1e-5);
  }
  ctx.add_check("euler", r.residual_euler <= 1e-5, r.residual_euler, 1e-5);
  if (kind == "tc") {
    const double mm = std::abs(r.multiplier - c) / (1.0 + c);
    ctx.add_check("multiplier-match", mm <= 1e-4, mm, 1e-4);
  }
  if (kind == "pm" || kind == "local")
    ctx.add_check("nondegenerate", !r.degenerate, r.degenerate ? 1.0 : 0.0,
                  0.0);

  if (ctx.resolution_doubling) {
    const Grid g2 = make_grid(g.dim, 2 * g.n, g.L);
    const MinimizerResult r2 = dispatch_minimizer(kind, sigma, c, m, g2, so);
    ctx.write_output(base + "_2n.json",
                     result_json(r2, kind, g2.dim, sigma, param));
    const double drift =
        std::abs(r2.value - r.value) / std::max(1.0, std::abs(r.value));
    ctx.add_check("resolution-drift", drift <= 1e-6, drift, 1e-6);
  }
  return ctx.finish();
}

int cmd_scan(const GlobalArgs& ga, const std::string& kind) {
  RunContext ctx = make_context(ga, "scan " + kind);
  double sigma_default = kind == "etilde" ? 6.0 : 1.0;
  const double sigma = ctx.cfg.get_double_or("problem.sigma", sigma_default);
  std::vector<double> fallback;
  if (kind == "tc") {
    fallback.resize(9);
    for (int i = 0; i < 9; ++i)
      fallback[i] = 0.01 * std::pow(1e4, i / 8.0);
  } else if (kind == "emin") {
    fallback = {0.25, 0.5, 1.0, 2.0, 4.0};
  } else {
    fallback = {0.5, 1.0, 1.5};
  }
  const std::vector<double> grid_vals =
      param_grid_from(ctx.cfg, fallback, kind == "tc" ? "log" : "linear");
  Grid g = grid_from(ctx.cfg);
  SolverOptions so = solver_from(ctx.cfg, ctx);
  ctx.cfg.check_consumed();

  auto run_one = [&](const Grid& gg) {
    if (kind == "emin") return scan_Emin(grid_vals, {sigma, 0.0}, gg, so, ctx.jobs);
    if (kind == "tc") return scan_tc(grid_vals, sigma, gg, so, ctx.jobs);
    return scan_Etilde(grid_vals, sigma, gg, so, ctx.jobs);
  };
  const BranchCurve curve = run_one(g);

  const std::string base = "scan_" + kind;
  ctx.write_output(base + ".csv", curve_csv(curve));
  JsonWriter w;
  w.begin_object();
  w.kv("artifact_version", std::string(kArtifactVersion));
  w.key("solver");
  solver_json(w, so);
  w.key("curve");
  curve_json(w, curve);
  w.end_object();
  ctx.write_output(base + ".json", w.str() + "\n");
  ctx.add_flags(curve.flags);

  if (ctx.resolution_doubling) {
    const Grid g2 = make_grid(g.dim, 2 * g.n, g.L);
    const BranchCurve curve2 = run_one(g2);
    ctx.write_output(base + "_2n.csv", curve_csv(curve2));
    double drift = 0.0;
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
      const BranchPoint& p = curve.points[i];
      const BranchPoint& q = curve2.points[i];
      if (p.failed || q.failed) continue;
      drift = std::max(drift, std::abs(q.value - p.value) /
                                  std::max(1.0, std::abs(p.value)));
    }
    ctx.add_check("resolution-drift", drift <= 1e-6, drift, 1e-6);
  }
  return ctx.finish();
}

int cmd_ineq_classify(const GlobalArgs& ga) {
  RunContext ctx = make_context(ga, "ineq classify");
  const int dim = static_cast<int>(ctx.cfg.get_int_or("ineq.dim", 1));
  const double s = ctx.cfg.get_double_or("ineq.s", 2.0);
  const double p = ctx.cfg.get_double_or("ineq.p", 4.0);
  const double kappa = ctx.cfg.get_double_or("ineq.kappa", 0.5);
  ctx.cfg.check_consumed();

  const RegionPoint pt = classify_region(dim, s, p, kappa);
  JsonWriter w;
  region_json(w, pt);
  ctx.write_output("region.json", w.str() + "\n");
  std::string csv = "dim,s,p,kappa,cond_half,cond_lower,cond_upper,classification\n";
  csv += std::to_string(pt.dim) + ',' + fmt17(pt.s) + ',' + fmt17(pt.p) + ',' +
         fmt17(pt.kappa) + ',' + (pt.cond_half ? "1" : "0") + ',' +
         (pt.cond_lower ? "1" : "0") + ',' + (pt.cond_upper ? "1" : "0") +
         ',' + boundedness_name(pt.classification) + '\n';
  ctx.write_output("region.csv", csv);
  std::cout << "classification: " << boundedness_name(pt.classification)
            << "\n";
  return ctx.finish();
}

int cmd_ineq_profile(const GlobalArgs& ga, const std::string& which) {
  RunContext ctx = make_context(ga, "ineq profile-" + which);
  const int dim = static_cast<int>(ctx.cfg.get_int_or("ineq.dim", 1));
  const double s = ctx.cfg.get_double_or("ineq.s", 2.0);
  const double p = ctx.cfg.get_double_or("ineq.p", 4.0);
  const double kappa = ctx.cfg.get_double_or("ineq.kappa", 0.5);
  const double t_min = ctx.cfg.get_double_or("profile.t_min", 1e-3);
  const double t_max = ctx.cfg.get_double_or("profile.t_max", 1e3);
  const int count = static_cast<int>(ctx.cfg.get_int_or("profile.count", 25));
  ctx.cfg.check_consumed();

  const std::vector<double> tg = log_grid(t_min, t_max, count);
  const ProfileCurve pc = which == "f" ? profile_F(s, p, kappa, dim, tg)
                                       : profile_G(s, p, kappa, dim, tg);
  ctx.write_output("profile_" + which + ".csv", profile_csv(pc));
  JsonWriter w;
  profile_json(w, pc);
  ctx.write_output("profile_" + which + ".json", w.str() + "\n");

  const double d0 = std::abs(pc.slope0 - pc.exponent0);
  const double di = std::abs(pc.slope_inf - pc.exponent_inf);
  ctx.add_check("end-slope-0", d0 <= 0.02, d0, 0.02);
  ctx.add_check("end-slope-inf", di <= 0.02, di, 0.02);
  std::cout << "verdict: " << pc.verdict << "\n";
  return ctx.finish();
}

int cmd_ineq_witness(const GlobalArgs& ga) {
  RunContext ctx = make_context(ga, "ineq witness");
  const int dim = static_cast<int>(ctx.cfg.get_int_or("ineq.dim", 1));
  const double s = ctx.cfg.get_double_or("ineq.s", 2.0);
  const double p = ctx.cfg.get_double_or("ineq.p", 4.0);
  const double kappa = ctx.cfg.get_double_or("ineq.kappa", 0.5);
  const std::string family =
      ctx.cfg.get_string_or("witness.family", "gaussian");
  std::vector<double> fallback;
  if (family == "knapp") {
    fallback = log_grid(0.03, 0.3, 7);
  } else {
    fallback = log_grid(10.0, 100.0, 7);
  }
  const std::vector<double> params =
      ctx.cfg.get_list_or("witness.params", fallback);
  const double delta = ctx.cfg.get_double_or("witness.delta", 0.4);
  const int n_override =
      static_cast<int>(ctx.cfg.get_int_or("witness.n", 0));
  ctx.cfg.check_consumed();

  const WitnessSweep sw =
      witness_sweep(family, params, s, p, kappa, dim, delta, n_override);
  ctx.write_output("witness.csv", witness_csv(sw));
  JsonWriter w;
  witness_json(w, sw);
  ctx.write_output("witness.json", w.str() + "\n");

  if (family == "knapp") {
    const bool ok = sw.fitted_slope * sw.predicted_slope > 0.0;
    ctx.add_check("slope-sign", ok, sw.fitted_slope, 0.0);
  } else {
    const double d = std::abs(sw.fitted_slope - sw.predicted_slope);
    ctx.add_check("slope-match", d <= 0.05, d, 0.05);
  }
  std::cout << "verdict: " << sw.verdict << "\n";
  return ctx.finish();
}

int cmd_ineq_oracle(const GlobalArgs& ga) {
  RunContext ctx = make_context(ga, "ineq oracle");
  const int count = static_cast<int>(ctx.cfg.get_int_or("oracle.instances", 50));
  const int size = static_cast<int>(ctx.cfg.get_int_or("oracle.size", 6));
  const double kappa0 = ctx.cfg.get_double_or("oracle.kappa", 0.0);
  const double q0 = ctx.cfg.get_double_or("oracle.q", 0.0);
  ctx.cfg.check_consumed();
  if (count < 1 || size < 2 || size > 16)
    throw ConfigError("oracle.instances >= 1 and 2 <= oracle.size <= 16");

  Rng rng(ctx.seed);
  std::string csv = "instance,kappa,q,M1,M2,t_star,ratio,predicted,rel_err\n";
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const double kappa = kappa0 > 0.0 ? kappa0 : rng.uniform(0.15, 0.85);
    const double q = q0 > 0.0 ? q0 : rng.uniform(1.0, 1.9);
    FiniteMeasureInstance inst = random_instance(rng, size, kappa, q);
    const MeasureRatioResult res =
        finite_measure_oracle(inst, child_seed(ctx.seed, i));
    const double rel = std::abs(res.ratio / res.predicted_ratio - 1.0);
    worst = std::max(worst, rel);
    csv += std::to_string(i) + ',' + fmt17(kappa) + ',' + fmt17(q) + ',' +
           fmt17(res.M1) + ',' + fmt17(res.M2) + ',' + fmt17(res.t_star) +
           ',' + fmt17(res.ratio) + ',' + fmt17(res.predicted_ratio) + ',' +
           fmt17(rel) + '\n';
  }
  ctx.write_output("oracle.csv", csv);
  JsonWriter w;
  w.begin_object();
  w.key("instances").value(count);
  w.key("size").value(size);
  w.kv("worst_rel_err", worst);
  w.end_object();
  ctx.write_output("oracle.json", w.str() + "\n");
  ctx.add_check("oracle-ratio", worst <= 1e-3, worst, 1e-3);
  return ctx.finish();
}

int cmd_ineq_estimate_m(const GlobalArgs& ga) {
  RunContext ctx = make_context(ga, "ineq estimate-m");
  const double sig = ctx.cfg.get_double_or("estm.sigma", 0.0);
  double s = 2.0, p = 4.0, kappa = 0.5;
  if (sig > 0.0) {
    s = 2.0;
    p = 2.0 * sig + 2.0;
    kappa = sig / (sig + 1.0);
  } else {
    s = ctx.cfg.get_double_or("ineq.s", 2.0);
    p = ctx.cfg.get_double_or("ineq.p", 4.0);
    kappa = ctx.cfg.get_double_or("ineq.kappa", 0.5);
  }
  std::optional<double> R;
  if (ctx.cfg.has("estm.restriction_R"))
    R = ctx.cfg.get_double("estm.restriction_R");
  AscentOptions ao;
  ao.max_iter = static_cast<int>(ctx.cfg.get_int_or("ascent.max_iter", ao.max_iter));
  ao.grad_tol = ctx.cfg.get_double_or("ascent.grad_tol", ao.grad_tol);
  ao.value_tol = ctx.cfg.get_double_or("ascent.value_tol", ao.value_tol);
  ao.starts = static_cast<int>(ctx.cfg.get_int_or("ascent.starts", ao.starts));
  ao.seed = ctx.seed;
  Grid g = grid_from(ctx.cfg);
  ctx.cfg.check_consumed();

  const AscentResult res = estimate_M(s, p, kappa, R, g, ao);
  JsonWriter w;
  w.begin_object();
  w.kv("s", s);
  w.kv("p", p);
  w.kv("kappa", kappa);
  w.kv("M", res.M);
  w.kv("m0", res.m0);
  w.kv("m0_valid", res.m0_valid);
  w.key("iterations").value(res.iterations);
  w.kv("converged", res.converged);
  w.kv("restricted", res.restricted);
  w.kv("restriction_R", res.restriction_R);
  w.key("start_values").begin_array();
  for (double v : res.start_values) w.value(v);
  w.end_array();
  w.end_object();
  ctx.write_output("estimate_m.json", w.str() + "\n");
  save_field(res.maximizer, ctx.outdir + "/estimate_m.field");
  ctx.record_file("estimate_m.field");
  ctx.record_file("estimate_m.field.json");
  ctx.add_check("converged", res.converged, res.M, 0.0);
  std::cout << "M = " << fmt17(res.M) << "  m0 = " << fmt17(res.m0) << "\n";
  return ctx.finish();
}

int cmd_constants(const GlobalArgs& ga) {
  RunContext ctx = make_context(ga, "constants");
  const double sigma = ctx.cfg.get_double_or("problem.sigma", 1.0);
  std::optional<double> R;
  if (ctx.cfg.has("constants.restriction_R"))
    R = ctx.cfg.get_double("constants.restriction_R");
  Grid g = grid_from(ctx.cfg);
  SolverOptions so = solver_from(ctx.cfg, ctx);
  ctx.cfg.check_consumed();

  const ConstantsReport rep = best_constants(sigma, g, so, R);
  const std::string js = constants_json(rep);
  ctx.write_output("constants.json", js);
  std::cout << js;
  ctx.add_check("scaling-identity", rep.identity_residual <= 1e-6,
                rep.identity_residual, 1e-6);
  return ctx.finish();
}

int cmd_asym_small(const GlobalArgs& ga) {
  RunContext ctx = make_context(ga, "asymptotics small-c");
  const double sigma = ctx.cfg.get_double_or("problem.sigma", 1.0);
  const std::vector<double> cg =
      ctx.cfg.get_list_or("asymptotics.c_values", {1.0, 0.3, 0.1, 0.03});
  Grid g = grid_from(ctx.cfg);
  SolverOptions so = solver_from(ctx.cfg, ctx);
  ctx.cfg.check_consumed();

  const SmallCReport rep = small_c_degeneration_check(cg, sigma, g, so);
  ctx.write_output("small_c.csv", small_c_csv(rep));
  ctx.write_output("small_c.json", small_c_json(rep));
  ctx.add_flags(rep.flags);
  return ctx.finish();
}

int cmd_asym_large(const GlobalArgs& ga) {
  RunContext ctx = make_context(ga, "asymptotics large-c");
  const double sigma = ctx.cfg.get_double_or("problem.sigma", 1.0);
  const double c = ctx.cfg.get_double_or("asymptotics.c", 100.0);
  Grid g = grid_from(ctx.cfg);
  SolverOptions so = solver_from(ctx.cfg, ctx);
  ctx.cfg.check_consumed();

  const LargeCReport rep = large_c_rescaling_check(c, sigma, g, so);
  ctx.write_output("large_c.json", large_c_json(rep));
  ctx.add_flags(rep.flags);
  return ctx.finish();
}

int cmd_rerun(const GlobalArgs& ga, const std::string& manifest_path) {
  const RunManifest orig = parse_manifest(read_file(manifest_path));
  std::string newdir = ga.out_dir;
  if (newdir.empty()) {
    fs::path mp(manifest_path);
    newdir = (mp.parent_path() / "rerun").string();
  }
  fs::create_directories(newdir);
  const std::string snapshot = newdir + "/config.snapshot.cfg";
  atomic_write_file(snapshot, orig.config_text);

  std::vector<std::string> args;
  std::istringstream cmd(orig.command);
  for (std::string tok; cmd >> tok;) args.push_back(tok);
  args.insert(args.end(), {"--config", snapshot, "--out", newdir, "--seed",
                           std::to_string(orig.seed), "--jobs",
                           std::to_string(orig.jobs)});
  for (const std::string& wv : orig.waived) {
    args.push_back("--waive");
    args.push_back(wv);
  }
  if (orig.resolution_doubling) args.push_back("--resolution-doubling");

  const int inner = run_cli(args);
  if (inner == 2 || inner == 3) {
    std::cerr << "rerun: inner run failed with exit " << inner << "\n";
    return inner;
  }

  int mismatches = 0;
  JsonWriter w;
  w.begin_object();
  w.kv("manifest", manifest_path);
  w.key("inner_exit").value(inner);
  w.key("outputs").begin_array();
  for (const OutputRecord& o : orig.outputs) {
    bool match = false;
    std::uint64_t got = 0, bytes = 0;
    try {
      const std::string content = read_file(newdir + "/" + o.file);
      got = fnv1a64(content);
      bytes = content.size();
      match = got == o.fnv1a64 && bytes == o.bytes;
    } catch (const ConfigError&) {
      match = false;
    }
    if (!match) ++mismatches;
    w.begin_object();
    w.kv("file", o.file);
    w.kv("match", match);
    w.end_object();
  }
  w.end_array();
  w.kv("identical", mismatches == 0);
  w.end_object();
  atomic_write_file(newdir + "/rerun_report.json", w.str() + "\n");
  std::cout << "rerun: " << (orig.outputs.size() - mismatches) << "/"
            << orig.outputs.size() << " outputs byte-identical\n";
  return mismatches == 0 ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  GlobalArgs ga;
  std::string manifest_path;
  int rc = 0;

  CLI::App app{
      "Variational solver and inequality laboratory for the "
      "mixed-dispersion fourth-order NLS.\n"
      "Exit codes: 0 pass/waived, 1 validation failure, 2 config error, "
      "3 regime-guard error.\n"
      "Default output root: $BNLS_OUT_ROOT (falls back to ./out).",
      "bnls"};
  app.require_subcommand(1);
  app.add_option("--config", ga.config_path,
                 "line-oriented key = value config file");
  app.add_option("--out", ga.out_dir, "output directory for artifacts");
  auto* seed_opt =
      app.add_option("--seed", ga.seed, "master RNG seed (overrides config)");
  app.add_option("--jobs", ga.jobs,
                 "worker-pool width for sweeps (default: hardware)");
  app.add_option("--waive", ga.waive,
                 "validation flag name to waive (repeatable)")
      ->allow_extra_args(false);
  app.add_flag("--resolution-doubling", ga.resolution_doubling,
               "rerun at doubled per-axis resolution and report drift");

  auto bind = [&](CLI::App* leaf, std::function<int()> fn) {
    leaf->fallthrough();
    // Callbacks fire inside parse(); resolve the seed override first.
    leaf->callback([&rc, &ga, seed_opt, fn = std::move(fn)] {
      ga.seed_given = seed_opt->count() > 0;
      rc = fn();
    });
  };

  bind(app.add_subcommand("functionals",
                          "evaluate the functional suite on a field\n"
                          "(JSON: E,Sc,Tc,Kc,K,D,Nc,Pc,P1,P2,lambda,c_of_u)"),
       [&] { return cmd_functionals(ga); });

  CLI::App* mini = app.add_subcommand("minimize", "constrained minimizers");
  mini->require_subcommand(1);
  mini->fallthrough();
  bind(mini->add_subcommand("pm", "E over fixed mass (subcritical)"),
       [&] { return cmd_minimize(ga, "pm"); });
  bind(mini->add_subcommand("tc", "T_c on the unit L^{2s+2} sphere"),
       [&] { return cmd_minimize(ga, "tc"); });
  bind(mini->add_subcommand("a", "K = bilap + mass on the unit sphere"),
       [&] { return cmd_minimize(ga, "a"); });
  bind(mini->add_subcommand("ac", "K_c on the unit sphere"),
       [&] { return cmd_minimize(ga, "ac"); });
  bind(mini->add_subcommand("local", "fiber-projected local branch (Ns > 4)"),
       [&] { return cmd_minimize(ga, "local"); });

  CLI::App* scan = app.add_subcommand("scan", "validated branch sweeps");
  scan->require_subcommand(1);
  scan->fallthrough();
  bind(scan->add_subcommand("emin",
                            "E_min(m)  CSV: param,value,multiplier,"
                            "residual_max,flags,mass,bilap2,grad2,shifted2,"
                            "lp,D,iterations,note"),
       [&] { return cmd_scan(ga, "emin"); });
  bind(scan->add_subcommand("tc", "t(c) sweep (same CSV columns)"),
       [&] { return cmd_scan(ga, "tc"); });
  bind(scan->add_subcommand("etilde",
                            "local-branch Etilde_min(m) sweep (same columns)"),
       [&] { return cmd_scan(ga, "etilde"); });

  CLI::App* ineq = app.add_subcommand("ineq", "interpolation-inequality lab");
  ineq->require_subcommand(1);
  ineq->fallthrough();
  bind(ineq->add_subcommand("classify", "exact boundedness classification"),
       [&] { return cmd_ineq_classify(ga); });
  bind(ineq->add_subcommand("profile-f",
                            "radial profile F(t)  CSV: t,value"),
       [&] { return cmd_ineq_profile(ga, "f"); });
  bind(ineq->add_subcommand("profile-g",
                            "radial profile G(t)  CSV: t,value"),
       [&] { return cmd_ineq_profile(ga, "g"); });
  bind(ineq->add_subcommand("witness",
                            "family sweeps  CSV: param,q_value,spectral_tail"),
       [&] { return cmd_ineq_witness(ga); });
  bind(ineq->add_subcommand("oracle",
                            "finite-measure two-constant identity  CSV: "
                            "instance,kappa,q,M1,M2,t_star,ratio,predicted,"
                            "rel_err"),
       [&] { return cmd_ineq_oracle(ga); });
  bind(ineq->add_subcommand("estimate-m",
                            "gradient-ascent lower bound on sup Q_kappa"),
       [&] { return cmd_ineq_estimate_m(ga); });

  bind(app.add_subcommand("constants",
                          "best constants I,B,C and thresholds k*,m0,mu0"),
       [&] { return cmd_constants(ga); });

  CLI::App* asym = app.add_subcommand("asymptotics", "regime checks");
  asym->require_subcommand(1);
  asym->fallthrough();
  bind(asym->add_subcommand("small-c",
                            "frequency-shell degeneration  CSV: c,bilap_ratio,"
                            "grad_ratio,shifted_ratio,lp_probe"),
       [&] { return cmd_asym_small(ga); });
  bind(asym->add_subcommand("large-c", "rescaled convergence to the K minimizer"),
       [&] { return cmd_asym_large(ga); });

  CLI::App* rr = app.add_subcommand(
      "rerun", "re-execute a manifest and compare outputs byte-for-byte");
  rr->add_option("manifest", manifest_path, "path to manifest.json")
      ->required();
  bind(rr, [&] { return cmd_rerun(ga, manifest_path); });

  std::vector<const char*> argv;
  argv.push_back("bnls");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const RegimeError& e) {
    std::cerr << "regime error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "run failed: " << e.what() << "\n";
    return 1;
  }
  return rc;
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args);
}

}  // namespace bnls
