#include "bnls/minimize.hpp"
#include "bnls/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "bnls/families.hpp"
#include "bnls/fiber.hpp"
#include "bnls/field_ops.hpp"
#include "bnls/norms.hpp"
#include "bnls/scaling.hpp"

namespace bnls {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Per-mode |xi|^2 for the whole grid (row-major, matching Field storage).
std::vector<double> k2_table(const Grid& g) {
  std::vector<double> t(g.size());
  int idx[3];
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    unflatten(g, flat, idx);
    double k2 = 0.0;
    for (int ax = 0; ax < g.dim; ++ax) {
      const double xi = g.xi(idx[ax]);
      k2 += xi * xi;
    }
    t[flat] = k2;
  }
  return t;
}

std::vector<double> precond_table(const std::vector<double>& k2) {
  std::vector<double> p(k2.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = 1.0 / (1.0 + k2[i] * k2[i]);
  return p;
}

double quad_value(const Field& uh, const std::vector<double>& sym) {
  KahanSum s;
  for (std::size_t i = 0; i < uh.data.size(); ++i)
    s.add(sym[i] * std::norm(uh.data[i]));
  return s.value() / uh.grid.box_volume();
}

// uh -= tau * pre .* d   (all Fourier representation)
void step_preconditioned(Field& uh, double tau, const Field& d,
                         const std::vector<double>& pre) {
  for (std::size_t i = 0; i < uh.data.size(); ++i)
    uh.data[i] -= tau * pre[i] * d.data[i];
}

// <d, pre .* d> with the Fourier weight: the Armijo descent slope.
double precond_slope(const Field& d, const std::vector<double>& pre) {
  KahanSum s;
  for (std::size_t i = 0; i < d.data.size(); ++i)
    s.add(pre[i] * std::norm(d.data[i]));
  return s.value() / d.grid.box_volume();
}

// || pre .* d ||_{L^2}: the preconditioned gradient residual.
double precond_norm(const Field& d, const std::vector<double>& pre) {
  KahanSum s;
  for (std::size_t i = 0; i < d.data.size(); ++i)
    s.add(pre[i] * pre[i] * std::norm(d.data[i]));
  return std::sqrt(s.value() / d.grid.box_volume());
}

// hat(|u|^{p-2} u) computed from the cached physical-space field.
Field nonlinear_hat(const Field& phys, double p) {
  Field nl(phys.grid, Rep::Physical);
  const double e = p - 2.0;
  for (std::size_t i = 0; i < phys.data.size(); ++i) {
    const double a2 = std::norm(phys.data[i]);
    const double w = a2 > 0.0 ? std::pow(a2, 0.5 * e) : 0.0;
    nl.data[i] = w * phys.data[i];
  }
  transform_inplace(nl, Rep::Fourier);
  return nl;
}

struct History {
  std::vector<HistoryEntry> entries;
  int stride = 1;
  bool enabled = true;

  void push(int iter, double value, double grad) {
    if (!enabled || iter % stride != 0) return;
    if (!entries.empty() && entries.back().iter == iter) return;
    entries.push_back({iter, value, grad});
    if (entries.size() >= 1000) {
      std::vector<HistoryEntry> half;
      half.reserve(512);
      for (std::size_t i = 0; i < entries.size(); i += 2)
        half.push_back(entries[i]);
      entries.swap(half);
      stride *= 2;
    }
  }
};

struct FlowOutcome {
  Field uh;  // Fourier representation, on the constraint set
  double value = kInf;
  double grad_res = kInf;
  int iterations = 0;
  bool converged = false;
  bool usable = false;  // start was feasible and at least evaluated
  std::vector<HistoryEntry> history;
};

// Shared preconditioned-Armijo descent driver.  A problem type provides
//   void   project(Field& uh)           -- renormalize onto the constraint
//   double value(const Field& uh)       -- objective; +inf marks infeasible;
//                                          caches state for gradient()
//   void   gradient(const Field& uh, Field& g)
//                                       -- L^2 gradient (constraint-projected)
//                                          at the last point passed to value()
template <class Problem>
FlowOutcome run_flow(Problem& prob, Field uh, const std::vector<double>& pre,
                     const SolverOptions& opts) {
  FlowOutcome out;
  transform_inplace(uh, Rep::Fourier);
  prob.project(uh);
  double val = prob.value(uh);
  if (!std::isfinite(val)) return out;  // infeasible start
  out.usable = true;

  Field g(uh.grid, Rep::Fourier);
  Field trial(uh.grid, Rep::Fourier);
  History hist;
  hist.enabled = opts.collect_history;
  double tau = 0.5;
  int stall = 0;
  int it = 0;
  double grad_res = kInf;
  bool converged = false;
  // Futility guard: once the objective has stalled, a healthy flow still
  // shrinks the gradient every few steps.  If it stops improving for this
  // many iterations the residual has hit its floating-point floor and more
  // iterations only burn time.
  const int futility_window = std::max(200, 20 * opts.stall_window);
  double best_grad = kInf;
  int since_grad_improved = 0;

  for (it = 1; it <= opts.max_iter; ++it) {
    prob.gradient(uh, g);
    grad_res = precond_norm(g, pre);
    hist.push(it, val, grad_res);
    if (stall >= opts.stall_window && grad_res < opts.grad_tol) {
      converged = true;
      break;
    }
    if (grad_res < best_grad * (1.0 - 1e-3)) {
      best_grad = grad_res;
      since_grad_improved = 0;
    } else if (++since_grad_improved >= futility_window &&
               stall >= opts.stall_window) {
      converged = grad_res < opts.grad_tol;
      break;
    }

    const double slope = precond_slope(g, pre);
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      trial = uh;
      step_preconditioned(trial, tau, g, pre);
      prob.project(trial);
      const double tval = prob.value(trial);
      if (std::isfinite(tval) && tval <= val - 1e-4 * tau * slope) {
        const double rel = std::abs(val - tval) / std::max(1.0, std::abs(tval));
        stall = rel < opts.value_tol ? stall + 1 : 0;
        uh.data.swap(trial.data);
        val = tval;
        tau = std::min(tau * 1.25, 4.0);
        accepted = true;
        break;
      }
      tau *= 0.5;
    }
    if (!accepted) {
      // Step size is at the numerical floor; the objective cannot decrease
      // further in this metric.  Re-evaluate the cache at the kept point so
      // any degenerate/finalization logic sees the right state.
      val = prob.value(uh);
      converged = grad_res < opts.grad_tol;
      break;
    }
  }
  if (it > opts.max_iter) it = opts.max_iter;

  out.uh = std::move(uh);
  out.value = val;
  out.grad_res = grad_res;
  out.iterations = it;
  out.converged = converged;
  if (hist.enabled && (hist.entries.empty() || hist.entries.back().iter < it))
    hist.entries.push_back({it, val, grad_res});
  out.history = std::move(hist.entries);
  return out;
}

// Plane wave at the grid mode nearest |xi| = 1 plus small band-limited noise:
// reaches the shell-concentrated (vanishing) branch that localized starts
// miss in the degenerate small-mass regime.
Field plane_with_noise(const Grid& g, Rng& rng) {
  Field u = random_band_limited(g, rng, 3.0);
  set_mass(u, 1.0);
  scale_inplace(u, 0.05);
  const int kc = std::max(1, static_cast<int>(std::lround(g.L / M_PI)));
  const double xi0 = M_PI * kc / g.L;
  int idx[3];
  for (std::size_t flat = 0; flat < u.data.size(); ++flat) {
    unflatten(g, flat, idx);
    const double ph = xi0 * g.x(idx[0]);
    u.data[flat] += cplx(std::cos(ph), std::sin(ph));
  }
  return u;
}

std::vector<Field> default_starts(const Grid& g, const SolverOptions& opts,
                                  bool shell_starts) {
  std::vector<Field> starts;
  starts.push_back(gaussian_wave(g, 3.0, 1.0));
  if (shell_starts) {
    Rng rng(opts.seed ^ 0x9e3779b97f4a7c15ULL);
    starts.push_back(plane_with_noise(g, rng));
    starts.push_back(annulus_bump(g, 0.3));
  }
  for (int s = 0; s < opts.random_starts; ++s) {
    Rng rng(opts.seed + static_cast<std::uint64_t>(s));
    starts.push_back(random_band_limited(g, rng, opts.start_band));
  }
  for (const Field& e : opts.extra_starts) starts.push_back(e);
  return starts;
}

// Best outcome across starts: lowest value, ties (1e-8 relative) broken by
// the smaller ||Lap u||^2.
template <class Problem>
FlowOutcome multistart(Problem& prob, const Grid& g, const SolverOptions& opts,
                       bool shell_starts) {
  std::vector<Field> starts = default_starts(g, opts, shell_starts);
  FlowOutcome best;
  double best_bilap = kInf;
  bool any = false;
  for (Field& s : starts) {
    if (!(s.grid == g))
      throw std::invalid_argument("minimize: start field on a different grid");
    FlowOutcome o = run_flow(prob, std::move(s), prob.pre, opts);
    if (!o.usable) continue;
    any = true;
    const double tie = 1e-8 * std::max(1.0, std::abs(best.value));
    if (o.value < best.value - tie) {
      best = std::move(o);
      best_bilap = sobolev_norms(best.uh).bilap2;
    } else if (o.value < best.value + tie) {
      const double bl = sobolev_norms(o.uh).bilap2;
      if (bl < best_bilap) {
        best = std::move(o);
        best_bilap = bl;
      }
    }
  }
  if (!any)
    throw std::runtime_error(
        "minimize: no feasible start (fiber membership failed for every "
        "initial field)");
  return best;
}

// ---------------------------------------------------------------------------
// Rayleigh-type flows: minimize a spectral quadratic over ||u||_{L^p} = 1.

struct RayleighProblem {
  const std::vector<double>& sym;
  const std::vector<double>& pre;
  double p;
  Field phys;  // cache: physical field at the last value() point

  void project(Field& uh) { set_lp_unit(uh, p); }

  double value(const Field& uh) {
    phys = transform(uh, Rep::Physical);
    return quad_value(uh, sym);
  }

  void gradient(const Field& uh, Field& g) {
    const double val = quad_value(uh, sym);
    g = nonlinear_hat(phys, p);
    for (std::size_t i = 0; i < g.data.size(); ++i)
      g.data[i] = sym[i] * uh.data[i] - val * g.data[i];
  }
};

// ---------------------------------------------------------------------------
// Mass-constrained energy flow.

struct EnergyProblem {
  const std::vector<double>& sym;  // |xi|^4 - 2 |xi|^2
  const std::vector<double>& pre;
  double sigma;
  double m;
  Field phys;  // cache

  void project(Field& uh) { set_mass(uh, m); }

  double value(const Field& uh) {
    phys = transform(uh, Rep::Physical);
    const double p = 2.0 * sigma + 2.0;
    KahanSum spk;
    for (const cplx& z : phys.data) spk.add(std::pow(std::norm(z), 0.5 * p));
    const double sp = spk.value() * phys.grid.cell_volume();
    return quad_value(uh, sym) - sp / (sigma + 1.0);
  }

  void gradient(const Field& uh, Field& g) {
    g = nonlinear_hat(phys, 2.0 * sigma + 2.0);
    for (std::size_t i = 0; i < g.data.size(); ++i)
      g.data[i] = 2.0 * (sym[i] * uh.data[i] - g.data[i]);
    const double proj = inner_real(g, uh) / m;
    axpy(g, -proj, uh);
  }
};

// ---------------------------------------------------------------------------
// Fiber-projected energy flow (the envelope of the dilation profile).
//
// The iterate v carries the minimizer in dilation coordinates: the actual
// state is u = v_{t1(v)} with P1(u) = 0 exactly.  The envelope objective
// Etilde(v) = phi_v(t1) has gradient (envelope theorem; phi'(t1) = 0)
//   grad = 2 [ t1^2 |xi|^4 - 2 t1 |xi|^2 ] vhat - 2 t1^q hat(|v|^{2s} v),
// which is the pullback of the energy gradient at u.  Infeasible states
// (no fiber root) evaluate to +inf and are rejected by the line search.

struct FiberProblem {
  const std::vector<double>& k2;
  const std::vector<double>& pre;
  double sigma;
  double m;
  Field phys;      // cache
  FiberRoots fr;   // cache

  void project(Field& uh) { set_mass(uh, m); }

  double value(const Field& uh) {
    phys = transform(uh, Rep::Physical);
    const double p = 2.0 * sigma + 2.0;
    KahanSum spk;
    for (const cplx& z : phys.data) spk.add(std::pow(std::norm(z), 0.5 * p));
    const double sp = spk.value() * phys.grid.cell_volume();
    KahanSum ak, bk;
    for (std::size_t i = 0; i < uh.data.size(); ++i) {
      const double w = std::norm(uh.data[i]);
      ak.add(k2[i] * k2[i] * w);
      bk.add(k2[i] * w);
    }
    const double a = ak.value() / uh.grid.box_volume();
    const double b = bk.value() / uh.grid.box_volume();
    const double q = 0.5 * uh.grid.dim * (2.0 * sigma);
    fr = fiber_roots_from(a, b, sp / (sigma + 1.0), q);
    if (!fr.exists) return kInf;
    return fiber_phi(fr, fr.t1);
  }

  void gradient(const Field& uh, Field& g) {
    const double t1 = fr.t1;
    const double q = fr.q;
    g = nonlinear_hat(phys, 2.0 * sigma + 2.0);
    const double tq = std::pow(t1, q);
    for (std::size_t i = 0; i < g.data.size(); ++i) {
      const double quad = t1 * t1 * k2[i] * k2[i] - 2.0 * t1 * k2[i];
      g.data[i] = 2.0 * (quad * uh.data[i] - tq * g.data[i]);
    }
    const double proj = inner_real(g, uh) / m;
    axpy(g, -proj, uh);
  }
};

// ---------------------------------------------------------------------------
// Finalization helpers.

bool degenerate_state(const NormReport& nr, double lp, double sigma) {
  if (lp < 1e-6) return true;
  const double S = std::pow(lp, 2.0 * sigma + 2.0);
  return S / ((sigma + 1.0) * nr.mass) < 1e-3 && nr.shifted2 / nr.mass < 1e-3;
}

// Relative residual of  sym(D) v = |v|^{2s} v  in L^2.
double symbol_euler_residual(const Field& vh, const Field& vphys,
                             const std::vector<double>& sym, double sigma) {
  Field nl = nonlinear_hat(vphys, 2.0 * sigma + 2.0);
  double rr = 0.0, lhs = 0.0, rhs = 0.0;
  for (std::size_t i = 0; i < vh.data.size(); ++i) {
    const cplx a = sym[i] * vh.data[i];
    const cplx r = a - nl.data[i];
    rr += std::norm(r);
    lhs += std::norm(a);
    rhs += std::norm(nl.data[i]);
  }
  const double scale = std::sqrt(std::max(lhs, rhs));
  return scale > 0.0 ? std::sqrt(rr) / scale : std::sqrt(rr);
}

void fill_identity_residuals(MinimizerResult& r, const FunctionalReport& fr) {
  const double scale = std::max(std::abs(fr.Tc), 1e-300);
  r.residual_nehari = std::abs(fr.Nc) / scale;
  r.residual_pohozaev = std::abs(fr.Pc) / scale;
  r.residual_p1 = std::abs(fr.P1) / scale;
  r.residual_p2 = std::abs(fr.P2) / scale;
  r.multiplier = fr.c_of_u;
  r.mass = fr.mass;
}

// Energy-subcriticality (N-4) sigma < 4 holds automatically for the
// supported dimensions N <= 3; only positivity needs checking.
void check_sigma_subcritical(double sigma, int /*dim*/) {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw std::invalid_argument("minimize: sigma must be positive and finite");
}

MinimizerResult finalize_rayleigh(FlowOutcome&& out,
                                  const std::vector<double>& sym, double sigma,
                                  const SolverOptions& opts) {
  MinimizerResult r;
  r.value = out.value;
  r.tc_value = out.value;
  r.iterations = out.iterations;
  r.converged = out.converged;
  r.residual_grad = out.grad_res;
  r.history = std::move(out.history);
  r.seed = opts.seed;

  // Materialize the ground state v = value^{1/(2 sigma)} u; it solves
  // sym(D) v = |v|^{2s} v exactly in the continuum.
  Field v = std::move(out.uh);
  scale_inplace(v, std::pow(r.value, 1.0 / (2.0 * sigma)));
  Field vphys = transform(v, Rep::Physical);
  r.residual_euler = symbol_euler_residual(v, vphys, sym, sigma);

  gauge_fix(vphys);
  r.field = std::move(vphys);
  return r;
}

}  // namespace

double gns_threshold_constant(int N, double sigma) {
  const double r = 4.0 * (sigma + 1.0) / (N * sigma);
  return r * std::pow(r - 1.0, 1.0 / r - 1.0);
  // C = r (r-1)^{Nsigma/(4(sigma+1)) - 1} with Nsigma/(4(sigma+1)) = 1/r.
}

double mu0_from_B(double B, int N, double sigma) {
  const double ns = N * sigma;
  if (!(ns > 4.0))
    throw RegimeError("mu0: requires N sigma > 4");
  const double lead = (ns / (4.0 * (sigma + 1.0))) * (0.5 * ns - 1.0);
  const double tail = (ns - 2.0) / (ns - 4.0);
  return std::pow(B, -1.0 / sigma) * std::pow(lead, -1.0 / sigma) *
         std::pow(tail, 2.0 / sigma - 0.5 * N);
}

MinimizerResult minimize_Tc(double c, double sigma, const Grid& g,
                            const SolverOptions& opts) {
  if (!(c > 0.0)) throw std::invalid_argument("minimize_Tc: c must be > 0");
  check_sigma_subcritical(sigma, g.dim);
  const std::vector<double> k2 = k2_table(g);
  const std::vector<double> pre = precond_table(k2);
  std::vector<double> sym(k2.size());
  for (std::size_t i = 0; i < sym.size(); ++i) {
    const double d = k2[i] - 1.0;
    sym[i] = d * d + c;
  }
  RayleighProblem prob{sym, pre, 2.0 * sigma + 2.0, Field()};
  FlowOutcome out = multistart(prob, g, opts, /*shell_starts=*/false);
  MinimizerResult r =
      finalize_rayleigh(std::move(out), sym, sigma, opts);
  fill_identity_residuals(r, functional_suite(r.field, ProblemParams{sigma, c}));
  return r;
}

MinimizerResult minimize_A(double sigma, const Grid& g,
                           const SolverOptions& opts) {
  check_sigma_subcritical(sigma, g.dim);
  const std::vector<double> k2 = k2_table(g);
  const std::vector<double> pre = precond_table(k2);
  std::vector<double> sym(k2.size());
  for (std::size_t i = 0; i < sym.size(); ++i)
    sym[i] = k2[i] * k2[i] + 1.0;
  RayleighProblem prob{sym, pre, 2.0 * sigma + 2.0, Field()};
  FlowOutcome out = multistart(prob, g, opts, /*shell_starts=*/false);
  MinimizerResult r =
      finalize_rayleigh(std::move(out), sym, sigma, opts);
  // Only the Nehari-type identity K(v) = S(v) applies to the pure problem;
  // the mixed-symbol identities are not meaningful here.
  const NormReport nr = sobolev_norms(r.field);
  const double S =
      std::pow(lp_norm(r.field, 2.0 * sigma + 2.0), 2.0 * sigma + 2.0);
  const double K = nr.bilap2 + nr.mass;
  r.residual_nehari = std::abs(K - S) / std::max(K, 1e-300);
  r.residual_pohozaev = kNaN;
  r.residual_p1 = kNaN;
  r.residual_p2 = kNaN;
  r.multiplier = kNaN;
  r.mass = nr.mass;
  return r;
}

MinimizerResult minimize_Ac(double c, double sigma, const Grid& g,
                            const SolverOptions& opts) {
  if (!(c > 0.0)) throw std::invalid_argument("minimize_Ac: c must be > 0");
  check_sigma_subcritical(sigma, g.dim);
  const std::vector<double> k2 = k2_table(g);
  const std::vector<double> pre = precond_table(k2);
  const double mix = 2.0 / std::sqrt(1.0 + c);
  std::vector<double> sym(k2.size());
  for (std::size_t i = 0; i < sym.size(); ++i)
    sym[i] = k2[i] * k2[i] - mix * k2[i] + 1.0;
  RayleighProblem prob{sym, pre, 2.0 * sigma + 2.0, Field()};
  FlowOutcome out = multistart(prob, g, opts, /*shell_starts=*/false);
  MinimizerResult r =
      finalize_rayleigh(std::move(out), sym, sigma, opts);
  const NormReport nr = sobolev_norms(r.field);
  const double S =
      std::pow(lp_norm(r.field, 2.0 * sigma + 2.0), 2.0 * sigma + 2.0);
  const double Kc = nr.bilap2 - mix * nr.grad2 + nr.mass;
  r.residual_nehari = std::abs(Kc - S) / std::max(Kc, 1e-300);
  r.residual_pohozaev = kNaN;
  r.residual_p1 = kNaN;
  r.residual_p2 = kNaN;
  r.multiplier = kNaN;
  r.mass = nr.mass;
  return r;
}

MinimizerResult minimize_global(double m, const ProblemParams& pp,
                                const Grid& g, const SolverOptions& opts) {
  if (!(m > 0.0)) throw std::invalid_argument("minimize_global: m must be > 0");
  const double sigma = pp.sigma;
  check_sigma_subcritical(sigma, g.dim);
  const double crit = 4.0 / g.dim;
  if (sigma > crit + 1e-12)
    throw RegimeError(
        "minimize_global: mass-supercritical sigma (E unbounded below); use "
        "minimize_local");
  if (std::abs(sigma - crit) <= 1e-12) {
    double kstar = opts.kstar_hint;
    if (kstar <= 0.0) {
      SolverOptions aopts = opts;
      aopts.collect_history = false;
      aopts.extra_starts.clear();
      const MinimizerResult qa = minimize_A(sigma, g, aopts);
      const double B = gns_quotient(qa.field, sigma);
      kstar = std::pow(sigma + 1.0, 1.0 / sigma) * std::pow(B, -1.0 / sigma);
    }
    if (m >= kstar)
      throw RegimeError(
          "minimize_global: critical regime with mass >= k* (E_min = "
          "-infinity)");
  }

  const std::vector<double> k2 = k2_table(g);
  const std::vector<double> pre = precond_table(k2);
  std::vector<double> sym(k2.size());
  for (std::size_t i = 0; i < sym.size(); ++i)
    sym[i] = k2[i] * k2[i] - 2.0 * k2[i];
  EnergyProblem prob{sym, pre, sigma, m, Field()};
  FlowOutcome out = multistart(prob, g, opts, /*shell_starts=*/true);

  MinimizerResult r;
  r.value = out.value;
  r.iterations = out.iterations;
  r.converged = out.converged;
  r.residual_grad = out.grad_res;
  r.history = std::move(out.history);
  r.seed = opts.seed;

  Field u = std::move(out.uh);
  Field uphys = transform(u, Rep::Physical);
  const NormReport nr = sobolev_norms(u);
  r.degenerate =
      degenerate_state(nr, lp_norm(uphys, 2.0 * sigma + 2.0), sigma);

  const double lambda = lagrange_multiplier(uphys, sigma);
  const double c_of_u = -lambda - 1.0;
  fill_identity_residuals(r, functional_suite(uphys, ProblemParams{sigma, c_of_u}));
  // Nehari at c = c(u) vanishes by the definition of the multiplier; the
  // informative residuals are the Pohozaev family and the Euler equation.
  std::vector<double> esym(k2.size());
  for (std::size_t i = 0; i < esym.size(); ++i)
    esym[i] = sym[i] + (1.0 + c_of_u);
  r.residual_euler = symbol_euler_residual(u, uphys, esym, sigma);

  gauge_fix(uphys);
  r.field = std::move(uphys);
  return r;
}

MinimizerResult minimize_local(double m, double sigma, const Grid& g,
                               const SolverOptions& opts) {
  if (!(m > 0.0)) throw std::invalid_argument("minimize_local: m must be > 0");
  check_sigma_subcritical(sigma, g.dim);
  if (!(g.dim * sigma > 4.0))
    throw RegimeError(
        "minimize_local: requires mass-supercritical sigma (N sigma > 4); use "
        "minimize_global");
  double mu0 = opts.mu0_hint;
  if (mu0 <= 0.0) {
    SolverOptions aopts = opts;
    aopts.collect_history = false;
    aopts.extra_starts.clear();
    const MinimizerResult qa = minimize_A(sigma, g, aopts);
    const double B = gns_quotient(qa.field, sigma);
    mu0 = mu0_from_B(B, g.dim, sigma);
  }
  if (m >= mu0)
    throw RegimeError(
        "minimize_local: mass " + std::to_string(m) +
        " is not below the fiber-membership threshold mu0 = " +
        std::to_string(mu0));

  const std::vector<double> k2 = k2_table(g);
  const std::vector<double> pre = precond_table(k2);
  FiberProblem prob{k2, pre, sigma, m, Field(), FiberRoots()};
  FlowOutcome out = multistart(prob, g, opts, /*shell_starts=*/true);

  MinimizerResult r;
  r.value = out.value;
  r.iterations = out.iterations;
  r.converged = out.converged;
  r.residual_grad = out.grad_res;
  r.history = std::move(out.history);
  r.seed = opts.seed;

  // The reduced objective is invariant along the dilation orbit v -> v_t,
  // so the iterate is only a representative of the fiber-critical state
  // v_{t1}.  Report v_{t1} through the exact dilation laws
  //   ||Lap v_t||^2 = t^2 a,  ||grad v_t||^2 = t b,
  //   ||v_t||_{2s+2}^{2s+2} = t^q (s+1) cc,  ||v_t||_2^2 = m,
  // rather than resampling the grid field, which is ill-conditioned for
  // spread-out (non-attained) states.
  Field v = transform(out.uh, Rep::Physical);
  const FiberRoots fr = fiber_roots(v, sigma);
  if (!fr.exists)
    throw std::runtime_error("minimize_local: fiber membership lost at the "
                             "final iterate");
  const double t1 = fr.t1;
  NormReport nr{};
  nr.mass = m;
  nr.bilap2 = t1 * t1 * fr.a;
  nr.grad2 = t1 * fr.b;
  nr.shifted2 = nr.bilap2 - 2.0 * nr.grad2 + m;
  const double S_t = std::pow(t1, fr.q) * (sigma + 1.0) * fr.cc;
  const double lp = std::pow(S_t, 1.0 / (2.0 * sigma + 2.0));
  r.degenerate = degenerate_state(nr, lp, sigma);

  // lambda < 0 whenever the fiber root exists (phi(t1) < phi(0) = 0), so
  // the associated c(u) = -lambda - 1 always satisfies 1 + c > 0.
  const double lambda = (nr.bilap2 - 2.0 * nr.grad2 - S_t) / m;
  const double c_of_u = -lambda - 1.0;
  fill_identity_residuals(
      r, functional_suite_from(nr, lp, g.dim, ProblemParams{sigma, c_of_u}));

  // Euler residual of v_{t1} evaluated on v: pulling the equation
  // Lap^2 u - 2 Lap u + (1+c) u = |u|^{2s} u back through the dilation
  // gives  t1^2 Lap^2 v - 2 t1 Lap v + (1+c) v = t1^q |v|^{2s} v,  and the
  // relative residual is invariant under dividing the symbol by t1^q.
  const double tq = std::pow(t1, fr.q);
  std::vector<double> esym(k2.size());
  for (std::size_t i = 0; i < esym.size(); ++i)
    esym[i] =
        (t1 * t1 * k2[i] * k2[i] - 2.0 * t1 * k2[i] + (1.0 + c_of_u)) / tq;
  r.residual_euler = symbol_euler_residual(out.uh, v, esym, sigma);

  gauge_fix(v);
  r.field = std::move(v);
  return r;
}

}  // namespace bnls
