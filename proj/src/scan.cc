#include "bnls/scan.hpp"
#include "bnls/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "bnls/functionals.hpp"
#include "bnls/norms.hpp"

namespace bnls {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_grid(const std::vector<double>& grid, const char* what) {
  if (grid.empty())
    throw std::invalid_argument(std::string(what) + ": empty parameter grid");
  if (!(grid.front() > 0.0))
    throw std::invalid_argument(std::string(what) +
                                ": parameters must be positive");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument(std::string(what) +
                                  ": grid must be strictly increasing");
}

double residual_max_of(const MinimizerResult& r) {
  double m = 0.0;
  for (double v : {r.residual_nehari, r.residual_pohozaev, r.residual_p1,
                   r.residual_p2})
    if (std::isfinite(v)) m = std::max(m, v);
  return m;
}

BranchPoint point_from(double param, const MinimizerResult& r, double sigma,
                       double c_for_suite) {
  BranchPoint p;
  p.param = param;
  p.value = r.value;
  p.multiplier = r.multiplier;
  p.residual_max = residual_max_of(r);
  p.iterations = r.iterations;
  p.converged = r.converged;
  p.degenerate = r.degenerate;
  const FunctionalReport fr =
      functional_suite(r.field, ProblemParams{sigma, c_for_suite});
  p.mass = fr.mass;
  p.bilap2 = fr.bilap2;
  p.grad2 = fr.grad2;
  p.shifted2 = fr.shifted2;
  p.lp = fr.lp;
  p.D = fr.D;
  return p;
}

// Runs `solve` over all indices.  jobs <= 1: sequential in descending index
// order, feeding each result's field to the next point as a warm start.
// jobs > 1: a worker pool over independent points.
template <class Solve>
std::vector<BranchPoint> run_sweep(std::size_t count, int jobs,
                                   Solve&& solve) {
  std::vector<BranchPoint> pts(count);
  if (jobs <= 1) {
    Field warm;
    bool have_warm = false;
    for (std::size_t k = 0; k < count; ++k) {
      const std::size_t i = count - 1 - k;
      Field next;
      bool got = false;
      pts[i] = solve(i, have_warm ? &warm : nullptr, &next, &got);
      if (got) {
        warm = std::move(next);
        have_warm = true;
      }
    }
    return pts;
  }
  std::atomic<std::size_t> cursor{0};
  auto worker = [&]() {
    for (std::size_t i; (i = cursor.fetch_add(1)) < count;) {
      Field next;
      bool got = false;
      pts[i] = solve(i, nullptr, &next, &got);
    }
  };
  const std::size_t width =
      std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
  std::vector<std::thread> pool;
  pool.reserve(width);
  for (std::size_t t = 0; t < width; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  return pts;
}

BranchPoint failed_point(double param, const std::string& why) {
  BranchPoint p;
  p.param = param;
  p.failed = true;
  p.note = why;
  return p;
}

void add_flag(BranchCurve& curve, const std::string& name, bool pass,
              double measured, double bound, const std::string& detail) {
  curve.flags.push_back(ValidationFlag{name, pass, measured, bound, detail});
}

std::vector<const BranchPoint*> valid_points(const BranchCurve& curve) {
  std::vector<const BranchPoint*> v;
  for (const BranchPoint& p : curve.points)
    if (!p.failed) v.push_back(&p);
  return v;
}

void coverage_flag(BranchCurve& curve) {
  int failed = 0;
  std::string first;
  for (const BranchPoint& p : curve.points)
    if (p.failed) {
      ++failed;
      if (first.empty()) first = p.note;
    }
  add_flag(curve, "coverage", failed == 0, static_cast<double>(failed), 0.0,
           failed == 0 ? "all points solved" : first);
}

// Independent best-constant pair (I, B) from the pure-symbol problem.
std::pair<double, double> independent_I_B(double sigma, const Grid& g,
                                          const SolverOptions& opts) {
  SolverOptions aopts = opts;
  aopts.collect_history = false;
  aopts.extra_starts.clear();
  const MinimizerResult qa = minimize_A(sigma, g, aopts);
  return {qa.value, gns_quotient(qa.field, sigma)};
}

}  // namespace

BranchCurve scan_Emin(const std::vector<double>& m_grid,
                      const ProblemParams& pp, const Grid& g,
                      const SolverOptions& opts, int jobs) {
  check_grid(m_grid, "scan_Emin");
  const double sigma = pp.sigma;
  BranchCurve curve;
  curve.kind = "emin";
  curve.dim = g.dim;
  curve.sigma = sigma;
  curve.grid = m_grid;
  curve.seed = opts.seed;

  const double crit = 4.0 / g.dim;
  if (sigma > crit + 1e-12)
    throw RegimeError(
        "scan_Emin: mass-supercritical sigma (E_min = -infinity); use "
        "scan_Etilde");
  double kstar = kInf;
  if (std::abs(sigma - crit) <= 1e-12) {
    const auto ib = independent_I_B(sigma, g, opts);
    kstar = std::pow(sigma + 1.0, 1.0 / sigma) *
            std::pow(ib.second, -1.0 / sigma);
  }

  curve.points = run_sweep(
      m_grid.size(), jobs,
      [&](std::size_t i, const Field* warm, Field* warm_out, bool* got) {
        const double m = m_grid[i];
        if (m >= kstar)
          return failed_point(
              m, "refused: m >= k* = " + std::to_string(kstar) +
                     " (critical regime, E_min = -infinity)");
        SolverOptions po = opts;
        po.seed = opts.seed + static_cast<std::uint64_t>(i);
        po.kstar_hint = std::isfinite(kstar) ? kstar : 0.0;
        if (warm) po.extra_starts.push_back(*warm);
        try {
          MinimizerResult r = minimize_global(m, pp, g, po);
          *warm_out = r.field;
          *got = true;
          return point_from(m, r, sigma, r.multiplier);
        } catch (const std::exception& e) {
          return failed_point(m, e.what());
        }
      });

  coverage_flag(curve);
  const auto vp = valid_points(curve);

  {  // E_min(m) <= -m
    double worst = -kInf;
    for (const BranchPoint* p : vp)
      worst = std::max(worst, p->value + p->param);
    add_flag(curve, "upper-bound", worst <= 1e-6, worst, 1e-6,
             "max of E_min(m) + m over the grid");
  }
  {  // concavity via second divided differences
    double worst = -kInf;
    for (std::size_t i = 1; i + 1 < vp.size(); ++i) {
      const double m0 = vp[i - 1]->param, m1 = vp[i]->param,
                   m2 = vp[i + 1]->param;
      const double e0 = vp[i - 1]->value, e1 = vp[i]->value,
                   e2 = vp[i + 1]->value;
      const double dd = 2.0 * (e0 / ((m1 - m0) * (m2 - m0)) -
                               e1 / ((m1 - m0) * (m2 - m1)) +
                               e2 / ((m2 - m1) * (m2 - m0)));
      const double scale = (std::abs(e0) + 2.0 * std::abs(e1) +
                            std::abs(e2)) /
                               ((m2 - m0) * (m2 - m0)) +
                           1e-300;
      worst = std::max(worst, dd / scale);
    }
    add_flag(curve, "concave", worst <= 1e-6, worst, 1e-6,
             "max normalized second divided difference");
  }
  {  // multipliers strictly increasing with m
    bool ok = true;
    double worst = kInf;
    for (std::size_t i = 1; i < vp.size(); ++i) {
      const double gap = vp[i]->multiplier - vp[i - 1]->multiplier;
      worst = std::min(worst, gap);
      if (!(gap > 0.0)) ok = false;
    }
    add_flag(curve, "multiplier-increasing", ok,
             vp.size() > 1 ? worst : 0.0, 0.0,
             "min consecutive multiplier gap");
  }
  {  // E_min(m)/m -> -1 on the bottom decade
    const double lo = vp.empty() ? 0.0 : vp.front()->param;
    bool trend = true;
    double prev = -kInf;
    double at_min = 0.0;
    for (const BranchPoint* p : vp) {
      if (p->param > 10.0 * lo) break;
      const double dev = std::abs(p->value / p->param + 1.0);
      if (p->param == lo) at_min = dev;
      if (dev < prev - 1e-12) trend = false;
      prev = dev;
    }
    add_flag(curve, "limit-minus-one", trend && at_min <= 0.1, at_min, 0.1,
             "|E_min/m + 1| at the smallest mass; deviation non-decreasing "
             "in m over the bottom decade");
  }
  if (sigma < crit - 1e-12) {  // E_min(m)/m decreasing on the top decade
    const double hi = vp.empty() ? 0.0 : vp.back()->param;
    bool ok = true;
    double prev = kInf;
    double worst = -kInf;
    for (const BranchPoint* p : vp) {
      if (p->param < hi / 10.0) continue;
      const double ratio = p->value / p->param;
      if (prev < kInf) {
        worst = std::max(worst, ratio - prev);
        if (!(ratio < prev + 1e-12)) ok = false;
      }
      prev = ratio;
    }
    add_flag(curve, "ratio-decreasing-top", ok, worst, 0.0,
             "max consecutive increase of E_min/m on the top decade");
  }
  return curve;
}

BranchCurve scan_tc(const std::vector<double>& c_grid, double sigma,
                    const Grid& g, const SolverOptions& opts, int jobs) {
  check_grid(c_grid, "scan_tc");
  BranchCurve curve;
  curve.kind = "tc";
  curve.dim = g.dim;
  curve.sigma = sigma;
  curve.grid = c_grid;
  curve.seed = opts.seed;

  const auto ib = independent_I_B(sigma, g, opts);
  const double I = ib.first;
  curve.I_independent = I;

  curve.points = run_sweep(
      c_grid.size(), jobs,
      [&](std::size_t i, const Field* warm, Field* warm_out, bool* got) {
        const double c = c_grid[i];
        SolverOptions po = opts;
        po.seed = opts.seed + static_cast<std::uint64_t>(i);
        if (warm) po.extra_starts.push_back(*warm);
        try {
          MinimizerResult r = minimize_Tc(c, sigma, g, po);
          *warm_out = r.field;
          *got = true;
          return point_from(c, r, sigma, c);
        } catch (const std::exception& e) {
          return failed_point(c, e.what());
        }
      });

  coverage_flag(curve);
  const auto vp = valid_points(curve);
  const int N = g.dim;
  const double expo = 1.0 - N * sigma / (4.0 * (sigma + 1.0));

  {  // strict monotonicity of t(c)
    bool ok = true;
    double worst = kInf;
    for (std::size_t i = 1; i < vp.size(); ++i) {
      const double gap = vp[i]->value - vp[i - 1]->value;
      worst = std::min(worst, gap);
      if (!(gap > 0.0)) ok = false;
    }
    add_flag(curve, "monotone", ok, vp.size() > 1 ? worst : 0.0, 0.0,
             "min consecutive t(c) increment");
  }
  {  // two-sided estimate with independent I
    bool ok = true;
    double worst = kInf;
    for (const BranchPoint* p : vp) {
      const double up = std::pow(1.0 + p->param, expo) * I;
      const double lo = (1.0 - 1.0 / std::sqrt(1.0 + p->param)) * up;
      const double margin =
          std::min(p->value - lo, up - p->value) / std::max(p->value, 1e-300);
      worst = std::min(worst, margin);
      if (!(p->value > lo && p->value < up)) ok = false;
    }
    add_flag(curve, "sandwich", ok, worst, 0.0,
             "min relative distance of t(c) to the (tc-estimate) bounds");
  }
  {  // t(c)/sqrt(c) bounded on the bottom decade (policy bound 10*I)
    const double lo = vp.empty() ? 0.0 : vp.front()->param;
    double worst = 0.0;
    for (const BranchPoint* p : vp) {
      if (p->param > 10.0 * lo) break;
      worst = std::max(worst, p->value / std::sqrt(p->param));
    }
    add_flag(curve, "small-c-bounded", worst <= 10.0 * I, worst, 10.0 * I,
             "max t(c)/sqrt(c) over the bottom decade vs policy bound 10*I");
  }
  {  // large-c limits (converge-m/d/si) at the largest two points, 5%
    const double Ip = std::pow(I, (sigma + 1.0) / sigma);
    const double lim_m =
        (4.0 * (sigma + 1.0) - N * sigma) / (4.0 * (sigma + 1.0)) * Ip;
    const double lim_d = N * sigma / (4.0 * (sigma + 1.0)) * Ip;
    const double lim_si = Ip;
    bool ok = true;
    double worst = 0.0;
    std::string detail;
    const std::size_t first = vp.size() > 2 ? vp.size() - 2 : 0;
    for (std::size_t i = first; i < vp.size(); ++i) {
      const BranchPoint* p = vp[i];
      const double om = 1.0 + p->param;
      const double em = std::pow(om, 0.25 * N - 1.0 / sigma) * p->mass;
      const double ed =
          std::pow(om, 0.25 * N - 1.0 / sigma - 1.0) * p->bilap2;
      const double esi = std::pow(om, 0.25 * N - 1.0 / sigma - 1.0) *
                         std::pow(p->lp, 2.0 * sigma + 2.0);
      const double gm = std::abs(em / lim_m - 1.0);
      const double gd = std::abs(ed / lim_d - 1.0);
      const double gsi = std::abs(esi / lim_si - 1.0);
      worst = std::max({worst, gm, gd, gsi});
      if (worst > 0.05) ok = false;
      if (i + 1 == vp.size())
        detail = "gaps at c=" + std::to_string(p->param) + ": m=" +
                 std::to_string(gm) + " d=" + std::to_string(gd) +
                 " si=" + std::to_string(gsi);
    }
    add_flag(curve, "large-c-limits", ok, worst, 0.05, detail);
  }
  {  // multiplier of the ground state reproduces c
    bool ok = true;
    double worst = 0.0;
    for (const BranchPoint* p : vp) {
      const double dev =
          std::abs(p->multiplier - p->param) / (1.0 + p->param);
      worst = std::max(worst, dev);
      if (dev > 1e-4) ok = false;
    }
    add_flag(curve, "multiplier-match", ok, worst, 1e-4,
             "max |c(u) - c| / (1 + c)");
  }
  if (std::abs(sigma - 4.0 / N) <= 1e-12) {
    // mass-critical: ||u_c||^2 -> k* at the largest point, 5%
    const double kstar = std::pow(sigma + 1.0, 1.0 / sigma) *
                         std::pow(ib.second, -1.0 / sigma);
    if (!vp.empty()) {
      const double dev = std::abs(vp.back()->mass / kstar - 1.0);
      add_flag(curve, "critical-mass-limit", dev <= 0.05, dev, 0.05,
               "| ||u_c||^2 / k* - 1 | at the largest c");
    }
  }
  return curve;
}

BranchCurve scan_Etilde(const std::vector<double>& m_grid, double sigma,
                        const Grid& g, const SolverOptions& opts, int jobs) {
  check_grid(m_grid, "scan_Etilde");
  const double ns = g.dim * sigma;
  if (!(ns > 4.0))
    throw RegimeError(
        "scan_Etilde: requires mass-supercritical sigma (N sigma > 4); use "
        "scan_Emin");
  BranchCurve curve;
  curve.kind = "etilde";
  curve.dim = g.dim;
  curve.sigma = sigma;
  curve.grid = m_grid;
  curve.seed = opts.seed;

  double mu0 = opts.mu0_hint;
  if (mu0 <= 0.0) {
    const auto ib = independent_I_B(sigma, g, opts);
    curve.I_independent = ib.first;
    mu0 = mu0_from_B(ib.second, g.dim, sigma);
  }
  if (m_grid.back() >= mu0)
    throw RegimeError(
        "scan_Etilde: grid reaches mass " + std::to_string(m_grid.back()) +
        " >= mu0 = " + std::to_string(mu0));

  curve.points = run_sweep(
      m_grid.size(), jobs,
      [&](std::size_t i, const Field* warm, Field* warm_out, bool* got) {
        const double m = m_grid[i];
        SolverOptions po = opts;
        po.seed = opts.seed + static_cast<std::uint64_t>(i);
        po.mu0_hint = mu0;
        if (warm) po.extra_starts.push_back(*warm);
        try {
          MinimizerResult r = minimize_local(m, sigma, g, po);
          *warm_out = r.field;
          *got = true;
          return point_from(m, r, sigma, r.multiplier);
        } catch (const std::exception& e) {
          return failed_point(m, e.what());
        }
      });

  coverage_flag(curve);
  const auto vp = valid_points(curve);
  const double lower_ratio = (ns - 2.0) * (ns - 2.0) / (ns * (ns - 4.0));

  {  // -((Ns-2)^2/(Ns(Ns-4))) m <= Etilde <= -m
    double worst_up = -kInf, worst_lo = -kInf;
    for (const BranchPoint* p : vp) {
      worst_up = std::max(worst_up, (p->value + p->param) / p->param);
      worst_lo = std::max(
          worst_lo, (-lower_ratio * p->param - p->value) / p->param);
    }
    add_flag(curve, "upper-bound", worst_up <= 1e-6, worst_up, 1e-6,
             "max (Etilde + m)/m");
    add_flag(curve, "lower-bound", worst_lo <= 1e-6, worst_lo, 1e-6,
             "max (-((Ns-2)^2/(Ns(Ns-4))) m - Etilde)/m");
  }
  {  // Etilde decreasing
    bool ok = true;
    double worst = -kInf;
    for (std::size_t i = 1; i < vp.size(); ++i) {
      const double gap = vp[i]->value - vp[i - 1]->value;
      worst = std::max(worst, gap);
      if (!(gap < 0.0)) ok = false;
    }
    add_flag(curve, "decreasing", ok, vp.size() > 1 ? worst : 0.0, 0.0,
             "max consecutive Etilde increment (must be negative)");
  }
  {  // Etilde/m non-increasing
    bool ok = true;
    double worst = -kInf;
    for (std::size_t i = 1; i < vp.size(); ++i) {
      const double gap =
          vp[i]->value / vp[i]->param - vp[i - 1]->value / vp[i - 1]->param;
      worst = std::max(worst, gap);
      if (gap > 1e-9) ok = false;
    }
    add_flag(curve, "ratio-nonincreasing", ok, vp.size() > 1 ? worst : 0.0,
             1e-9, "max consecutive increase of Etilde/m");
  }
  {  // sub-additivity on grid pairs summing onto the grid
    bool ok = true;
    double worst = -kInf;
    int checked = 0;
    for (std::size_t i = 0; i < vp.size(); ++i)
      for (std::size_t j = i; j < vp.size(); ++j) {
        const double sum = vp[i]->param + vp[j]->param;
        for (std::size_t k = 0; k < vp.size(); ++k) {
          if (std::abs(vp[k]->param - sum) > 1e-12 * sum) continue;
          ++checked;
          const double slack =
              vp[k]->value - (vp[i]->value + vp[j]->value);
          worst = std::max(worst, slack);
          if (slack > 1e-6) ok = false;
        }
      }
    add_flag(curve, "subadditive", ok, checked > 0 ? worst : 0.0, 1e-6,
             std::to_string(checked) + " pair checks");
  }
  return curve;
}

}  // namespace bnls
