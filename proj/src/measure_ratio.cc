#include "bnls/measure_ratio.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace bnls {
namespace {

double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  int iters) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

// t^{(1-kappa)/2} * ( sum mu |w|^r (|w1|^2 + t |w2|^2)^{-r/2} )^{1/r},
// r = 2q/(2-q).
double m2_value(const FiniteMeasureInstance& inst, double t) {
  const double r = 2.0 * inst.q / (2.0 - inst.q);
  double acc = 0.0;
  for (std::size_t i = 0; i < inst.mu.size(); ++i) {
    const double aw = std::abs(inst.w[i]);
    if (aw == 0.0) continue;
    const double den = std::norm(inst.w1[i]) + t * std::norm(inst.w2[i]);
    acc += inst.mu[i] * std::pow(aw, r) * std::pow(den, -0.5 * r);
  }
  return std::pow(t, 0.5 * (1.0 - inst.kappa)) * std::pow(acc, 1.0 / r);
}

// Closed-form near-optimizer amplitude profile at parameter t.
std::vector<double> psi_profile(const FiniteMeasureInstance& inst, double t) {
  const double e = 1.0 / (2.0 - inst.q);
  std::vector<double> x(inst.mu.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double aw = std::abs(inst.w[i]);
    if (aw == 0.0) continue;
    const double den = std::norm(inst.w1[i]) + t * std::norm(inst.w2[i]);
    x[i] = std::pow(aw, inst.q * e) * std::pow(den, -e);
  }
  return x;
}

void normalize_max(std::vector<double>& x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, v);
  if (m > 0.0)
    for (double& v : x) v /= m;
}

}  // namespace

void validate_instance(const FiniteMeasureInstance& inst) {
  const std::size_t n = inst.mu.size();
  if (n == 0 || n > 16)
    throw std::invalid_argument("instance size must be in [1,16]");
  if (inst.w.size() != n || inst.w1.size() != n || inst.w2.size() != n)
    throw std::invalid_argument("weight sequences must match mu in length");
  for (double m : inst.mu)
    if (!(m > 0.0)) throw std::invalid_argument("mu must be positive");
  if (!(inst.kappa > 0.0 && inst.kappa < 1.0))
    throw std::invalid_argument("kappa must lie in (0,1)");
  if (!(inst.q >= 1.0 && inst.q < 2.0))
    throw std::invalid_argument("q must lie in [1,2)");
  bool ww1 = false, ww2 = false;
  for (std::size_t i = 0; i < n; ++i) {
    const bool wz = std::abs(inst.w[i]) == 0.0;
    const bool w1z = std::abs(inst.w1[i]) == 0.0;
    const bool w2z = std::abs(inst.w2[i]) == 0.0;
    if (!wz && !w1z) ww1 = true;
    if (!wz && !w2z) ww2 = true;
    if (!wz && w1z && w2z)
      throw std::invalid_argument(
          "w must vanish wherever both w1 and w2 vanish");
  }
  if (!ww1 || !ww2)
    throw std::invalid_argument("w*w1 and w*w2 must not vanish identically");
}

double predicted_measure_ratio(double kappa) {
  return std::pow(1.0 - kappa, 0.5 * (kappa - 1.0)) *
         std::pow(kappa, -0.5 * kappa);
}

double measure_quotient(const FiniteMeasureInstance& inst,
                        const std::vector<double>& x) {
  double nq = 0.0, d1 = 0.0, d2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= 0.0) continue;
    nq += inst.mu[i] * std::pow(std::abs(inst.w[i]) * x[i], inst.q);
    d1 += inst.mu[i] * std::norm(inst.w1[i]) * x[i] * x[i];
    d2 += inst.mu[i] * std::norm(inst.w2[i]) * x[i] * x[i];
  }
  if (nq == 0.0) return 0.0;
  if (d1 == 0.0 || d2 == 0.0)
    return std::numeric_limits<double>::infinity();
  const double num = std::pow(nq, 1.0 / inst.q);
  return num / (std::pow(std::sqrt(d1), 1.0 - inst.kappa) *
                std::pow(std::sqrt(d2), inst.kappa));
}

MeasureRatioResult finite_measure_oracle(const FiniteMeasureInstance& inst,
                                         std::uint64_t seed) {
  validate_instance(inst);
  MeasureRatioResult res;
  res.predicted_ratio = predicted_measure_ratio(inst.kappa);

  // --- M2: scan a wide log grid in t, then golden-section refine. ---
  double best_lt = 0.0, best_v = -1.0;
  const int kGrid = 481;
  for (int i = 0; i < kGrid; ++i) {
    const double lt = -12.0 + 24.0 * i / (kGrid - 1);
    const double v = m2_value(inst, std::exp(lt));
    if (v > best_v) {
      best_v = v;
      best_lt = lt;
    }
  }
  const double step = 24.0 / (kGrid - 1);
  const double lt_star = golden_max(
      [&](double lt) { return m2_value(inst, std::exp(lt)); },
      best_lt - step, best_lt + step, 120);
  res.t_star = std::exp(lt_star);
  res.M2 = m2_value(inst, res.t_star);

  // --- M1: closed-form profile on a t-grid, then coordinate ascent from the
  // best profile and from random starts. ---
  const std::size_t n = inst.mu.size();
  std::vector<double> best_x = psi_profile(inst, res.t_star);
  double best_q = measure_quotient(inst, best_x);
  for (int i = 0; i < 41; ++i) {
    const double t = std::exp(-10.0 + 20.0 * i / 40.0);
    std::vector<double> x = psi_profile(inst, t);
    const double v = measure_quotient(inst, x);
    if (v > best_q) {
      best_q = v;
      best_x = x;
    }
  }

  Rng rng(seed);
  auto ascend = [&](std::vector<double> x) {
    normalize_max(x);
    double cur = measure_quotient(inst, x);
    for (int sweep = 0; sweep < 400; ++sweep) {
      const double before = cur;
      for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(inst.w[i]) == 0.0 && std::norm(inst.w1[i]) == 0.0 &&
            std::norm(inst.w2[i]) == 0.0)
          continue;
        const double base = x[i] > 0.0 ? std::log(x[i]) : -20.0;
        const double z = golden_max(
            [&](double zz) {
              std::vector<double>& xr = x;
              const double old = xr[i];
              xr[i] = std::exp(zz);
              const double v = measure_quotient(inst, xr);
              xr[i] = old;
              return v;
            },
            base - 14.0, base + 14.0, 90);
        x[i] = std::exp(z);
        // a hard zero can beat any finite amplitude when w_i = 0
        std::vector<double> xz = x;
        xz[i] = 0.0;
        const double vz = measure_quotient(inst, xz);
        const double vx = measure_quotient(inst, x);
        if (vz > vx) x[i] = 0.0;
        cur = std::max(vx, vz);
        normalize_max(x);
      }
      if (cur <= before * (1.0 + 1e-13)) break;
    }
    if (cur > best_q) {
      best_q = cur;
      best_x = x;
    }
  };

  ascend(best_x);
  for (int r = 0; r < 6; ++r) {
    std::vector<double> x(n);
    for (auto& v : x) v = std::exp(2.0 * rng.normal());
    ascend(std::move(x));
  }

  res.M1 = best_q;
  res.ratio = res.M2 > 0.0 ? res.M1 / res.M2 : 0.0;
  return res;
}

FiniteMeasureInstance random_instance(Rng& rng, int size, double kappa,
                                      double q) {
  FiniteMeasureInstance inst;
  inst.kappa = kappa;
  inst.q = q;
  auto mag = [&]() { return std::exp(std::log(0.2) +
                                     rng.uniform() * std::log(25.0)); };
  auto phase = [&]() {
    const double th = 2.0 * 3.14159265358979323846 * rng.uniform();
    return std::complex<double>(std::cos(th), std::sin(th));
  };
  for (int i = 0; i < size; ++i) {
    inst.mu.push_back(0.5 + rng.uniform());
    inst.w.push_back(mag() * phase());
    inst.w1.push_back(mag() * phase());
    inst.w2.push_back(mag() * phase());
  }
  return inst;
}

}  // namespace bnls
