#include "bnls/best_constant.hpp"
#include "bnls/errors.hpp"

#include <cmath>
#include <stdexcept>

#include "bnls/families.hpp"
#include "bnls/field_ops.hpp"
#include "bnls/norms.hpp"
#include "bnls/region.hpp"

namespace bnls {
namespace {

// (|xi|^s - 1)^2 for every mode, in flat row-major order.
std::vector<double> shift_symbol(const Grid& g, double s) {
  std::vector<double> sym(g.size());
  int idx[3];
  for (std::size_t f = 0; f < sym.size(); ++f) {
    unflatten(g, f, idx);
    double k2 = 0.0;
    for (int a = 0; a < g.dim; ++a) {
      const double xi = g.xi(idx[a]);
      k2 += xi * xi;
    }
    const double d = std::pow(k2, 0.5 * s) - 1.0;
    sym[f] = d * d;
  }
  return sym;
}

struct QuotientParts {
  double sp;    // sum |u|^p h^N
  double mass;  // (2L)^-N sum |uhat|^2
  double sh2;   // (2L)^-N sum A^2 |uhat|^2
  double logq;
};

}  // namespace

double cone_project(Field& uh, double s, double R) {
  const Grid& g = uh.grid;
  const std::vector<double> sym = shift_symbol(g, s);
  auto ratio = [&](double lam) {
    double m = 0.0, s2 = 0.0;
    for (std::size_t f = 0; f < uh.data.size(); ++f) {
      const double a = std::norm(uh.data[f]) /
                       ((1.0 + lam * sym[f]) * (1.0 + lam * sym[f]));
      m += a;
      s2 += a * sym[f];
    }
    return s2 / m;
  };
  const double target = R * R;
  if (ratio(0.0) <= target * (1.0 + 1e-14)) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (ratio(hi) > target && hi < 1e18) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (ratio(mid) > target)
      lo = mid;
    else
      hi = mid;
  }
  const double lam = hi;
  for (std::size_t f = 0; f < uh.data.size(); ++f)
    uh.data[f] /= (1.0 + lam * sym[f]);
  return lam;
}

AscentResult estimate_M(double s, double p, double kappa,
                        std::optional<double> restriction_R, const Grid& g,
                        const AscentOptions& opts) {
  if (!restriction_R) {
    const RegionPoint pt = classify_region(g.dim, s, p, kappa);
    if (pt.classification == Boundedness::Unbounded)
      throw RegimeError(
          "region unbounded; supply a restriction radius R");
  }
  const double R = restriction_R.value_or(0.0);
  const std::vector<double> sym = shift_symbol(g, s);
  const double vol_w = 1.0 / g.box_volume();
  const double hN = std::pow(g.h(), g.dim);

  AscentResult out;
  out.restricted = restriction_R.has_value();
  out.restriction_R = R;

  auto parts = [&](const Field& uh, const Field& u) {
    QuotientParts q;
    q.mass = 0.0;
    q.sh2 = 0.0;
    for (std::size_t f = 0; f < uh.data.size(); ++f) {
      const double a = std::norm(uh.data[f]);
      q.mass += a;
      q.sh2 += a * sym[f];
    }
    q.mass *= vol_w;
    q.sh2 *= vol_w;
    q.sp = 0.0;
    for (const cplx& z : u.data) q.sp += std::pow(std::abs(z), p);
    q.sp *= hN;
    q.logq = std::log(q.sp) / p - 0.5 * kappa * std::log(q.mass) -
             0.5 * (1.0 - kappa) * std::log(q.sh2);
    return q;
  };

  auto run_start = [&](Field uh) -> std::pair<double, bool> {
    transform_inplace(uh, Rep::Fourier);
    if (out.restricted) cone_project(uh, s, R);
    set_mass(uh, 1.0);
    Field u = transform(uh, Rep::Physical);
    QuotientParts q = parts(uh, u);
    double tau = 0.5;
    int stall = 0;
    bool grad_small = false;
    Field grad(uh.grid, Rep::Fourier), trial(uh.grid, Rep::Fourier);
    for (int it = 0; it < opts.max_iter; ++it) {
      // gradient of log Q in the (2L)^-N weighted inner product
      Field nl(u.grid, Rep::Physical);
      for (std::size_t f = 0; f < u.data.size(); ++f) {
        const double a = std::abs(u.data[f]);
        nl.data[f] = a > 0 ? std::pow(a, p - 2.0) * u.data[f] : cplx(0.0);
      }
      transform_inplace(nl, Rep::Fourier);
      double gnorm2 = 0.0;
      for (std::size_t f = 0; f < uh.data.size(); ++f) {
        const cplx gf = nl.data[f] / q.sp - kappa * uh.data[f] / q.mass -
                        (1.0 - kappa) * sym[f] * uh.data[f] / q.sh2;
        grad.data[f] = gf / (1.0 + sym[f]);
        gnorm2 += std::norm(grad.data[f]);
      }
      gnorm2 *= vol_w;
      grad_small = std::sqrt(gnorm2) < opts.grad_tol;
      bool accepted = false;
      while (tau > 1e-16) {
        for (std::size_t f = 0; f < uh.data.size(); ++f)
          trial.data[f] = uh.data[f] + tau * grad.data[f];
        if (out.restricted) cone_project(trial, s, R);
        set_mass(trial, 1.0);
        Field tu = transform(trial, Rep::Physical);
        QuotientParts tq = parts(trial, tu);
        if (tq.logq >= q.logq) {
          const double gain = tq.logq - q.logq;
          uh.data = trial.data;
          u = std::move(tu);
          q = tq;
          tau = std::min(tau * 1.25, 4.0);
          ++out.iterations;
          stall = gain < opts.value_tol * std::max(std::abs(q.logq), 1.0)
                      ? stall + 1
                      : 0;
          accepted = true;
          break;
        }
        tau *= 0.5;
      }
      if (!accepted) break;
      if (stall >= 10 && grad_small) break;
    }
    const double value = std::exp(q.logq);
    if (value > out.M) {
      out.M = value;
      out.maximizer = transform(uh, Rep::Physical);
      out.converged = stall >= 10 || grad_small;
    }
    return {value, stall >= 10 || grad_small};
  };

  Rng rng(opts.seed);
  std::vector<Field> starts;
  starts.push_back(gaussian_wave(g, 3.0, 1.0));
  starts.push_back(annulus_bump(g, 0.3));
  for (int r = 0; r < opts.starts; ++r)
    starts.push_back(random_band_limited(g, rng, 3.0));
  for (Field& st : starts)
    out.start_values.push_back(run_start(std::move(st)).first);

  const double sigma = 0.5 * p - 1.0;
  out.m0_valid = std::abs(s - 2.0) < 1e-12 && sigma > 0 &&
                 std::abs(kappa - sigma / (sigma + 1.0)) < 1e-9;
  if (out.m0_valid)
    out.m0 = std::pow(sigma + 1.0, 1.0 / sigma) *
             std::pow(out.M, -(2.0 * sigma + 2.0) / sigma);
  return out;
}

}  // namespace bnls
