#include "bnls/witness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bnls/families.hpp"
#include "bnls/field_ops.hpp"
#include "bnls/functionals.hpp"
#include "bnls/norms.hpp"
#include "bnls/profiles.hpp"

namespace bnls {
namespace {

// Fraction of |u|^2 carried by modes with |xi| >= 0.9 * xi_max.
double spectral_tail_fraction(const Field& u) {
  Field uh = transform(u, Rep::Fourier);
  const Grid& g = uh.grid;
  const double xi_max = 3.14159265358979323846 * (g.n / 2) / g.L;
  const double cut2 = 0.81 * xi_max * xi_max;
  double tail = 0.0, total = 0.0;
  int idx[3];
  for (std::size_t f = 0; f < uh.data.size(); ++f) {
    unflatten(g, f, idx);
    double k2 = 0.0;
    for (int a = 0; a < g.dim; ++a) {
      const double xi = g.xi(idx[a]);
      k2 += xi * xi;
    }
    const double w = std::norm(uh.data[f]);
    total += w;
    if (k2 >= cut2) tail += w;
  }
  return total > 0 ? tail / total : 0.0;
}

double q_kappa(const Field& u, double s, double p, double kappa) {
  const double lp = lp_norm(u, p);
  const NormReport nr = sobolev_norms(u);
  const double shifted = shifted_symbol_norm(u, s);
  return lp / (std::pow(std::sqrt(nr.mass), kappa) *
               std::pow(shifted, 1.0 - kappa));
}

double fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx(x.size()), ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  const std::size_t n = lx.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

int pick_n(int dim, int n_override, int fallback) {
  if (n_override > 0) return n_override;
  return fallback;
}

}  // namespace

WitnessSweep witness_sweep(const std::string& family,
                           const std::vector<double>& params, double s,
                           double p, double kappa, int dim, double delta,
                           int n_override) {
  if (params.size() < 2)
    throw std::invalid_argument("witness sweep needs at least two parameters");
  WitnessSweep sw;
  sw.family = family;
  sw.param = params;

  bool diverges_at_large_param = true;  // direction of escape along the sweep

  if (family == "gaussian") {
    const double tau_mid =
        std::exp(0.5 * (std::log(params.front()) + std::log(params.back())));
    const bool large_branch = tau_mid >= 1.0;
    sw.predicted_slope =
        large_branch
            ? 1.0 / p + 0.5 - kappa
            : 1.0 / p - 0.5 * kappa - 0.5 * (1.0 - 2.0 * s) * (1.0 - kappa);
    diverges_at_large_param = large_branch;
    const int n = pick_n(dim, n_override, dim == 1 ? 4096 : 256);
    for (double tau : params) {
      const double L = std::max(20.0, 8.0 * tau);
      Field u = gaussian_wave(make_grid(dim, n, L), tau, 1.0);
      sw.q_value.push_back(q_kappa(u, s, p, kappa));
      sw.spectral_tail.push_back(spectral_tail_fraction(u));
    }
  } else if (family == "knapp") {
    if (dim < 2)
      throw std::invalid_argument("knapp witness needs dimension >= 2");
    sw.predicted_slope = kappa - 0.5;
    diverges_at_large_param = false;  // escapes as eps -> 0
    const double eps_min = *std::min_element(params.begin(), params.end());
    const int n = pick_n(dim, n_override, 256);
    const double L = 4.0 * 3.14159265358979323846 / eps_min;
    const Grid g = make_grid(dim, n, L);
    for (double eps : params) {
      Field u = knapp_cap(g, eps, delta);
      sw.q_value.push_back(q_kappa(u, s, p, kappa));
      sw.spectral_tail.push_back(spectral_tail_fraction(u));
    }
  } else if (family == "dilation") {
    sw.predicted_slope =
        dim / p - 0.5 * kappa * dim - (1.0 - kappa) * (0.5 * dim - s);
    diverges_at_large_param = false;  // escapes as tau -> 0
    const int n = pick_n(dim, n_override, dim == 1 ? 2048 : 256);
    const Grid g = make_grid(dim, n, 10.0);
    for (double tau : params) {
      Field u(g, Rep::Physical);
      int idx[3];
      for (std::size_t f = 0; f < u.data.size(); ++f) {
        unflatten(g, f, idx);
        double r2 = 0.0;
        for (int a = 0; a < g.dim; ++a) {
          const double x = g.x(idx[a]) / tau;
          r2 += x * x;
        }
        u.data[f] = std::exp(-0.5 * r2);
      }
      sw.q_value.push_back(q_kappa(u, s, p, kappa));
      sw.spectral_tail.push_back(spectral_tail_fraction(u));
    }
  } else {
    throw std::invalid_argument("unknown witness family: " + family);
  }

  for (std::size_t i = 0; i < sw.param.size(); ++i)
    if (sw.spectral_tail[i] > 1e-6)
      throw std::runtime_error(
          "under-resolved witness member (spectral tail fraction " +
          std::to_string(sw.spectral_tail[i]) + " at parameter " +
          std::to_string(sw.param[i]) + ")");

  sw.fitted_slope = fit_loglog(sw.param, sw.q_value);

  const double margin = 0.01;
  const double escape_sign = diverges_at_large_param ? 1.0 : -1.0;
  const double pred = escape_sign * sw.predicted_slope;
  const double fit = escape_sign * sw.fitted_slope;
  if (std::abs(sw.predicted_slope) <= margin) {
    sw.verdict = "marginal";
  } else if (pred > 0.0 && fit > margin) {
    sw.unbounded_witness = true;
    sw.verdict = "unbounded-witness";
  } else {
    sw.verdict = "bounded-direction";
  }
  return sw;
}

}  // namespace bnls
