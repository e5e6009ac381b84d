#include "bnls/families.hpp"

#include <cmath>
#include <stdexcept>

#include "bnls/field_ops.hpp"

namespace bnls {

Field gaussian_wave(const Grid& g, double tau, double xi0) {
  if (!(tau > 0.0)) throw std::invalid_argument("gaussian_wave: tau > 0");
  Field u(g, Rep::Physical);
  int idx[3];
  const double inv2t2 = 1.0 / (2.0 * tau * tau);
  for (std::size_t flat = 0; flat < u.data.size(); ++flat) {
    unflatten(g, flat, idx);
    double r2 = 0;
    for (int ax = 0; ax < g.dim; ++ax) {
      const double x = g.x(idx[ax]);
      r2 += x * x;
    }
    const double amp = std::exp(-r2 * inv2t2);
    const double ph = xi0 * g.x(idx[0]);
    u.data[flat] = cplx(amp * std::cos(ph), amp * std::sin(ph));
  }
  return u;
}

Field knapp_cap(const Grid& g, double eps, double delta) {
  if (!(eps > 0.0) || !(delta > 0.0) || delta >= 1.0)
    throw std::invalid_argument("knapp_cap: need eps > 0, 0 < delta < 1");
  Field u(g, Rep::Fourier);
  int idx[3];
  std::size_t kept = 0;
  for (std::size_t flat = 0; flat < u.data.size(); ++flat) {
    unflatten(g, flat, idx);
    double k2 = 0;
    for (int ax = 0; ax < g.dim; ++ax) {
      const double xi = g.xi(idx[ax]);
      k2 += xi * xi;
    }
    const double r = std::sqrt(k2);
    bool in = r > 1.0 - eps && r < 1.0 + eps;
    if (in) {
      if (g.dim == 1) {
        in = g.xi(idx[0]) > 0.0;
      } else {
        in = g.xi(idx[0]) / r > 1.0 - delta * delta;
      }
    }
    if (in) {
      u.data[flat] = 1.0;
      ++kept;
    }
  }
  if (kept == 0)
    throw std::invalid_argument(
        "knapp_cap: no lattice mode in the cap; enlarge L or eps/delta");
  set_mass(u, 1.0);
  return u;
}

Field annulus_bump(const Grid& g, double eps) {
  if (!(eps > 0.0) || eps >= 1.0)
    throw std::invalid_argument("annulus_bump: need 0 < eps < 1");
  Field u(g, Rep::Fourier);
  int idx[3];
  const double r0 = 1.0 - eps / 2.0;  // shell center
  std::size_t kept = 0;
  for (std::size_t flat = 0; flat < u.data.size(); ++flat) {
    unflatten(g, flat, idx);
    double k2 = 0;
    for (int ax = 0; ax < g.dim; ++ax) {
      const double xi = g.xi(idx[ax]);
      k2 += xi * xi;
    }
    const double s = (std::sqrt(k2) - r0) / (eps / 2.0);  // in (-1,1) inside
    if (s > -1.0 && s < 1.0) {
      u.data[flat] = std::exp(1.0 - 1.0 / (1.0 - s * s));
      ++kept;
    }
  }
  if (kept == 0)
    throw std::invalid_argument(
        "annulus_bump: no lattice mode in the shell; enlarge L or eps");
  set_mass(u, 1.0);
  return u;
}

Field random_band_limited(const Grid& g, Rng& rng, double xi_max) {
  if (!(xi_max > 0.0))
    throw std::invalid_argument("random_band_limited: xi_max > 0");
  Field u(g, Rep::Fourier);
  int idx[3];
  const double cap2 = xi_max * xi_max;
  bool any = false;
  for (std::size_t flat = 0; flat < u.data.size(); ++flat) {
    unflatten(g, flat, idx);
    double k2 = 0;
    for (int ax = 0; ax < g.dim; ++ax) {
      const double xi = g.xi(idx[ax]);
      k2 += xi * xi;
    }
    if (k2 <= cap2) {
      u.data[flat] = cplx(rng.normal(), rng.normal());
      any = true;
    }
  }
  if (!any)
    throw std::invalid_argument("random_band_limited: empty band");
  set_mass(u, 1.0);
  return u;
}

}  // namespace bnls
