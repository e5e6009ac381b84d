#include <cmath>
#include <stdexcept>

#include "bnls/field_ops.hpp"
#include "bnls/util.hpp"

namespace bnls {

void axpy(Field& y, double alpha, const Field& x) {
  if (!(y.grid == x.grid) || y.rep != x.rep)
    throw std::invalid_argument("axpy: mismatched fields");
  for (std::size_t i = 0; i < y.data.size(); ++i) y.data[i] += alpha * x.data[i];
}

void scale_inplace(Field& u, double alpha) {
  for (auto& z : u.data) z *= alpha;
}

void set_mass(Field& u, double m) {
  const double cur = sobolev_norms(u).mass;
  if (!(cur > 0.0)) throw std::invalid_argument("set_mass: zero field");
  scale_inplace(u, std::sqrt(m / cur));
}

void set_lp_unit(Field& u, double p) {
  const double cur = lp_norm(u, p);
  if (!(cur > 0.0)) throw std::invalid_argument("set_lp_unit: zero field");
  scale_inplace(u, 1.0 / cur);
}

double inner_real(const Field& a, const Field& b) {
  if (!(a.grid == b.grid) || a.rep != b.rep)
    throw std::invalid_argument("inner_real: mismatched fields");
  KahanSum acc;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    acc.add(a.data[i].real() * b.data[i].real() +
            a.data[i].imag() * b.data[i].imag());
  }
  const double w = a.rep == Rep::Fourier ? 1.0 / a.grid.box_volume()
                                         : a.grid.cell_volume();
  return acc.value() * w;
}

void apply_spectral_weight(Field& u, double (*w)(double, const void*),
                           const void* ctx) {
  if (u.rep != Rep::Fourier)
    throw std::invalid_argument("apply_spectral_weight: need Fourier rep");
  const Grid& g = u.grid;
  int idx[3];
  for (std::size_t flat = 0; flat < u.data.size(); ++flat) {
    unflatten(g, flat, idx);
    double k2 = 0;
    for (int d = 0; d < g.dim; ++d) {
      const double xi = g.xi(idx[d]);
      k2 += xi * xi;
    }
    u.data[flat] *= w(k2, ctx);
  }
}

void gauge_fix(Field& u) {
  Field phys = transform(u, Rep::Physical);
  const Grid& g = phys.grid;
  // circular mean of the density along each axis
  double theta[3] = {0, 0, 0};
  {
    double cs[3] = {0, 0, 0}, sn[3] = {0, 0, 0};
    int idx[3];
    const double w = M_PI / g.L;  // angle per unit length
    for (std::size_t flat = 0; flat < phys.data.size(); ++flat) {
      unflatten(g, flat, idx);
      const double d = std::norm(phys.data[flat]);
      for (int ax = 0; ax < g.dim; ++ax) {
        const double ang = w * g.x(idx[ax]);
        cs[ax] += d * std::cos(ang);
        sn[ax] += d * std::sin(ang);
      }
    }
    for (int ax = 0; ax < g.dim; ++ax) theta[ax] = std::atan2(sn[ax], cs[ax]);
  }
  double x0[3];
  for (int ax = 0; ax < g.dim; ++ax) x0[ax] = theta[ax] * g.L / M_PI;

  // exact spectral translation u(x) -> u(x + x0)
  Field hat = transform(u, Rep::Fourier);
  int idx[3];
  for (std::size_t flat = 0; flat < hat.data.size(); ++flat) {
    unflatten(g, flat, idx);
    double phase = 0;
    for (int ax = 0; ax < g.dim; ++ax) phase += g.xi(idx[ax]) * x0[ax];
    hat.data[flat] *= cplx(std::cos(phase), std::sin(phase));
  }
  Field centered = transform(hat, Rep::Physical);

  // global phase: value at the origin node becomes real nonnegative
  std::size_t origin = 0;
  {
    std::size_t stride = 1;
    for (int ax = g.dim - 1; ax >= 0; --ax) {
      origin += stride * static_cast<std::size_t>(g.n / 2);
      stride *= static_cast<std::size_t>(g.n);
    }
  }
  const cplx v = centered.data[origin];
  if (std::abs(v) > 0) {
    const cplx rot = std::conj(v) / std::abs(v);
    for (auto& z : centered.data) z *= rot;
  }
  u = (u.rep == Rep::Physical) ? centered : transform(centered, Rep::Fourier);
}

}  // namespace bnls
