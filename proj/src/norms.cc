#include "bnls/norms.hpp"
#include "bnls/util.hpp"

#include <cmath>
#include <vector>

namespace bnls {
namespace {

// per-axis xi^2 table
std::vector<double> xi2_table(const Grid& g) {
  std::vector<double> t(g.n);
  for (int i = 0; i < g.n; ++i) {
    double v = g.xi(i);
    t[i] = v * v;
  }
  return t;
}

template <class Fn>
void for_each_mode(const Grid& g, const std::vector<double>& xi2, Fn&& fn) {
  if (g.dim == 1) {
    for (int i0 = 0; i0 < g.n; ++i0) fn(static_cast<std::size_t>(i0), xi2[i0]);
  } else if (g.dim == 2) {
    std::size_t flat = 0;
    for (int i0 = 0; i0 < g.n; ++i0)
      for (int i1 = 0; i1 < g.n; ++i1, ++flat) fn(flat, xi2[i0] + xi2[i1]);
  } else {
    std::size_t flat = 0;
    for (int i0 = 0; i0 < g.n; ++i0)
      for (int i1 = 0; i1 < g.n; ++i1) {
        const double part = xi2[i0] + xi2[i1];
        for (int i2 = 0; i2 < g.n; ++i2, ++flat) fn(flat, part + xi2[i2]);
      }
  }
}

}  // namespace

NormReport sobolev_norms(const Field& u) {
  const Field* f = &u;
  Field tmp;
  if (u.rep != Rep::Fourier) {
    tmp = transform(u, Rep::Fourier);
    f = &tmp;
  }
  const Grid& g = f->grid;
  auto xi2 = xi2_table(g);
  KahanSum m, gr, bi, sh;
  for_each_mode(g, xi2, [&](std::size_t flat, double k2) {
    const double a2 = std::norm(f->data[flat]);
    m.add(a2);
    gr.add(k2 * a2);
    bi.add(k2 * k2 * a2);
    const double d = 1.0 - k2;
    sh.add(d * d * a2);
  });
  const double w = 1.0 / g.box_volume();
  return NormReport{w * m.value(), w * gr.value(), w * bi.value(),
                    w * sh.value()};
}

double lp_norm(const Field& u, double p) {
  const Field* f = &u;
  Field tmp;
  if (u.rep != Rep::Physical) {
    tmp = transform(u, Rep::Physical);
    f = &tmp;
  }
  KahanSum sum;
  const long ip = std::lround(p);
  const bool integral = std::abs(p - ip) < 1e-12 && ip >= 1;
  if (integral && (ip % 2 == 0)) {
    // even p: avoid the sqrt in |u| entirely
    const long half = ip / 2;
    for (const cplx& z : f->data) {
      const double a2 = std::norm(z);
      double v = a2;
      for (long j = 1; j < half; ++j) v *= a2;
      sum.add(v);
    }
  } else if (integral) {
    for (const cplx& z : f->data) {
      const double a = std::abs(z);
      double v = a;
      for (long j = 1; j < ip; ++j) v *= a;
      sum.add(v);
    }
  } else {
    for (const cplx& z : f->data) sum.add(std::pow(std::abs(z), p));
  }
  return std::pow(sum.value() * f->grid.cell_volume(), 1.0 / p);
}

double spectral_quadratic(const Field& u, double (*w)(double, const void*),
                          const void* ctx) {
  const Field* f = &u;
  Field tmp;
  if (u.rep != Rep::Fourier) {
    tmp = transform(u, Rep::Fourier);
    f = &tmp;
  }
  const Grid& g = f->grid;
  auto xi2 = xi2_table(g);
  KahanSum acc;
  for_each_mode(g, xi2, [&](std::size_t flat, double k2) {
    acc.add(w(k2, ctx) * std::norm(f->data[flat]));
  });
  return acc.value() / g.box_volume();
}

}  // namespace bnls
