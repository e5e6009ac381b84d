#include "bnls/scaling.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "bnls/norms.hpp"

namespace bnls {
namespace {

// Evaluates the 1-D trigonometric interpolant given FFTW-ordered
// coefficients c (length n) at the points y_j = x_j / b, including the
// (1/2L) inverse weight. Nyquist power is split between +-xi_{n/2}.
void eval_dilated_line(const Grid& g, const cplx* c, std::ptrdiff_t stride,
                       double inv_b, cplx* out) {
  const int n = g.n;
  const double w = 1.0 / (2.0 * g.L);
  std::vector<cplx> coeff(n);
  for (int k = 0; k < n; ++k) coeff[k] = c[stride * k];
  for (int j = 0; j < n; ++j) {
    const double y = g.x(j) * inv_b;
    const double base = M_PI * y / g.L;  // angle step between adjacent modes
    // start at k = -n/2 + 1 (FFTW index n/2 + 1)
    const double start_angle = -base * (n / 2 - 1);
    cplx rot(std::cos(start_angle), std::sin(start_angle));
    const cplx step(std::cos(base), std::sin(base));
    cplx acc(0.0, 0.0);
    for (int k = -n / 2 + 1; k < n / 2; ++k) {
      const int fk = k >= 0 ? k : k + n;
      acc += coeff[fk] * rot;
      rot *= step;
      if (((k + n / 2) & 255) == 255) {  // refresh rotation phase drift
        const double ang = base * (k + 1);
        rot = cplx(std::cos(ang), std::sin(ang));
      }
    }
    acc += coeff[n / 2] * std::cos(base * (n / 2));  // split Nyquist mode
    out[j] = w * acc;
  }
}

// in-place separable pass along `axis`: coefficients -> dilated values
void dilate_axis(Field& f, int axis, double inv_b) {
  const Grid& g = f.grid;
  const int n = g.n;
  std::vector<cplx> out(n);
  std::ptrdiff_t stride = 1;
  for (int ax = g.dim - 1; ax > axis; --ax) stride *= n;
  int idx[3];
  for (std::size_t flat = 0; flat < f.data.size(); ++flat) {
    unflatten(g, flat, idx);
    if (idx[axis] != 0) continue;  // `flat` is the base of a line
    eval_dilated_line(g, f.data.data() + flat, stride, inv_b, out.data());
    for (int k = 0; k < n; ++k) f.data[flat + stride * k] = out[k];
  }
}

bool near_integer(double v, long& q) {
  q = std::lround(v);
  return q >= 1 && std::abs(v - q) < 1e-12;
}

}  // namespace

Field rescale(const Field& u, double a, double b) {
  if (!(b > 0.0) || !std::isfinite(b) || !std::isfinite(a))
    throw std::invalid_argument("rescale: need finite a and b > 0");
  const Grid& g = u.grid;
  long q = 0;
  if (near_integer(1.0 / b, q)) {
    // exact path: q x_j = x_{(q j + (1-q) n/2) mod n} per axis
    Field phys = transform(u, Rep::Physical);
    Field out(g, Rep::Physical);
    const long n = g.n;
    auto map1 = [&](long j) {
      long m = (q * j + (1 - q) * (n / 2)) % n;
      return m < 0 ? m + n : m;
    };
    int idx[3];
    for (std::size_t flat = 0; flat < out.data.size(); ++flat) {
      unflatten(g, flat, idx);
      std::size_t src = 0;
      for (int ax = 0; ax < g.dim; ++ax)
        src = src * n + static_cast<std::size_t>(map1(idx[ax]));
      out.data[flat] = a * phys.data[src];
    }
    return out;
  }
  Field work = transform(u, Rep::Fourier);
  for (int ax = 0; ax < g.dim; ++ax) dilate_axis(work, ax, 1.0 / b);
  work.rep = Rep::Physical;
  if (a != 1.0)
    for (auto& z : work.data) z *= a;
  return work;
}

Field fiber_scale(const Field& u, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("fiber_scale: need t > 0");
  const double N = u.grid.dim;
  return rescale(u, std::pow(t, N / 4.0), 1.0 / std::sqrt(t));
}

Field fiber_scale_lp(const Field& u, double t, double sigma) {
  if (!(t > 0.0)) throw std::invalid_argument("fiber_scale_lp: need t > 0");
  const double N = u.grid.dim;
  return rescale(u, std::pow(t, N / (2.0 * sigma + 2.0)), 1.0 / t);
}

double boundary_tail_fraction(const Field& u) {
  Field phys = transform(u, Rep::Physical);
  const Grid& g = phys.grid;
  const int lo = g.n / 10;            // inner edge of the 10% shell
  const int hi = g.n - 1 - g.n / 10;  // outer edge
  double tail = 0, total = 0;
  int idx[3];
  for (std::size_t flat = 0; flat < phys.data.size(); ++flat) {
    unflatten(g, flat, idx);
    const double d = std::norm(phys.data[flat]);
    total += d;
    for (int ax = 0; ax < g.dim; ++ax) {
      if (idx[ax] < lo || idx[ax] > hi) {
        tail += d;
        break;
      }
    }
  }
  return total > 0 ? tail / total : 0.0;
}

}  // namespace bnls
