#include "bnls/fiber.hpp"

#include <cmath>
#include <stdexcept>

#include "bnls/norms.hpp"

namespace bnls {
namespace {

// Safeguarded Newton for the root of dphi inside [lo, hi], where dphi is
// monotone (convex/concave side of the inflection).
double newton_root(const FiberRoots& fr, double lo, double hi) {
  double t = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double f = fiber_dphi(fr, t);
    // second derivative of phi
    const double df =
        2.0 * fr.a - fr.q * (fr.q - 1.0) * fr.cc * std::pow(t, fr.q - 2.0);
    if ((f > 0.0) == (fiber_dphi(fr, hi) > 0.0))
      hi = t;
    else
      lo = t;
    double next = df != 0.0 ? t - f / df : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 1e-16 * t) return next;
    t = next;
  }
  return t;
}

}  // namespace

double fiber_phi(const FiberRoots& fr, double t) {
  return fr.a * t * t - 2.0 * fr.b * t - fr.cc * std::pow(t, fr.q);
}

double fiber_dphi(const FiberRoots& fr, double t) {
  return 2.0 * fr.a * t - 2.0 * fr.b -
         fr.q * fr.cc * std::pow(t, fr.q - 1.0);
}

FiberRoots fiber_roots_from(double a, double b, double cc, double q) {
  if (!(q > 2.0))
    throw std::invalid_argument("fiber profile requires N*sigma > 4");
  if (!(a > 0.0 && b > 0.0 && cc > 0.0))
    throw std::invalid_argument("fiber profile requires positive coefficients");
  FiberRoots fr;
  fr.a = a;
  fr.b = b;
  fr.cc = cc;
  fr.q = q;
  fr.t_infl = std::pow(2.0 * a / (q * (q - 1.0) * cc), 1.0 / (q - 2.0));
  fr.exists = fiber_dphi(fr, fr.t_infl) > 0.0;
  if (!fr.exists) return fr;
  if (q == 3.0) {
    // dphi(t) = -3 cc t^2 + 2 a t - 2 b: exact quadratic roots
    const double disc = a * a - 6.0 * cc * b;
    const double sq = std::sqrt(disc);
    fr.t1 = (a - sq) / (3.0 * cc);
    fr.t2 = (a + sq) / (3.0 * cc);
    return fr;
  }
  // dphi(0) = -2b < 0 < dphi(t_infl): root t1 in (0, t_infl)
  fr.t1 = newton_root(fr, 1e-300, fr.t_infl);
  // dphi decreases beyond t_infl; bracket t2 by doubling
  double hi = 2.0 * fr.t_infl;
  while (fiber_dphi(fr, hi) > 0.0) hi *= 2.0;
  fr.t2 = newton_root(fr, fr.t_infl, hi);
  return fr;
}

FiberRoots fiber_roots(const Field& u, double sigma) {
  const int N = u.grid.dim;
  if (!(N * sigma > 4.0))
    throw std::invalid_argument("fiber profile requires N*sigma > 4");
  const NormReport nr = sobolev_norms(u);
  const double S = std::pow(lp_norm(u, 2.0 * sigma + 2.0), 2.0 * sigma + 2.0);
  return fiber_roots_from(nr.bilap2, nr.grad2, S / (sigma + 1.0),
                          0.5 * N * sigma);
}

}  // namespace bnls
