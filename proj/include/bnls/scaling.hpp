#pragma once
// Exact dilation machinery on the periodic box.
//
// rescale(u, a, b) returns  a * u(x / b)  sampled on the same grid.
//   - If 1/b is an integer q, the target points q*x_j lie on the source
//     lattice (modulo the period) and the result is an exact index gather.
//   - Otherwise the band-limited trigonometric interpolant of u is evaluated
//     at the dilated points axis by axis (Nyquist coefficient split evenly
//     between +-xi_max, matching the usual real-signal convention).
// Content leaving [-L, L) wraps periodically; callers working with localized
// bumps should check boundary_tail_fraction first.
//
// fiber_scale(u, t)      = t^{N/4}        * u(t^{1/2} x)   (mass-preserving)
// fiber_scale_lp(u, t,s) = t^{N/(2s+2)}   * u(t x)         (L^{2s+2}-preserving)

#include "bnls/field.hpp"

namespace bnls {

Field rescale(const Field& u, double a, double b);

Field fiber_scale(const Field& u, double t);

Field fiber_scale_lp(const Field& u, double t, double sigma);

// Fraction of ||u||^2 living in the outer 10% of the box along any axis.
double boundary_tail_fraction(const Field& u);

}  // namespace bnls
