#pragma once

// Critical points of the mass-preserving dilation profile
//   phi_u(t) = E(t^{N/4} u(t^{1/2} .)) = a t^2 - 2 b t - cc t^{q},
// with a = ||Lap u||^2, b = ||grad u||^2, cc = ||u||_{2s+2}^{2s+2}/(s+1) and
// q = N*sigma/2 > 2 (the supercritical fiber shape).  phi' has exactly two
// positive roots t1 < t_infl < t2 when phi'(t_infl) > 0 and none otherwise.

#include "bnls/field.hpp"

namespace bnls {

struct FiberRoots {
  double a = 0.0, b = 0.0, cc = 0.0;  // profile coefficients
  double q = 0.0;                     // N*sigma/2
  double t_infl = 0.0;
  bool exists = false;                // phi'(t_infl) > 0
  double t1 = 0.0, t2 = 0.0;          // set only when exists
};

double fiber_phi(const FiberRoots& fr, double t);
double fiber_dphi(const FiberRoots& fr, double t);

// Coefficient-level solver; requires q > 2 and positive coefficients.
FiberRoots fiber_roots_from(double a, double b, double cc, double q);

// Field-level wrapper: derives (a, b, cc, q) from u and sigma; requires
// N*sigma > 4.
FiberRoots fiber_roots(const Field& u, double sigma);

}  // namespace bnls
