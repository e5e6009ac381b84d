#pragma once

// Best constants and derived mass thresholds for one (dim, sigma):
//   I       min of K = ||Lap u||^2 + ||u||^2 on the unit L^{2s+2} sphere
//   B       Gagliardo-Nirenberg best constant, evaluated as the scale-free
//           quotient at the minimizer of (A)
//   C       the closed-form combination with I = C * B^{-1/(s+1)}
//   k*      (s+1)^{1/s} B^{-1/s}             (mass-critical threshold)
//   m0      (s+1)^{1/s} M^{-(2s+2)/s}        (requires M)
//   mu0     the fiber-membership threshold   (requires N s > 4)
// M is the supremum of the shifted-symbol quotient Q_kappa at
// (s, p, kappa) = (2, 2s+2, s/(s+1)); it is only estimated where that
// quotient is bounded (or on a restricted cone when a radius is supplied),
// and is always a lower bound on the true supremum, making the reported m0
// an upper bound on the true m0.

#include <optional>

#include "bnls/field.hpp"
#include "bnls/minimize.hpp"

namespace bnls {

struct ConstantsReport {
  int dim = 1;
  double sigma = 1.0;
  double I = 0.0;
  double B = 0.0;
  double C = 0.0;
  double identity_residual = 0.0;  // |I - C B^{-1/(s+1)}| / I
  double k_star = 0.0;
  double M = 0.0;      // NaN when not estimated
  double m0 = 0.0;     // NaN when M is not estimated
  double mu0 = 0.0;    // NaN unless N s > 4
  bool M_estimated = false;
  bool M_restricted = false;
  double restriction_R = 0.0;
  bool region_bounded = false;  // boundedness of Q at (2, 2s+2, s/(s+1))
};

// restriction_R, when supplied, estimates M on the spectral cone
// ||(Lap + 1) u|| <= R ||u|| even where the unrestricted quotient is
// unbounded (the threshold construction only needs cone elements).
ConstantsReport best_constants(double sigma, const Grid& g,
                               const SolverOptions& opts = {},
                               std::optional<double> restriction_R = {});

}  // namespace bnls
