#pragma once

// Radial profile integrals whose end behaviour (t -> 0 and t -> infinity)
// decides boundedness of the shifted-symbol interpolation quotient.
//
//   profile_F: F(t) = integral over xi in R of
//                (t^{kappa-1} + t^{kappa}(|xi|^s - 1)^2)^{-p/(p-2)} dxi
//   profile_G: G(t) = integral over r in (0,inf) of
//                r^{N-1-2N/p} / (t^{kappa-1} + t^{kappa}(r^s - 1)^2) dr
//
// Both are evaluated by adaptive quadrature with splits at the symbol zero
// r = 1 and at the crossover scale r = 1 + t^{-1/(2s)}; the improper tail is
// mapped by r = 1/v.  Log-log slopes fitted over the bottom/top decade of the
// t-grid are compared against the exact end exponents.

#include <functional>
#include <string>
#include <vector>

namespace bnls {

struct ProfileCurve {
  std::vector<double> t;
  std::vector<double> value;
  double slope0 = 0.0;        // fitted log-log slope over the bottom decade
  double slope_inf = 0.0;     // fitted log-log slope over the top decade
  double exponent0 = 0.0;     // exact asymptotic exponent as t -> 0
  double exponent_inf = 0.0;  // exact asymptotic exponent as t -> infinity
  bool bounded0 = false;      // exact verdict at the t -> 0 end
  bool bounded_inf = false;   // exact verdict at the t -> infinity end
  bool applicable = true;     // interpolation-range condition (G only)
  std::string verdict;        // "bounded", "unbounded-at-0", ...
};

std::vector<double> log_grid(double lo, double hi, int count);

// Precondition: 2sp/(p-2) > N (integrability); throws otherwise.
ProfileCurve profile_F(double s, double p, double kappa, int N,
                       const std::vector<double>& t_grid);

// Precondition: N - 2s - 2N/p < 0 and p >= (2N+2)/(N-1); throws otherwise.
ProfileCurve profile_G(double s, double p, double kappa, int N,
                       const std::vector<double>& t_grid);

// Generalized profile with caller-supplied radial symbols p1, p2 >= 0:
//   H(t) = integral over r in (0,inf) of
//            r^{N-1} (t^{kappa-1} p1(r)^2 + t^{kappa} p2(r)^2)^{-p/(p-2)} dr,
// evaluated on the same quadrature engine (split point supplied by the
// caller, tail mapped by r = 1/v).  The default symbols p1 = 1,
// p2 = |r^s - 1| reproduce the profile_F integrand.
double profile_H_value(double t, double p, double kappa, int N,
                       const std::function<double(double)>& p1,
                       const std::function<double(double)>& p2, double split);

// Least-squares slope of log(value) against log(t) restricted to the decade
// at the given end (end = -1: bottom decade, +1: top decade).
double end_slope(const std::vector<double>& t, const std::vector<double>& v,
                 int end);

}  // namespace bnls
