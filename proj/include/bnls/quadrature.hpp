#pragma once
// Adaptive Gauss-Kronrod (G7, K15) quadrature with panel subdivision, plus a
// dyadic-panel extension to [a, infinity) for integrands with algebraic
// decay.

#include <functional>

namespace bnls {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;   // accumulated error estimate
  int evaluations = 0;  // integrand evaluations
  bool converged = false;
};

QuadResult integrate(const std::function<double(double)>& f, double a,
                     double b, double rel_tol = 1e-10,
                     double abs_tol = 1e-300, int max_depth = 48);

// Integrates f over [a, inf): dyadic panels [a 2^k, a 2^{k+1}) (a > 0) are
// accumulated until a panel contributes less than rel_tol of the running
// total several times in a row.
QuadResult integrate_to_infinity(const std::function<double(double)>& f,
                                 double a, double rel_tol = 1e-10);

}  // namespace bnls
