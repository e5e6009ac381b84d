#pragma once

// Lower-bound estimation of M = sup Q_kappa by preconditioned gradient
// ascent from multiple analytic starts, optionally restricted to the cone
// ||(|D|^s - 1)u|| <= R ||u|| (the restricted supremum stays finite even
// where the unrestricted quotient is unbounded).

#include <optional>
#include <vector>

#include "bnls/field.hpp"
#include "bnls/util.hpp"

namespace bnls {

struct AscentOptions {
  int max_iter = 20000;
  double grad_tol = 1e-8;
  double value_tol = 1e-12;
  int starts = 4;           // random band-limited starts beyond the analytic ones
  std::uint64_t seed = 1;
};

struct AscentResult {
  double M = 0.0;           // best quotient value found (lower bound on sup)
  double m0 = 0.0;          // (sigma+1)^{1/sigma} M^{-(2sigma+2)/sigma} on the
                            // power slice s=2, p=2sigma+2, kappa=sigma/(sigma+1)
  bool m0_valid = false;
  std::vector<double> start_values;  // best value per start
  int iterations = 0;       // total accepted steps over all starts
  bool converged = false;   // best start met both stopping criteria
  bool restricted = false;
  double restriction_R = 0.0;
  Field maximizer;          // physical representation, mass 1
};

// Throws when restriction_R is absent and (N,s,p,kappa) classifies Unbounded.
AscentResult estimate_M(double s, double p, double kappa,
                        std::optional<double> restriction_R, const Grid& g,
                        const AscentOptions& opts = {});

// Scales the Fourier coefficients by 1/(1 + lambda (|xi|^s - 1)^2) with the
// unique lambda >= 0 bringing u onto the cone boundary; no-op when already
// inside. Returns the lambda used.
double cone_project(Field& u_hat, double s, double R);

}  // namespace bnls
