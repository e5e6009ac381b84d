#pragma once

// Exact classification of the parameter region where the shifted-symbol
// interpolation quotient
//     Q_kappa(u) = ||u||_{L^p} / (||u||_{L^2}^kappa ||(|D|^s - 1)u||^{1-kappa})
// is bounded over H^s \ {0}: boundedness holds iff
//     kappa >= 1/2,
//     (N/s)(1/2 - 1/p) <= 1 - kappa,  and
//     1 - kappa <= ((N+1)/2)(1/2 - 1/p).
// For N = 1 the first inequality is implied by the third, and the remaining
// two are equivalent to 1/(2s) <= (1-kappa) p/(p-2) <= 1/2.

#include <string>

namespace bnls {

enum class Boundedness { Bounded, Unbounded };

struct RegionPoint {
  int dim = 1;
  double s = 2.0, p = 4.0, kappa = 0.5;
  bool cond_half = false;   // kappa >= 1/2
  bool cond_lower = false;  // (N/s)(1/2 - 1/p) <= 1 - kappa
  bool cond_upper = false;  // 1 - kappa <= ((N+1)/2)(1/2 - 1/p)
  Boundedness classification = Boundedness::Unbounded;
};

// Inequalities evaluated with an absolute slack of 1e-9 so that boundary
// points expressed in rounded doubles classify as their exact rational
// counterparts.  Throws for p <= 2, kappa outside (0,1), s <= 0 or N < 1.
RegionPoint classify_region(int N, double s, double p, double kappa);

// Power-nonlinearity slice s = 2, p = 2*sigma+2, kappa = sigma/(sigma+1):
// bounded iff max(1, 4/(N+1)) <= sigma <= 4/N, evaluated directly in sigma.
bool sigma_region_bounded(int N, double sigma);

std::string boundedness_name(Boundedness b);

}  // namespace bnls
