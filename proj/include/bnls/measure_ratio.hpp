#pragma once

// Weighted interpolation inequality on finite measure spaces: the sharp
// constant M1 of
//     ||w phi||_{L^q(mu)} <= M1 ||w1 phi||_{L^2}^{1-kappa} ||w2 phi||_{L^2}^{kappa}
// equals (1-kappa)^{(kappa-1)/2} kappa^{-kappa/2} * M2, where M2 is the sharp
// constant of the one-parameter family of L^2-style bounds.  This module
// computes both sides numerically on small explicit spaces.

#include <complex>
#include <cstdint>
#include <vector>

#include "bnls/util.hpp"

namespace bnls {

struct FiniteMeasureInstance {
  std::vector<double> mu;                  // positive point masses
  std::vector<std::complex<double>> w, w1, w2;
  double kappa = 0.5;                      // in (0,1)
  double q = 1.0;                          // in [1,2)
};

struct MeasureRatioResult {
  double M1 = 0.0;       // sup of the two-weight quotient over phi
  double M2 = 0.0;       // sup_t t^{(1-kappa)/2} ||w (|w1|^2 + t|w2|^2)^{-1/2}||_r
  double t_star = 0.0;   // maximizing t for M2
  double ratio = 0.0;    // M1 / M2
  double predicted_ratio = 0.0;  // (1-kappa)^{(kappa-1)/2} kappa^{-kappa/2}
};

// Throws std::invalid_argument when the instance invariants fail:
// sizes consistent and <= 16, mu > 0, kappa in (0,1), q in [1,2),
// w*w1 and w*w2 not identically zero, and w = 0 wherever w1 = w2 = 0.
void validate_instance(const FiniteMeasureInstance& inst);

double predicted_measure_ratio(double kappa);

// The quotient ||w phi||_q / (||w1 phi||_2^{1-kappa} ||w2 phi||_2^{kappa})
// for a nonnegative amplitude vector x (phases never help).
double measure_quotient(const FiniteMeasureInstance& inst,
                        const std::vector<double>& x);

MeasureRatioResult finite_measure_oracle(const FiniteMeasureInstance& inst,
                                         std::uint64_t seed = 17);

// Random instance with strictly nonzero weights (keeps both constants
// finite); magnitudes log-uniform in [0.2, 5], random phases.
FiniteMeasureInstance random_instance(Rng& rng, int size, double kappa,
                                      double q);

}  // namespace bnls
