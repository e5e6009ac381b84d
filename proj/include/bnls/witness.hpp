#pragma once

// Concrete families along which the interpolation quotient
//   Q_kappa(u) = ||u||_{L^p} / (||u||_{L^2}^kappa ||(|D|^s-1)u||_{L^2}^{1-kappa})
// has a known power-law parameter dependence.  Sweeps evaluate Q on per-member
// grids, fit the log-log slope and compare with the predicted exponent:
//
//   gaussian  u_tau = e^{i x_1} e^{-|x|^2/(2 tau^2)}, tau -> infinity:
//             slope 1/p + 1/2 - kappa  (s = 2; the tau -> 0 branch of the
//             same family has slope 1/p - kappa/2 - (1-2s)(1-kappa)/2)
//   knapp     spherical-cap annulus indicator, angular width delta fixed,
//             radial width eps -> 0: slope kappa - 1/2
//   dilation  u(x/tau), tau -> 0: slope N/p - kappa N/2 - (1-kappa)(N/2 - s)
//
// A sweep reports "unbounded-witness" when the predicted exponent points in
// the divergent direction and the fitted slope confirms it.

#include <string>
#include <vector>

namespace bnls {

struct WitnessSweep {
  std::string family;
  std::vector<double> param;
  std::vector<double> q_value;
  std::vector<double> spectral_tail;  // per-member resolution diagnostic
  double fitted_slope = 0.0;
  double predicted_slope = 0.0;
  bool unbounded_witness = false;
  std::string verdict;  // "unbounded-witness" | "bounded-direction" | "marginal"
};

// family: "gaussian" (param = tau), "knapp" (param = eps, needs dim >= 2),
// "dilation" (param = tau).  delta is the Knapp angular width; n_override
// forces the per-member grid resolution (0 = automatic).  Members whose
// spectral tail fraction exceeds 1e-6 are rejected with an exception.
WitnessSweep witness_sweep(const std::string& family,
                           const std::vector<double>& params, double s,
                           double p, double kappa, int dim,
                           double delta = 0.4, int n_override = 0);

}  // namespace bnls
