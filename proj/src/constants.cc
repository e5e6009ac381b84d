#include "bnls/constants.hpp"

#include <cmath>
#include <limits>

#include "bnls/best_constant.hpp"
#include "bnls/functionals.hpp"
#include "bnls/region.hpp"

namespace bnls {

ConstantsReport best_constants(double sigma, const Grid& g,
                               const SolverOptions& opts,
                               std::optional<double> restriction_R) {
  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  ConstantsReport rep;
  rep.dim = g.dim;
  rep.sigma = sigma;

  SolverOptions aopts = opts;
  aopts.collect_history = false;
  aopts.extra_starts.clear();
  const MinimizerResult qa = minimize_A(sigma, g, aopts);
  rep.I = qa.value;
  rep.B = gns_quotient(qa.field, sigma);
  rep.C = gns_threshold_constant(g.dim, sigma);
  rep.identity_residual =
      std::abs(rep.I - rep.C * std::pow(rep.B, -1.0 / (sigma + 1.0))) / rep.I;
  rep.k_star = std::pow(sigma + 1.0, 1.0 / sigma) *
               std::pow(rep.B, -1.0 / sigma);
  rep.mu0 =
      g.dim * sigma > 4.0 ? mu0_from_B(rep.B, g.dim, sigma) : kNaN;

  const double p = 2.0 * sigma + 2.0;
  const double kappa = sigma / (sigma + 1.0);
  rep.region_bounded = sigma_region_bounded(g.dim, sigma);
  rep.M = kNaN;
  rep.m0 = kNaN;
  if (rep.region_bounded || restriction_R) {
    AscentOptions mop;
    mop.seed = opts.seed;
    const AscentResult ar = estimate_M(2.0, p, kappa, restriction_R, g, mop);
    rep.M = ar.M;
    rep.m0 = std::pow(sigma + 1.0, 1.0 / sigma) *
             std::pow(ar.M, -(2.0 * sigma + 2.0) / sigma);
    rep.M_estimated = true;
    rep.M_restricted = ar.restricted;
    rep.restriction_R = ar.restriction_R;
  }
  return rep;
}

}  // namespace bnls
