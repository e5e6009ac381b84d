#include "bnls/region.hpp"

#include <stdexcept>

namespace bnls {
namespace {
constexpr double kEq = 1e-9;  // equality slack for rounded rational inputs
}

RegionPoint classify_region(int N, double s, double p, double kappa) {
  if (N < 1) throw std::invalid_argument("dimension must be >= 1");
  if (!(p > 2.0)) throw std::invalid_argument("p must exceed 2");
  if (!(kappa > 0.0 && kappa < 1.0))
    throw std::invalid_argument("kappa must lie in (0,1)");
  if (!(s > 0.0)) throw std::invalid_argument("s must be positive");
  RegionPoint pt;
  pt.dim = N;
  pt.s = s;
  pt.p = p;
  pt.kappa = kappa;
  const double half_gap = 0.5 - 1.0 / p;
  pt.cond_half = kappa >= 0.5 - kEq;
  pt.cond_lower = (N / s) * half_gap <= 1.0 - kappa + kEq;
  pt.cond_upper = 1.0 - kappa <= 0.5 * (N + 1.0) * half_gap + kEq;
  pt.classification = (pt.cond_half && pt.cond_lower && pt.cond_upper)
                          ? Boundedness::Bounded
                          : Boundedness::Unbounded;
  return pt;
}

bool sigma_region_bounded(int N, double sigma) {
  if (N < 1) throw std::invalid_argument("dimension must be >= 1");
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  const double lo = N >= 3 ? 1.0 : 4.0 / (N + 1.0);
  return sigma >= lo - kEq && sigma <= 4.0 / N + kEq;
}

std::string boundedness_name(Boundedness b) {
  return b == Boundedness::Bounded ? "Bounded" : "Unbounded";
}

}  // namespace bnls
