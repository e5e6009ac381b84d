#include "bnls/functionals.hpp"

#include <cmath>
#include <stdexcept>

#include "bnls/field_ops.hpp"

namespace bnls {

FunctionalReport functional_suite_from(const NormReport& nr, double lp,
                                       int dim, const ProblemParams& pp) {
  const double s = pp.sigma, c = pp.c, N = dim;
  if (!(s > 0)) throw std::invalid_argument("functional_suite: sigma > 0");
  if (!(1.0 + c > 0))
    throw std::invalid_argument("functional_suite: need 1 + c > 0");
  const double a = nr.bilap2, b = nr.grad2, m = nr.mass;
  const double S = std::pow(lp, 2.0 * s + 2.0);
  const double q = N * s / 2.0;
  FunctionalReport r{};
  r.mass = m;
  r.grad2 = b;
  r.bilap2 = a;
  r.shifted2 = nr.shifted2;
  r.lp = lp;
  r.E = a - 2.0 * b - S / (s + 1.0);
  r.Sc = r.E + (1.0 + c) * m;
  r.Tc = a - 2.0 * b + (1.0 + c) * m;
  r.Kc = a - 2.0 / std::sqrt(1.0 + c) * b + m;
  r.K = a + m;
  r.D = a - (N * s / (4.0 * (s + 1.0))) * (q - 1.0) * S;
  r.Nc = r.Tc - S;
  r.Pc = ((N - 4.0) / N) * a - 2.0 * ((N - 2.0) / N) * b + (1.0 + c) * m -
         S / (s + 1.0);
  r.P1 = a - b - (N * s / (4.0 * (s + 1.0))) * S;
  r.P2 = (4.0 * (s + 1.0) / (N * s) - 1.0) * a -
         2.0 * (2.0 * (s + 1.0) / (N * s) - 1.0) * b - (1.0 + c) * m;
  r.lambda = (a - 2.0 * b - S) / m;
  r.c_of_u = -r.lambda - 1.0;
  return r;
}

FunctionalReport functional_suite(const Field& u, const ProblemParams& pp) {
  const NormReport nr = sobolev_norms(u);
  const double lp = lp_norm(u, 2.0 * pp.sigma + 2.0);
  return functional_suite_from(nr, lp, u.grid.dim, pp);
}

double shifted_symbol_norm(const Field& u, double s) {
  struct Ctx {
    double s;
  } ctx{s};
  auto w = [](double k2, const void* p) {
    const double sv = static_cast<const Ctx*>(p)->s;
    const double d = std::pow(k2, sv / 2.0) - 1.0;
    return d * d;
  };
  return std::sqrt(spectral_quadratic(u, w, &ctx));
}

double gn_quotient(const Field& u, double s, double p, double kappa) {
  if (!(s > 0) || !(p > 2) || !(kappa > 0) || !(kappa < 1))
    throw std::invalid_argument("gn_quotient: need s>0, p>2, 0<kappa<1");
  const double num = lp_norm(u, p);
  const double m = std::sqrt(sobolev_norms(u).mass);
  const double an = shifted_symbol_norm(u, s);
  if (!(m > 0) || !(an > 0))
    throw std::invalid_argument("gn_quotient: degenerate denominator");
  return num / (std::pow(m, kappa) * std::pow(an, 1.0 - kappa));
}

double gns_quotient(const Field& u, double sigma) {
  const NormReport nr = sobolev_norms(u);
  const double N = u.grid.dim;
  const double S = std::pow(lp_norm(u, 2.0 * sigma + 2.0), 2.0 * sigma + 2.0);
  const double e1 = N * sigma / 4.0;               // power of ||Lap u||^2
  const double e2 = (sigma + 1.0) - N * sigma / 4.0;  // power of mass
  if (!(nr.bilap2 > 0) || !(nr.mass > 0))
    throw std::invalid_argument("gns_quotient: zero field");
  return S / (std::pow(nr.bilap2, e1) * std::pow(nr.mass, e2));
}

double h_quotient(const Field& u, double sigma) {
  const double N = u.grid.dim;
  const double q = N * sigma / 2.0;
  if (!(q > 2))
    throw std::invalid_argument("h_quotient: defined only for N sigma > 4");
  const NormReport nr = sobolev_norms(u);
  const double S = std::pow(lp_norm(u, 2.0 * sigma + 2.0), 2.0 * sigma + 2.0);
  if (!(nr.grad2 > 0) || !(S > 0))
    throw std::invalid_argument("h_quotient: degenerate field");
  return std::pow(nr.bilap2, q - 1.0) / (std::pow(nr.grad2, q - 2.0) * S);
}

Field euler_gradient(const Field& u, const ProblemParams& pp,
                     bool include_mass_term) {
  const double c = pp.c, s = pp.sigma;
  Field hat = transform(u, Rep::Fourier);
  Field lin = hat;
  {
    const Grid& g = lin.grid;
    int idx[3];
    const double m0 = include_mass_term ? 1.0 + c : 0.0;
    for (std::size_t flat = 0; flat < lin.data.size(); ++flat) {
      unflatten(g, flat, idx);
      double k2 = 0;
      for (int ax = 0; ax < g.dim; ++ax) {
        const double xi = g.xi(idx[ax]);
        k2 += xi * xi;
      }
      lin.data[flat] *= k2 * k2 - 2.0 * k2 + m0;
    }
  }
  Field phys = transform(u, Rep::Physical);
  for (auto& z : phys.data) z = std::pow(std::norm(z), s) * z;
  transform_inplace(phys, Rep::Fourier);
  axpy(lin, -1.0, phys);
  return lin;  // Fourier representation
}

double lagrange_multiplier(const Field& u, double sigma) {
  const NormReport nr = sobolev_norms(u);
  const double S = std::pow(lp_norm(u, 2.0 * sigma + 2.0), 2.0 * sigma + 2.0);
  if (!(nr.mass > 0)) throw std::invalid_argument("lagrange: zero field");
  return (nr.bilap2 - 2.0 * nr.grad2 - S) / nr.mass;
}

}  // namespace bnls
