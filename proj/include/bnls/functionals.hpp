#pragma once
// Variational functionals for the mixed-dispersion quartic problem.
//
// With a = ||Lap u||^2, b = ||grad u||^2, m = ||u||^2, S = ||u||_{2s+2}^{2s+2}
// (s = sigma), N = dim, and q = N s / 2:
//
//   E    = a - 2 b - S/(s+1)
//   Sc   = E + (1+c) m
//   Tc   = a - 2 b + (1+c) m                    (symbol (|xi|^2-1)^2 + c)
//   Kc   = a - (2/sqrt(1+c)) b + m
//   K    = a + m
//   D    = a - (N s/(4(s+1))) (q - 1) S
//   Nc   = Tc - S
//   Pc   = ((N-4)/N) a - 2((N-2)/N) b + (1+c) m - S/(s+1)
//   P1   = a - b - (N s/(4(s+1))) S              ( = (N/4)(Nc - Pc) )
//   P2   = (4(s+1)/(N s) - 1) a - 2 (2(s+1)/(N s) - 1) b - (1+c) m
//   lambda = (a - 2 b - S)/m,   c_of_u = -lambda - 1
//
// The scale-invariant quotients:
//   gn_quotient  Q_kappa = ||u||_p / (||u||^kappa ||(|D|^s - 1)u||^{1-kappa})
//   gns_quotient        = S / (a^{N s/4} m^{(s+1) - N s/4})
//   h_quotient   H      = a^{q-1} / (b^{q-2} S)        (q > 2 required)

#include "bnls/field.hpp"
#include "bnls/norms.hpp"

namespace bnls {

struct ProblemParams {
  double sigma = 1.0;
  double c = 1.0;
};

struct FunctionalReport {
  double E, Sc, Tc, Kc, K, D, Nc, Pc, P1, P2, lambda, c_of_u;
  double mass, grad2, bilap2, shifted2, lp;
};

// Assembles the full report; `lp` is the L^{2 sigma + 2} norm of u.
FunctionalReport functional_suite(const Field& u, const ProblemParams& pp);

// Same, but from precomputed ingredients (used by the fiber-scaled flows).
FunctionalReport functional_suite_from(const NormReport& nr, double lp,
                                       int dim, const ProblemParams& pp);

double gn_quotient(const Field& u, double s, double p, double kappa);

double gns_quotient(const Field& u, double sigma);

double h_quotient(const Field& u, double sigma);

// Gradient of the action at u:  Lap^2 u + 2 Lap u + (1+c) u - |u|^{2s} u,
// so that d/dt Sc(u + t v)|_0 = 2 Re<G, v>. With include_mass_term = false
// the (1+c) u term is dropped, giving the energy gradient instead.
Field euler_gradient(const Field& u, const ProblemParams& pp,
                     bool include_mass_term = true);

// Multiplier of the elliptic equation satisfied by a constrained critical
// point of E at fixed mass: lambda = (a - 2 b - S)/m.
double lagrange_multiplier(const Field& u, double sigma);

// ||A u||_{L^2} for the symbol A(xi) = |xi|^s - 1.
double shifted_symbol_norm(const Field& u, double s);

}  // namespace bnls
