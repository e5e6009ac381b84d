#pragma once

// Preconditioned constrained gradient flows.
//
//   minimize_global  E(u)               over ||u||_{L^2}^2 = m
//   minimize_Tc      T_c(u)             over ||u||_{L^{2s+2}} = 1
//   minimize_A       K(u) = a + m       over ||u||_{L^{2s+2}} = 1
//   minimize_Ac      K_c(u)             over ||u||_{L^{2s+2}} = 1
//   minimize_local   E(u) on the fiber-projected set {P1 = 0, D > 0},
//                    realized as the envelope objective phi_v(t1(v)) over
//                    ||v||_{L^2}^2 = m, materializing u = (v)_{t1} at the end.
//
// Every flow takes preconditioned Armijo steps ((1+|xi|^4)^{-1} on the L^2
// gradient, initial step 0.5, halved on rejection, grown 1.25x capped at 4 on
// acceptance) and stops when the relative objective change stays below
// value_tol for stall_window iterations AND the preconditioned gradient
// residual is below grad_tol, or at max_iter.

#include <cstdint>
#include <vector>

#include "bnls/field.hpp"
#include "bnls/functionals.hpp"
#include "bnls/util.hpp"

namespace bnls {

struct SolverOptions {
  int max_iter = 200000;
  double value_tol = 1e-12;
  double grad_tol = 1e-8;
  int stall_window = 10;
  int random_starts = 4;       // plus one Gaussian start
  double start_band = 3.0;     // |xi| cutoff of random starts
  std::uint64_t seed = 20240809;
  bool collect_history = true;
  double mu0_hint = 0.0;       // minimize_local guard; <= 0 recomputes it
  double kstar_hint = 0.0;     // critical-regime guard; <= 0 recomputes it
  std::vector<Field> extra_starts;
};

struct HistoryEntry {
  int iter = 0;
  double value = 0.0;
  double grad = 0.0;  // preconditioned gradient residual
};

struct MinimizerResult {
  Field field;                 // physical representation, gauge-fixed
  double value = 0.0;          // attained objective
  double multiplier = 0.0;     // c(u) = -lambda - 1
  double residual_nehari = 0.0, residual_pohozaev = 0.0;
  double residual_p1 = 0.0, residual_p2 = 0.0;
  double residual_grad = 0.0;  // preconditioned gradient norm at the end
  double residual_euler = 0.0; // relative Euler-Lagrange residual
  int iterations = 0;
  bool converged = false;
  bool degenerate = false;     // weak-convergence-to-zero detector
  double mass = 0.0;
  double tc_value = 0.0;       // t(c) for minimize_Tc, I for minimize_A/Ac
  std::uint64_t seed = 0;
  std::vector<HistoryEntry> history;  // downsampled to <= 1000 entries
};

MinimizerResult minimize_global(double m, const ProblemParams& pp,
                                const Grid& g, const SolverOptions& opts = {});
MinimizerResult minimize_Tc(double c, double sigma, const Grid& g,
                            const SolverOptions& opts = {});
MinimizerResult minimize_A(double sigma, const Grid& g,
                           const SolverOptions& opts = {});
MinimizerResult minimize_Ac(double c, double sigma, const Grid& g,
                            const SolverOptions& opts = {});
MinimizerResult minimize_local(double m, double sigma, const Grid& g,
                               const SolverOptions& opts = {});

// mu0 = B^{-1/sigma} [ (N sigma/(4(sigma+1))) (N sigma/2 - 1) ]^{-1/sigma}
//       ((N sigma - 2)/(N sigma - 4))^{2/sigma - N/2}
double mu0_from_B(double B, int N, double sigma);

// C(N,sigma) = (4(sigma+1)/(N sigma)) (4(sigma+1)/(N sigma) - 1)^{N sigma/(4(sigma+1)) - 1}
double gns_threshold_constant(int N, double sigma);

}  // namespace bnls
