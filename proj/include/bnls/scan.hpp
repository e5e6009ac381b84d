#pragma once

// Parameter sweeps over the mass m and the frequency shift c producing
// validated branch curves:
//   scan_Emin    E_min(m)  = inf { E(u) : ||u||^2 = m }          (subcritical)
//   scan_tc      t(c)      = inf { T_c(u) : ||u||_{2s+2} = 1 }
//   scan_Etilde  Etilde_min(m) on the fiber-projected set        (N s > 4)
//
// Each scan solves its points (warm-chained in parameter order when jobs <= 1,
// independently in parallel otherwise), then runs a sequential validation
// pass.  Failed points never abort a scan; they carry flags.

#include <cstdint>
#include <string>
#include <vector>

#include "bnls/field.hpp"
#include "bnls/minimize.hpp"

namespace bnls {

struct BranchPoint {
  double param = 0.0;       // m or c
  double value = 0.0;       // E_min / t(c) / Etilde_min
  double multiplier = 0.0;  // c(u)
  double residual_max = 0.0;
  double mass = 0.0;
  double bilap2 = 0.0, grad2 = 0.0, shifted2 = 0.0;
  double lp = 0.0;          // ||u||_{2s+2}
  double D = 0.0;           // membership functional D(u)
  int iterations = 0;
  bool converged = false;
  bool degenerate = false;
  bool failed = false;      // solver refused or threw; see note
  std::string note;
};

struct ValidationFlag {
  std::string name;
  bool pass = false;
  double measured = 0.0;  // worst offending quantity
  double bound = 0.0;     // the bound it was held against
  std::string detail;
};

struct BranchCurve {
  std::string kind;  // "emin" | "tc" | "etilde"
  int dim = 1;
  double sigma = 1.0;
  std::vector<double> grid;
  std::vector<BranchPoint> points;
  std::vector<ValidationFlag> flags;
  double I_independent = 0.0;  // minimize_A value (tc scans)
  std::uint64_t seed = 0;

  bool all_pass() const {
    for (const ValidationFlag& f : flags)
      if (!f.pass) return false;
    return true;
  }
};

// E_min(m) over a strictly increasing mass grid.  Validation: concavity,
// E_min(m) <= -m, E_min(m)/m -> -1 on the bottom decade, strictly increasing
// multipliers, and E_min(m)/m decreasing on the top decade (subcritical).
// Critical-regime points with m >= k* are refused point-wise.
BranchCurve scan_Emin(const std::vector<double>& m_grid,
                      const ProblemParams& pp, const Grid& g,
                      const SolverOptions& opts = {}, int jobs = 1);

// t(c) over a strictly increasing c grid.  Validation: strict monotonicity,
// the two-sided estimate
//   (1 - (1+c)^{-1/2}) (1+c)^{1 - Ns/(4(s+1))} I < t(c) < (1+c)^{1 - Ns/(4(s+1))} I
// at every point (I from an independent minimize_A run), boundedness of
// t(c)/sqrt(c) on the bottom decade, and the large-c limits (converge-m/d/si)
// within 5% at the largest two points.
BranchCurve scan_tc(const std::vector<double>& c_grid, double sigma,
                    const Grid& g, const SolverOptions& opts = {},
                    int jobs = 1);

// Etilde_min(m) over a strictly increasing mass grid below mu0.  Validation:
// -((Ns-2)^2/(Ns(Ns-4))) m <= Etilde_min(m) <= -m, decreasing values,
// non-increasing Etilde_min(m)/m, and sub-additivity spot checks on grid
// pairs that sum onto the grid.  Degenerate points are flagged, not failed.
BranchCurve scan_Etilde(const std::vector<double>& m_grid, double sigma,
                        const Grid& g, const SolverOptions& opts = {},
                        int jobs = 1);

}  // namespace bnls
