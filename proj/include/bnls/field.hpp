#pragma once
// A complex scalar field sampled on a periodic grid, tagged with its
// current representation. Transforms follow the analysis convention
//   uhat(xi) = integral exp(-i x.xi) u(x) dx
// discretized so that the discrete Plancherel identity
//   sum |u_j|^2 h^N  ==  (2L)^{-N} sum_k |uhat_k|^2
// holds exactly (to rounding) in both directions.

#include <complex>
#include <vector>

#include "bnls/grid.hpp"

namespace bnls {

enum class Rep { Physical, Fourier };

using cplx = std::complex<double>;

struct Field {
  Grid grid;
  Rep rep = Rep::Physical;
  std::vector<cplx> data;

  Field() = default;
  Field(const Grid& g, Rep r) : grid(g), rep(r), data(g.size()) {}
};

// Returns a copy of u in the requested representation (no-op copy if equal).
Field transform(const Field& u, Rep target);

// In-place variant used by inner loops to avoid allocation churn.
void transform_inplace(Field& u, Rep target);

}  // namespace bnls
