#pragma once
// Elementwise field helpers shared by the flows. All respect representation
// tags; callers are responsible for combining like with like.

#include "bnls/field.hpp"
#include "bnls/norms.hpp"

namespace bnls {

// y += alpha * x  (same grid and representation required)
void axpy(Field& y, double alpha, const Field& x);

void scale_inplace(Field& u, double alpha);

// Rescales so that ||u||_{L^2}^2 == m (any representation).
void set_mass(Field& u, double m);

// Rescales so that ||u||_{L^p} == 1 (any representation).
void set_lp_unit(Field& u, double p);

// Real L^2 inner product  Re <a, b>  with the representation-correct weight
// ((2L)^{-N} in Fourier, h^N in physical). Grids and reps must match.
double inner_real(const Field& a, const Field& b);

// Multiplies every Fourier coefficient by w(|xi|^2).
void apply_spectral_weight(Field& u, double (*w)(double, const void*),
                           const void* ctx);

// Translates the density centroid (circular mean of |u|^2 per axis) to the
// origin via the exact spectral phase shift, then rotates the global phase
// so that the value at the origin is real and nonnegative.
void gauge_fix(Field& u);

}  // namespace bnls
