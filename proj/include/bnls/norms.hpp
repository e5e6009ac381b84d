#pragma once
// Quadratic spectral norms and physical-space L^p norms.
//
// All quadratic norms are evaluated in Fourier representation with the
// exact discrete weights:
//   mass     = (2L)^{-N} sum |uhat|^2            ( = ||u||_{L^2}^2 )
//   grad2    = (2L)^{-N} sum |xi|^2 |uhat|^2     ( = ||grad u||^2 )
//   bilap2   = (2L)^{-N} sum |xi|^4 |uhat|^2     ( = ||Lap u||^2 )
//   shifted2 = (2L)^{-N} sum (1-|xi|^2)^2 |uhat|^2 ( = ||(Lap+1)u||^2 )
// and lp_norm(u, p) = ( sum |u|^p h^N )^{1/p} in physical space.

#include "bnls/field.hpp"

namespace bnls {

struct NormReport {
  double mass = 0.0;
  double grad2 = 0.0;
  double bilap2 = 0.0;
  double shifted2 = 0.0;
};

// Accepts either representation (transforms a copy if needed).
NormReport sobolev_norms(const Field& u);

double lp_norm(const Field& u, double p);

// Generic weighted spectral quadratic form (2L)^{-N} sum w(|xi|^2) |uhat|^2.
// `w` receives |xi|^2.
double spectral_quadratic(const Field& u, double (*w)(double, const void*),
                          const void* ctx);

}  // namespace bnls
