#pragma once
// Analytic witness families used for closed-form validation, sweeps, and
// solver multistarts.

#include "bnls/field.hpp"
#include "bnls/util.hpp"

namespace bnls {

// Modulated Gaussian  u(x) = exp(i xi0 x_1) exp(-|x|^2 / (2 tau^2)).
// Returned in physical representation.
Field gaussian_wave(const Grid& g, double tau, double xi0 = 1.0);

// Fourier indicator of the spherical-cap annulus
//   1 - eps < |xi| < 1 + eps   and   xi_1 / |xi| > 1 - delta^2.
// For dim = 1 the cap condition degenerates to xi > 0. Returned in Fourier
// representation, unit L^2 mass. Throws if no lattice mode qualifies.
Field knapp_cap(const Grid& g, double eps, double delta);

// Smooth radial Fourier bump supported in 1 - eps < |xi| < 1: every retained
// mode satisfies (1 - |xi|^2)^2 < (2 eps)^2, so ||(Lap+1)u||^2 < 4 eps^2 m.
// Returned in Fourier representation, unit L^2 mass.
Field annulus_bump(const Grid& g, double eps);

// iid complex Gaussian coefficients on modes with |xi| <= xi_max, zero
// elsewhere; unit L^2 mass. Returned in Fourier representation.
Field random_band_limited(const Grid& g, Rng& rng, double xi_max);

}  // namespace bnls
