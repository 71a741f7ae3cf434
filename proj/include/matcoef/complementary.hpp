#pragma once

// Complementary-series coefficients: intertwining eigenvalues d(lambda, mu),
// the A integrals and the normalized coefficients
//   <<pi(a_r) g_mu, g_nu>> = sqrt(d(lambda,mu) / d(lambda,nu)) * A(lambda, mu, nu; r).

#include <span>

#include "matcoef/principal.hpp"
#include "matcoef/quad.hpp"

namespace matcoef::complementary {

using quad::cplx;
using quad::QuadConfig;
using quad::QuadResult;
using principal::CoeffBlock;

struct ComplementaryParams {
  double lambda = 0.25;
  int mu = 0;  // even
  int nu = 0;  // even

  void validate() const;
};

/// d(lambda, mu) = 2^{2 lambda} Gamma(1/2 + lambda + mu/2) / Gamma(1/2 - lambda + mu/2) > 0.
double d_coeff(double lambda, int mu);

/// A(lambda, mu, nu; signed_r) for any real signed_r.
QuadResult a_integral(double lambda, int mu, int nu, double signed_r, const QuadConfig& cfg);

CoeffBlock a_integral_block(double lambda, std::span<const int> mus, std::span<const int> nus, double signed_r,
                            const QuadConfig& cfg);

QuadResult coeff_complementary(const ComplementaryParams& p, double r, const QuadConfig& cfg);

/// Normalized coefficients for a whole block; error estimates are scaled by
/// the same d-ratio as the values.
CoeffBlock coeff_complementary_block(double lambda, std::span<const int> mus, std::span<const int> nus, double r,
                                     const QuadConfig& cfg);

/// |lambda|^{-1} e^{-r(1 - 2|lambda|)}
double theorem_bound(double lambda, double r);

/// |coeff| |lambda| e^{r(1 - 2|lambda|)}; requires r >= 1.
double complementary_bound_ratio(const ComplementaryParams& p, double r, const QuadConfig& cfg);

}  // namespace matcoef::complementary
