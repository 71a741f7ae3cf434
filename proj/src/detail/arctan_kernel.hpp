#pragma once

// Shared kernel for the principal and complementary coefficient integrals
//
//   (e^{-rho}/pi) * int (e^{-2rho} + t^2)^a (1 + e^{-2rho} t^2)^b
//                   * e^{i mu arctan(e^rho t)} e^{-i nu arctan(e^{-rho} t)} dt
//
// for every (mu, nu) of a block on one shared mesh.

#include <span>

#include "matcoef/quad.hpp"

namespace matcoef::detail {

/// Result layout: value[i * nus.size() + j] belongs to (mus[i], nus[j]).
quad::BatchResult<quad::cplx> arctan_kernel_block(quad::cplx a, quad::cplx b, double rho, std::span<const int> mus,
                                                  std::span<const int> nus, const quad::QuadConfig& cfg);

}  // namespace matcoef::detail
