#pragma once

// Principal-series coefficients <pi(a_r) f_mu, f_nu> of SL(2,R) and the two
// bound ratios checked by the harness.

#include <span>
#include <vector>

#include "matcoef/quad.hpp"

namespace matcoef::principal {

using quad::cplx;
using quad::QuadConfig;
using quad::QuadResult;

inline constexpr double kMaxAbsS = 100.0;
inline constexpr int kMaxAbsIndex = 200;

struct PrincipalParams {
  double s = 0.0;
  int epsilon = 0;  // parity, 0 or 1
  int mu = 0;
  int nu = 0;

  /// Throws std::invalid_argument on parity or range violations.
  void validate() const;
};

/// Coefficients for every (mu, nu) pair of a block at one (s, epsilon, r).
struct CoeffBlock {
  std::vector<int> mus;
  std::vector<int> nus;
  std::vector<cplx> value;  // value[i * nus.size() + j] for (mus[i], nus[j])
  std::vector<double> err_estimate;
  long nodes_used = 0;
  bool converged = false;

  cplx at(std::size_t i, std::size_t j) const { return value[i * nus.size() + j]; }
  double err_at(std::size_t i, std::size_t j) const { return err_estimate[i * nus.size() + j]; }
};

/// Node budget: oscillation_scale is raised to |s| + max|mu| + max|nu|.
QuadConfig budget(const QuadConfig& cfg, double s, std::span<const int> mus, std::span<const int> nus);

/// Throws quad::QuadratureError when the mesh budget runs out.
QuadResult coeff_principal(const PrincipalParams& p, double r, const QuadConfig& cfg);

/// Block evaluation on one shared mesh; does not throw on non-convergence
/// (check `converged` and the per-entry error estimates).
CoeffBlock coeff_principal_block(double s, int epsilon, std::span<const int> mus, std::span<const int> nus, double r,
                                 const QuadConfig& cfg);

/// e^r |coeff| |s| / (|s| + 1); requires s != 0 and r >= 1.
double principal_bound_ratio(const PrincipalParams& p, double r, const QuadConfig& cfg);

/// |coeff| / ((1 + r) e^{-r}); any s, r >= 0.
double howe_tan_ratio(const PrincipalParams& p, double r, const QuadConfig& cfg);

/// The bounds themselves, shared with the harness.
double theorem_bound(double s, double r);
double howe_tan_bound(double r);

}  // namespace matcoef::principal
