#pragma once

// Discrete-series coefficients v_{m,n}(a_r) = <g_m, pi(a_r) g_n> for D+ and D-
// of weight l = 2h, in closed form through the normalized Jacobi function.

#include "matcoef/quad.hpp"

namespace matcoef::discrete {

/// A half-integer stored as twice its value.
struct HalfInt {
  int twice = 0;

  static HalfInt from_double(double v);  // throws unless 2v is an integer
  double value() const { return twice / 2.0; }
  friend bool operator==(HalfInt, HalfInt) = default;
};

enum class Sign { plus, minus };

struct DiscreteParams {
  int ell = 1;
  Sign sign = Sign::plus;
  HalfInt m;
  HalfInt n;

  /// Indices given as offsets from the lowest (D+) or highest (D-) weight:
  /// m = +-(h + dm), n = +-(h + dn).
  static DiscreteParams from_offsets(int ell, Sign sign, int dm, int dn);

  void validate() const;
  double h() const { return ell / 2.0; }
};

/// Closed form; r = 0 gives the Kronecker delta.
double coeff_discrete(const DiscreteParams& p, double r);

/// Gamma-prefactor times Jacobi-series route, kept as a cross-check at small
/// indices (overflows for large ones).
double coeff_discrete_gamma_route(const DiscreteParams& p, double r);

/// cosh(r) |v_{m,n}(a_r)|
double discrete_bound_ratio(const DiscreteParams& p, double r);

/// int_0^inf |v_{m,n}(a_r)|^2 sinh(2r) dr, which equals 1/(l-1); needs l >= 2.
quad::QuadResult formal_degree_integral(const DiscreteParams& p, const quad::QuadConfig& cfg);

}  // namespace matcoef::discrete
