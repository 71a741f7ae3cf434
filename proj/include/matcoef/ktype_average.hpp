#pragma once

// Coefficients of finite K-type expansions at general group elements
// k(theta1) a_r k(theta2), and their double K-average.
//
// Convention: pi(k_theta) e_mu = e^{i mu theta} e_mu. For the discrete series
// the basis vector g_m is labelled by mu = 2m.

#include <complex>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "matcoef/discrete.hpp"
#include "matcoef/quad.hpp"
#include "matcoef/random.hpp"

namespace matcoef::ktype {

using quad::cplx;
using quad::QuadConfig;
using quad::QuadResult;

struct Principal {
  double s = 0.0;
  int epsilon = 0;
};
struct Complementary {
  double lambda = 0.25;
};
struct DiscretePlus {
  int ell = 2;
};
struct DiscreteMinus {
  int ell = 2;
};

using RepresentationId = std::variant<Principal, Complementary, DiscretePlus, DiscreteMinus>;

/// Whether `index` labels a K-type of the representation.
bool index_allowed(const RepresentationId& rep, int index);

/// The allowed indices with |index| <= bound.
std::vector<int> index_pool(const RepresentationId& rep, int bound);

struct KTypeVector {
  std::vector<std::pair<int, cplx>> entries;

  double norm_sq() const;
  std::vector<int> indices() const;
  void validate(const RepresentationId& rep) const;  // distinct, allowed indices
  KTypeVector scaled(cplx a) const;
};

struct KAKElement {
  double theta1 = 0.0;
  double r = 0.0;
  double theta2 = 0.0;
};

/// C(mu_i, nu_j) = <pi(a_r) e_{mu_i}, e_{nu_j}>, row-major over (mus, nus).
struct CoefficientTable {
  std::vector<int> mus;
  std::vector<int> nus;
  std::vector<cplx> value;
  std::vector<double> err_estimate;

  cplx at(std::size_t i, std::size_t j) const { return value[i * nus.size() + j]; }
};

/// Throws quad::QuadratureError if a quadrature-backed table does not converge.
CoefficientTable coefficient_table(const RepresentationId& rep, std::span<const int> mus, std::span<const int> nus,
                                   double r, const QuadConfig& cfg);

/// <pi(k_{theta1} a_r k_{theta2}) f, g> from a table that covers f and g.
QuadResult coeff_from_table(const CoefficientTable& t, const KTypeVector& f, const KTypeVector& g, double theta1,
                            double theta2);

QuadResult coeff_general(const RepresentationId& rep, const KTypeVector& f, const KTypeVector& g, const KAKElement& x,
                         const QuadConfig& cfg);

/// Basis-sum form of the unit-mass double K-average of |coefficient|^2.
double averaged_coeff_sq(const RepresentationId& rep, const KTypeVector& f, const KTypeVector& g, double r,
                         const QuadConfig& cfg);
double averaged_coeff_sq(const CoefficientTable& t, const KTypeVector& f, const KTypeVector& g);

/// The same average by trapezoidal quadrature over (theta1, theta2).
QuadResult averaged_coeff_sq_direct(const CoefficientTable& t, const KTypeVector& f, const KTypeVector& g,
                                    const QuadConfig& cfg);

/// Random unit vector with `terms` distinct indices drawn from `pool`.
KTypeVector random_vector(rng::SplitMix64& g, std::span<const int> pool, std::size_t terms);

}  // namespace matcoef::ktype
