#pragma once

// Wigner distributions of Hermite functions and the metaplectic coefficient
// estimates built on them.
//
// W(f, g)(x + iy) = (2 pi)^{-1/2} int e^{-isy} f(x + s/2) conj(g(x - s/2)) ds

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "matcoef/quad.hpp"
#include "matcoef/random.hpp"

namespace matcoef::metaplectic {

using quad::cplx;
using quad::QuadConfig;
using quad::QuadResult;

inline constexpr int kMaxHermiteDegree = 200;

using HermiteMultiIndex = std::vector<int>;

struct HermiteVector {
  std::vector<std::pair<HermiteMultiIndex, cplx>> entries;

  std::size_t dimension() const;
  double norm_sq() const;
  int max_degree() const;
  void validate() const;  // common length >= 1, entries in [0, 200], distinct

  /// Pointwise value in dimension 1.
  cplx eval(double x) const;
};

/// lambdas >= 1, sorted nonincreasing.
struct DiagonalSymplectic {
  std::vector<double> lambdas;
  void validate() const;
};

/// W(h_n)(z) = 2 (-1)^n (2 pi)^{-1/2} L_n(2|z|^2)
double wigner_diag(int n, cplx z);

/// W(h_{n+k}, h_n)(z) = (-1)^n sqrt(2/pi) (conj(z)/|z|)^k L_n^{(k)}(2|z|^2)
cplx wigner_cross(int n, int k, cplx z);

/// W(h_a, h_b)(z) for any a, b >= 0.
cplx wigner_hermite_pair(int a, int b, cplx z);

/// W(f, g)(z) for dimension-1 vectors from the closed forms.
cplx wigner_closed(const HermiteVector& f, const HermiteVector& g, cplx z);

/// W(f, g)(z) by quadrature of the defining integral (dimension 1).
QuadResult wigner_direct(const HermiteVector& f, const HermiteVector& g, cplx z, const QuadConfig& cfg);

/// I(m, n, lambda) = iint W(h_m)(x/lambda + i lambda y) W(h_n)(x + iy) dx dy.
double laguerre_pair_integral(int m, int n, double lambda, const QuadConfig& cfg);

/// W(h_a, h_b)(z) for all 0 <= a, b <= max_degree, row-major in out.
void wigner_pair_all(int max_degree, cplx z, std::span<cplx> out);

/// Cross-Wigner pair (f, g) in dimension 1.
using WignerPair = std::pair<HermiteVector, HermiteVector>;

/// int W(lhs[k]) conj(W(rhs[k])) over the plane for every k, on one shared mesh.
quad::BatchResult<cplx> wigner_overlap_batch(std::span<const WignerPair> lhs, std::span<const WignerPair> rhs,
                                             const QuadConfig& cfg);

/// I(m, n, lambda) for all 0 <= m, n <= max_index on one mesh, row-major.
/// Throws quad::QuadratureError if any entry misses tolerance.
struct PairTable {
  int max_index = 0;
  double lambda = 1.0;
  std::vector<double> value;
  std::vector<double> err_estimate;
  bool converged = true;
  double at(int m, int n) const { return value[static_cast<std::size_t>(m * (max_index + 1) + n)]; }
  double err_at(int m, int n) const { return err_estimate[static_cast<std::size_t>(m * (max_index + 1) + n)]; }
};
PairTable laguerre_pair_table(int max_index, double lambda, const QuadConfig& cfg);
/// Same, but returns the best estimate with converged = false instead of throwing.
PairTable laguerre_pair_table_unchecked(int max_index, double lambda, const QuadConfig& cfg);

/// lambda I(m, n, lambda) through the half-line form
///   (1/pi) (-1)^{m+n} iint_{R+^2} L_m(r1/lambda^2 + r2) L_n(r1 + r2/lambda^2) (r1 r2)^{-1/2}.
QuadResult laguerre_pair_halfline(int m, int n, double lambda, const QuadConfig& cfg);

/// sum |b_beta|^2 |c_gamma|^2 prod_l I(beta_l, gamma_l, lambda_l)
double torus_averaged_coeff_sq(const DiagonalSymplectic& g, const HermiteVector& f1, const HermiteVector& f2,
                               const QuadConfig& cfg);

/// The same sum with one precomputed table per coordinate.
double torus_average_from_tables(std::span<const PairTable* const> tables, const HermiteVector& f1,
                                 const HermiteVector& f2);

/// Same with lambdas in any order: coordinates are permuted so the element is
/// in sorted form.
double torus_averaged_coeff_sq_any_order(std::span<const double> lambdas, const HermiteVector& f1,
                                         const HermiteVector& f2, const QuadConfig& cfg);

/// |t| + sqrt(1 + t^2), the larger singular value of the free propagator at time t.
double schrodinger_singular_value(double t);

/// (1 + |t|)^{n/2} sqrt(torus average with every lambda = schrodinger_singular_value(t)).
double dispersive_ratio(int n, double t, const HermiteVector& f1, const HermiteVector& f2, const QuadConfig& cfg);

/// Unit vector with `terms` distinct multi-indices, coordinates in [0, max_degree].
HermiteVector random_hermite_vector(rng::SplitMix64& g, int dim, std::size_t terms, int max_degree);

}  // namespace matcoef::metaplectic
