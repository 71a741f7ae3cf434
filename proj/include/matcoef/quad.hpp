#pragma once

// Quadrature engines with two-mesh error estimates.
//
// Every engine evaluates the integral on a mesh, refines it by doubling the
// node density and reports |finest - second finest| as the error estimate.
// The real-line engines substitute t = scale * sinh(u) and apply composite
// 16-point Gauss-Legendre panels in u; the u-range is grown in fixed chunks
// until the newest chunk is negligible. The half-line engine additionally
// substitutes x = t^2, which removes x^{-1/2} endpoint singularities.
//
// Batched variants integrate vector-valued integrands on a shared mesh; a
// component is converged when its own two-mesh difference meets tolerance.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace matcoef::quad {

using cplx = std::complex<double>;

struct QuadConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int max_doublings = 14;
  /// Largest phase-derivative scale of the integrand (in the engine's
  /// working variable); sets the initial mesh density.
  double oscillation_scale = 0.0;

  void validate() const;
  /// Same config with both tolerances divided by `factor`.
  QuadConfig tightened(double factor) const;
};

struct QuadResult {
  cplx value{};
  double err_estimate = 0.0;
  long nodes_used = 0;
};

/// Thrown when the mesh budget is exhausted before the tolerance is met.
class QuadratureError : public std::runtime_error {
public:
  QuadratureError(const std::string& what, QuadResult best) : std::runtime_error(what), best_(best) {}
  const QuadResult& best() const { return best_; }

private:
  QuadResult best_;
};

using Integrand1D = std::function<cplx(double)>;
using IntegrandPlane = std::function<cplx(cplx)>;

/// Trapezoidal rule over [-pi, pi) for a 2pi-periodic integrand.
QuadResult integrate_periodic(const Integrand1D& f, const QuadConfig& cfg);

/// Integral over R. `scale` sets the width of the region resolved linearly
/// by t = scale * sinh(u); use the smallest length scale of the integrand.
QuadResult integrate_line(const Integrand1D& f, const QuadConfig& cfg, double scale = 1.0);

/// Integral over [0, inf) with x = t^2, t = scale * sinh(u).
QuadResult integrate_halfline(const Integrand1D& f, const QuadConfig& cfg, double scale = 1.0);

/// Iterated integral over C: outer integral in x, inner in y, both by
/// integrate_line.
QuadResult integrate_plane(const IntegrandPlane& f, const QuadConfig& cfg);

// ---------------------------------------------------------------------------
// Batched engines

enum class Side { both, positive };

struct LineOptions {
  double scale = 1.0;
  Side side = Side::both;
};

template <class T>
struct BatchResult {
  std::vector<T> value;
  std::vector<double> err_estimate;
  long nodes_used = 0;
  bool converged = false;

  QuadResult component(std::size_t k) const;
};

/// acc(t, weight, sums): add weight * f_k(t) into sums[k] for every component.
template <class T>
using LineAccumulator = std::function<void(double t, double weight, std::span<T> sums)>;

/// acc(x, y, weight, sums) for the plane engine.
template <class T>
using PlaneAccumulator = std::function<void(double x, double y, double weight, std::span<T> sums)>;

template <class T>
BatchResult<T> integrate_line_batch(std::size_t count, const LineAccumulator<T>& acc, const QuadConfig& cfg,
                                    LineOptions opt = {});

/// Tensor-product mesh over the plane (or a half/quarter plane through the
/// per-axis options).
template <class T>
BatchResult<T> integrate_plane_batch(std::size_t count, const PlaneAccumulator<T>& acc, const QuadConfig& cfg,
                                     LineOptions x_opt = {}, LineOptions y_opt = {});

template <class T>
BatchResult<T> integrate_periodic_batch(std::size_t count, const LineAccumulator<T>& acc, const QuadConfig& cfg);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendreRule gauss_legendre(int n);

}  // namespace matcoef::quad
