#include "matcoef/complementary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "detail/arctan_kernel.hpp"
#include "matcoef/specfun.hpp"

namespace matcoef::complementary {

namespace {

void check_lambda(double lambda) {
  if (!std::isfinite(lambda) || lambda == 0.0 || std::fabs(lambda) >= 0.5)
    throw std::invalid_argument("complementary: lambda must satisfy 0 < |lambda| < 1/2");
}

void check_even(std::span<const int> v) {
  for (int x : v) {
    if (x % 2 != 0) throw std::invalid_argument("complementary: K-type indices must be even");
    if (std::abs(x) > principal::kMaxAbsIndex) throw std::invalid_argument("complementary: index out of range");
  }
}

}  // namespace

void ComplementaryParams::validate() const {
  check_lambda(lambda);
  const int idx[2] = {mu, nu};
  check_even(idx);
}

double d_coeff(double lambda, int mu) {
  check_lambda(lambda);
  if (mu % 2 != 0) throw std::invalid_argument("d_coeff: mu must be even");
  // d(lambda, -mu) = d(lambda, mu) for even mu, so only |mu| is needed.
  const int m = std::abs(mu);
  double d = std::exp(2.0 * lambda * std::log(2.0) + specfun::log_gamma(0.5 + lambda) -
                      specfun::log_gamma(0.5 - lambda));
  for (int k = 0; k < m; k += 2) d *= (0.5 + lambda + k / 2.0) / (0.5 - lambda + k / 2.0);
  return d;
}

CoeffBlock a_integral_block(double lambda, std::span<const int> mus, std::span<const int> nus, double signed_r,
                            const QuadConfig& cfg) {
  check_lambda(lambda);
  check_even(mus);
  check_even(nus);
  if (!std::isfinite(signed_r)) throw std::invalid_argument("a_integral: r must be finite");
  const cplx a(-(2.0 * lambda + 1.0) / 2.0, 0.0), b((2.0 * lambda - 1.0) / 2.0, 0.0);
  auto res = detail::arctan_kernel_block(a, b, signed_r, mus, nus, principal::budget(cfg, 0.0, mus, nus));
  CoeffBlock out;
  out.mus.assign(mus.begin(), mus.end());
  out.nus.assign(nus.begin(), nus.end());
  out.value = std::move(res.value);
  out.err_estimate = std::move(res.err_estimate);
  out.nodes_used = res.nodes_used;
  out.converged = res.converged;
  return out;
}

QuadResult a_integral(double lambda, int mu, int nu, double signed_r, const QuadConfig& cfg) {
  const int m[1] = {mu}, n[1] = {nu};
  CoeffBlock b = a_integral_block(lambda, m, n, signed_r, cfg);
  QuadResult q{b.value[0], b.err_estimate[0], b.nodes_used};
  if (!b.converged) throw quad::QuadratureError("a_integral: tolerance not met", q);
  return q;
}

CoeffBlock coeff_complementary_block(double lambda, std::span<const int> mus, std::span<const int> nus, double r,
                                     const QuadConfig& cfg) {
  if (!(r >= 0.0)) throw std::invalid_argument("coeff_complementary: r must be >= 0");
  CoeffBlock b = a_integral_block(lambda, mus, nus, r, cfg);
  for (std::size_t i = 0; i < mus.size(); ++i) {
    const double dm = d_coeff(lambda, mus[i]);
    for (std::size_t j = 0; j < nus.size(); ++j) {
      const double w = std::sqrt(dm / d_coeff(lambda, nus[j]));
      b.value[i * nus.size() + j] *= w;
      b.err_estimate[i * nus.size() + j] *= w;
    }
  }
  return b;
}

QuadResult coeff_complementary(const ComplementaryParams& p, double r, const QuadConfig& cfg) {
  p.validate();
  const int m[1] = {p.mu}, n[1] = {p.nu};
  CoeffBlock b = coeff_complementary_block(p.lambda, m, n, r, cfg);
  QuadResult q{b.value[0], b.err_estimate[0], b.nodes_used};
  if (!b.converged) throw quad::QuadratureError("coeff_complementary: tolerance not met", q);
  return q;
}

double theorem_bound(double lambda, double r) {
  return std::exp(-r * (1.0 - 2.0 * std::fabs(lambda))) / std::fabs(lambda);
}

double complementary_bound_ratio(const ComplementaryParams& p, double r, const QuadConfig& cfg) {
  if (!(r >= 1.0)) throw std::invalid_argument("complementary_bound_ratio: r must be >= 1");
  return std::abs(coeff_complementary(p, r, cfg).value) / theorem_bound(p.lambda, r);
}

}  // namespace matcoef::complementary
