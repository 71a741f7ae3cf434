#include "matcoef/principal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "detail/arctan_kernel.hpp"

namespace matcoef::principal {

namespace {

int max_abs(std::span<const int> v) {
  int m = 0;
  for (int x : v) m = std::max(m, std::abs(x));
  return m;
}

bool parity_ok(int index, int epsilon) { return ((index - epsilon) % 2) == 0; }

void check_indices(std::span<const int> v, int epsilon, const char* what) {
  for (int x : v) {
    if (!parity_ok(x, epsilon))
      throw std::invalid_argument(std::string("principal: ") + what + " index must have the parity of epsilon");
    if (std::abs(x) > kMaxAbsIndex) throw std::invalid_argument(std::string("principal: ") + what + " index out of range");
  }
}

void check_common(double s, int epsilon, double r) {
  if (epsilon != 0 && epsilon != 1) throw std::invalid_argument("principal: epsilon must be 0 or 1");
  if (!std::isfinite(s) || std::fabs(s) > kMaxAbsS) throw std::invalid_argument("principal: |s| must be <= 100");
  if (!(r >= 0.0) || !std::isfinite(r)) throw std::invalid_argument("principal: r must be finite and >= 0");
}

}  // namespace

void PrincipalParams::validate() const {
  check_common(s, epsilon, 0.0);
  const int idx[2] = {mu, nu};
  check_indices(idx, epsilon, "mu/nu");
}

QuadConfig budget(const QuadConfig& cfg, double s, std::span<const int> mus, std::span<const int> nus) {
  QuadConfig c = cfg;
  c.oscillation_scale = std::max(cfg.oscillation_scale, std::fabs(s) + max_abs(mus) + max_abs(nus));
  return c;
}

CoeffBlock coeff_principal_block(double s, int epsilon, std::span<const int> mus, std::span<const int> nus, double r,
                                 const QuadConfig& cfg) {
  check_common(s, epsilon, r);
  check_indices(mus, epsilon, "mu");
  check_indices(nus, epsilon, "nu");
  CoeffBlock out;
  out.mus.assign(mus.begin(), mus.end());
  out.nus.assign(nus.begin(), nus.end());
  const cplx a(-0.5, 0.5 * s), b(-0.5, -0.5 * s);
  auto res = detail::arctan_kernel_block(a, b, r, mus, nus, budget(cfg, s, mus, nus));
  out.value = std::move(res.value);
  out.err_estimate = std::move(res.err_estimate);
  out.nodes_used = res.nodes_used;
  out.converged = res.converged;
  return out;
}

QuadResult coeff_principal(const PrincipalParams& p, double r, const QuadConfig& cfg) {
  p.validate();
  const int mu[1] = {p.mu}, nu[1] = {p.nu};
  CoeffBlock b = coeff_principal_block(p.s, p.epsilon, mu, nu, r, cfg);
  QuadResult q{b.value[0], b.err_estimate[0], b.nodes_used};
  if (!b.converged) throw quad::QuadratureError("coeff_principal: tolerance not met", q);
  return q;
}

double theorem_bound(double s, double r) { return std::exp(-r) * (std::fabs(s) + 1.0) / std::fabs(s); }

double howe_tan_bound(double r) { return (1.0 + r) * std::exp(-r); }

double principal_bound_ratio(const PrincipalParams& p, double r, const QuadConfig& cfg) {
  if (p.s == 0.0) throw std::invalid_argument("principal_bound_ratio: s must be nonzero");
  if (!(r >= 1.0)) throw std::invalid_argument("principal_bound_ratio: r must be >= 1");
  return std::abs(coeff_principal(p, r, cfg).value) / theorem_bound(p.s, r);
}

double howe_tan_ratio(const PrincipalParams& p, double r, const QuadConfig& cfg) {
  return std::abs(coeff_principal(p, r, cfg).value) / howe_tan_bound(r);
}

}  // namespace matcoef::principal
