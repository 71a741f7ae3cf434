#include "detail/arctan_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace matcoef::detail {

using quad::cplx;

namespace {

// e^{i k angle} for k = lo..hi, by repeated multiplication from e^{i lo angle}.
void phase_table(double angle, int lo, int hi, std::vector<double>& re, std::vector<double>& im) {
  const std::size_t n = static_cast<std::size_t>(hi - lo + 1);
  re.resize(n);
  im.resize(n);
  const double cr = std::cos(angle), ci = std::sin(angle);
  re[0] = std::cos(lo * angle);
  im[0] = std::sin(lo * angle);
  for (std::size_t k = 1; k < n; ++k) {
    re[k] = re[k - 1] * cr - im[k - 1] * ci;
    im[k] = re[k - 1] * ci + im[k - 1] * cr;
  }
}

}  // namespace

quad::BatchResult<cplx> arctan_kernel_block(cplx a, cplx b, double rho, std::span<const int> mus,
                                            std::span<const int> nus, const quad::QuadConfig& cfg) {
  if (mus.empty() || nus.empty()) throw std::invalid_argument("arctan_kernel_block: empty index list");
  const auto [mu_lo_it, mu_hi_it] = std::minmax_element(mus.begin(), mus.end());
  const auto [nu_lo_it, nu_hi_it] = std::minmax_element(nus.begin(), nus.end());
  const int mu_lo = *mu_lo_it, mu_hi = *mu_hi_it, nu_lo = *nu_lo_it, nu_hi = *nu_hi_it;
  const std::size_t M = mus.size(), N = nus.size();

  const double sigma = std::exp(-std::fabs(rho));
  const double log_sigma = -std::fabs(rho);
  const double sigma2 = sigma * sigma;
  const double sigma4 = sigma2 * sigma2;
  const bool nonneg = rho >= 0.0;
  const double log_pref = -rho - std::log(std::numbers::pi);

  // Per-thread scratch; the engine calls the accumulator sequentially.
  std::vector<double> pr, pi_, qr, qi;
  std::vector<double> cr(M), ci(M);
  std::vector<std::size_t> mu_off(M), nu_off(N);
  for (std::size_t i = 0; i < M; ++i) mu_off[i] = static_cast<std::size_t>(mus[i] - mu_lo);
  for (std::size_t j = 0; j < N; ++j) nu_off[j] = static_cast<std::size_t>(nus[j] - nu_lo);
  std::vector<double> qjr(N), qji(N);

  quad::LineAccumulator<cplx> acc = [&](double t, double w, std::span<cplx> sums) {
    const double su = t / sigma;  // sinh(u)
    const double su2 = su * su;
    double l1, l2, alpha, beta;
    if (nonneg) {
      l1 = 2.0 * log_sigma + std::log1p(su2);
      l2 = std::log1p(sigma4 * su2);
      alpha = std::atan(su);
      beta = std::atan(sigma2 * su);
    } else {
      l1 = -2.0 * log_sigma + std::log1p(sigma4 * su2);
      l2 = std::log1p(su2);
      alpha = std::atan(sigma2 * su);
      beta = std::atan(su);
    }
    const double log_amp = a.real() * l1 + b.real() * l2 + log_pref;
    const double phase = a.imag() * l1 + b.imag() * l2;
    const double amp = w * std::exp(log_amp);
    if (amp == 0.0) return;
    const double wr = amp * std::cos(phase), wi = amp * std::sin(phase);

    phase_table(alpha, mu_lo, mu_hi, pr, pi_);
    phase_table(-beta, nu_lo, nu_hi, qr, qi);
    for (std::size_t i = 0; i < M; ++i) {
      const double xr = pr[mu_off[i]], xi = pi_[mu_off[i]];
      cr[i] = wr * xr - wi * xi;
      ci[i] = wr * xi + wi * xr;
    }
    for (std::size_t j = 0; j < N; ++j) {
      qjr[j] = qr[nu_off[j]];
      qji[j] = qi[nu_off[j]];
    }
    double* s = reinterpret_cast<double*>(sums.data());
    for (std::size_t i = 0; i < M; ++i) {
      const double xr = cr[i], xi = ci[i];
      double* row = s + 2 * i * N;
      for (std::size_t j = 0; j < N; ++j) {
        row[2 * j] += xr * qjr[j] - xi * qji[j];
        row[2 * j + 1] += xr * qji[j] + xi * qjr[j];
      }
    }
  };
  return quad::integrate_line_batch<cplx>(M * N, acc, cfg, {sigma, quad::Side::both});
}

}  // namespace matcoef::detail
