#include "matcoef/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace matcoef::specfun {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Rescaling threshold for the normalized recurrences.
constexpr double kBig = 1e150;
const double kLogBig = std::log(kBig);

void require(bool ok, const char* what) {
  if (!ok) throw std::domain_error(what);
}

}  // namespace

SignedLogReal::SignedLogReal(double log_magnitude, int sign)
    : log_magnitude_(sign == 0 ? -kInf : log_magnitude), sign_(sign > 0 ? 1 : (sign < 0 ? -1 : 0)) {}

SignedLogReal SignedLogReal::from_double(double v) {
  if (v == 0.0) return {-kInf, 0};
  return {std::log(std::fabs(v)), v > 0 ? 1 : -1};
}

double SignedLogReal::to_double() const {
  if (sign_ == 0) return 0.0;
  return sign_ * std::exp(log_magnitude_);
}

SignedLogReal SignedLogReal::pow(double exponent) const {
  if (sign_ == 0) {
    require(exponent > 0, "SignedLogReal::pow: zero to a nonpositive power");
    return {};
  }
  int s = 1;
  if (sign_ < 0) {
    require(exponent == std::floor(exponent), "SignedLogReal::pow: negative base, non-integer exponent");
    if (std::fmod(std::fabs(exponent), 2.0) == 1.0) s = -1;
  }
  return {log_magnitude_ * exponent, s};
}

SignedLogReal operator*(SignedLogReal a, SignedLogReal b) {
  if (a.sign_ == 0 || b.sign_ == 0) return {0.0, 0};
  return {a.log_magnitude_ + b.log_magnitude_, a.sign_ * b.sign_};
}

SignedLogReal operator/(SignedLogReal a, SignedLogReal b) {
  require(b.sign_ != 0, "SignedLogReal: division by zero");
  if (a.sign_ == 0) return {0.0, 0};
  return {a.log_magnitude_ - b.log_magnitude_, a.sign_ * b.sign_};
}

double log_gamma(double x) {
  require(x > 0.0 && std::isfinite(x), "log_gamma: argument must be positive and finite");
  // Godfrey's coefficients for g = 7, n = 9.
  static constexpr std::array<double, 9> p = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < 0.5) return log_gamma(x + 1.0) - std::log(x);
  const double z = x - 1.0;
  double a = p[0];
  for (std::size_t i = 1; i < p.size(); ++i) a += p[i] / (z + static_cast<double>(i));
  const double t = z + 7.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

double jacobi_poly(int n, double alpha, double beta, double x) {
  require(n >= 0, "jacobi_poly: negative degree");
  require(alpha > -1.0 && beta > -1.0, "jacobi_poly: alpha and beta must exceed -1");
  require(x >= -1.0 && x <= 1.0, "jacobi_poly: x outside [-1,1]");
  if (n == 0) return 1.0;
  const double ab = alpha + beta;
  double p_prev = 1.0;
  double p = (alpha + 1.0) + (ab + 2.0) * (x - 1.0) / 2.0;
  for (int k = 1; k < n; ++k) {
    const double kk = k;
    const double c = 2.0 * kk + ab;
    const double a1 = 2.0 * (kk + 1.0) * (kk + ab + 1.0) * c;
    const double a2 = (c + 1.0) * (alpha * alpha - beta * beta);
    const double a3 = c * (c + 1.0) * (c + 2.0);
    const double a4 = 2.0 * (kk + alpha) * (kk + beta) * (c + 2.0);
    const double next = ((a2 + a3 * x) * p - a4 * p_prev) / a1;
    p_prev = p;
    p = next;
  }
  return p;
}

double jacobi_normalized_split(int nu, double alpha, int beta, double log_lo, double log_hi) {
  require(nu >= 0, "jacobi_normalized: negative degree");
  require(alpha >= 0.0, "jacobi_normalized: alpha must be nonnegative");
  require(nu + beta >= 0, "jacobi_normalized: nu + beta < 0 puts a Gamma argument at a nonpositive integer");
  require(log_lo <= 0.0 && log_hi <= 0.0, "jacobi_normalized: x outside [-1,1]");
  if (beta < 0) return jacobi_normalized_split(nu + beta, alpha, -beta, log_lo, log_hi);

  // Rebuild x from whichever half is smaller, so that no digits are lost.
  const double x = log_lo < log_hi ? 1.0 - 2.0 * std::exp(log_lo) : 2.0 * std::exp(log_hi) - 1.0;
  const double b = beta;
  const double poly = jacobi_poly(nu, alpha, b, std::clamp(x, -1.0, 1.0));
  if (poly == 0.0) return 0.0;
  const double log_norm = 0.5 * (log_gamma(nu + 1.0) + log_gamma(nu + alpha + b + 1.0) -
                                 log_gamma(nu + alpha + 1.0) - log_gamma(nu + b + 1.0));
  double log_weight = 0.0;
  if (alpha != 0.0) log_weight += 0.5 * alpha * log_lo;
  if (beta != 0) log_weight += 0.5 * b * log_hi;
  const SignedLogReal value = SignedLogReal::from_double(poly) * SignedLogReal::from_log(log_norm + log_weight);
  return value.to_double();
}

double jacobi_normalized(int nu, double alpha, int beta, double x) {
  require(x > -1.0 && x < 1.0, "jacobi_normalized: x outside (-1,1)");
  return jacobi_normalized_split(nu, alpha, beta, std::log1p(-x) - std::log(2.0), std::log1p(x) - std::log(2.0));
}

void laguerre_fn_all(int k, double x, std::span<double> out) {
  require(k >= 0, "laguerre_fn: negative order k");
  require(x >= 0.0, "laguerre_fn: negative argument");
  if (out.empty()) return;
  if (x == 0.0 && k > 0) {
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }
  const double kk = k;
  // Start value x^{k/2} e^{-x/2} / sqrt(k!) carried in log form.
  double log_scale = -0.5 * x - 0.5 * log_gamma(kk + 1.0);
  if (k > 0) log_scale += 0.5 * kk * std::log(x);

  auto emit = [&](std::size_t j, double v) {
    if (v == 0.0) {
      out[j] = 0.0;
      return;
    }
    out[j] = std::copysign(std::exp(std::log(std::fabs(v)) + log_scale), v);
  };

  double prev = 0.0;
  double cur = 1.0;
  emit(0, cur);
  for (std::size_t j = 0; j + 1 < out.size(); ++j) {
    const double jj = static_cast<double>(j);
    const double next =
        ((2.0 * jj + kk + 1.0 - x) * cur - std::sqrt(jj * (jj + kk)) * prev) / std::sqrt((jj + 1.0) * (jj + kk + 1.0));
    prev = cur;
    cur = next;
    if (std::fabs(cur) > kBig) {
      cur /= kBig;
      prev /= kBig;
      log_scale += kLogBig;
    }
    emit(j + 1, cur);
  }
}

double laguerre_fn(int n, int k, double x) {
  require(n >= 0, "laguerre_fn: negative degree");
  if (n < 64) {
    std::array<double, 64> buf{};
    laguerre_fn_all(k, x, std::span<double>(buf.data(), static_cast<std::size_t>(n) + 1));
    return buf[static_cast<std::size_t>(n)];
  }
  std::vector<double> buf(static_cast<std::size_t>(n) + 1);
  laguerre_fn_all(k, x, buf);
  return buf.back();
}

void hermite_fn_all(double x, std::span<double> out) {
  require(std::isfinite(x), "hermite_fn: non-finite argument");
  if (out.empty()) return;
  double log_scale = -0.5 * x * x - 0.25 * std::log(std::numbers::pi);
  auto emit = [&](std::size_t j, double v) {
    out[j] = v == 0.0 ? 0.0 : std::copysign(std::exp(std::log(std::fabs(v)) + log_scale), v);
  };
  double prev = 0.0;
  double cur = 1.0;
  emit(0, cur);
  for (std::size_t j = 0; j + 1 < out.size(); ++j) {
    const double jj = static_cast<double>(j);
    const double next = std::sqrt(2.0 / (jj + 1.0)) * x * cur - std::sqrt(jj / (jj + 1.0)) * prev;
    prev = cur;
    cur = next;
    if (std::fabs(cur) > kBig) {
      cur /= kBig;
      prev /= kBig;
      log_scale += kLogBig;
    }
    emit(j + 1, cur);
  }
}

double hermite_fn(int n, double x) {
  require(n >= 0, "hermite_fn: negative degree");
  std::vector<double> buf(static_cast<std::size_t>(n) + 1);
  hermite_fn_all(x, buf);
  return buf.back();
}

LaguerreEnvelope::LaguerreEnvelope(int n_, double tau_) : n(n_), nu(4.0 * n_ + 2.0), tau(tau_) {
  require(n_ >= 0, "LaguerreEnvelope: negative degree");
  require(tau_ > 0.0, "LaguerreEnvelope: tau must be positive");
}

double laguerre_envelope_eval(const LaguerreEnvelope& env, double x) {
  require(x >= 0.0, "laguerre_envelope_eval: negative argument");
  const double nu = env.nu;
  double total = std::exp(-env.tau * x);
  if (x <= nu / 2.0) total += x == 0.0 ? kInf : std::pow(nu * x, -0.25);
  if (x >= nu / 2.0 && x <= 1.5 * nu) {
    const double gap = std::fabs(nu - x);
    total += gap == 0.0 ? kInf : std::pow(nu, -0.25) * std::pow(gap, -0.25);
  }
  return total;
}

double calibrate_laguerre_envelope(int n_max, int points_per_n) {
  require(n_max >= 0 && points_per_n >= 2, "calibrate_laguerre_envelope: bad grid");
  double worst = 0.0;
  std::vector<double> vals(static_cast<std::size_t>(n_max) + 1);
  // The grid is shared by all n; it spans [0, 4 * (3/2) nu_max] so every
  // support region and a long stretch of the exponential tail are sampled.
  const double nu_max = 4.0 * n_max + 2.0;
  const double x_max = 6.0 * nu_max + 40.0;
  const int total_points = points_per_n * (n_max + 1);
  for (int i = 1; i <= total_points; ++i) {
    const double x = x_max * static_cast<double>(i) / total_points;
    laguerre_fn_all(0, x, vals);
    for (int n = 0; n <= n_max; ++n) {
      const double env = laguerre_envelope_eval(LaguerreEnvelope(n), x);
      if (!std::isfinite(env)) continue;
      worst = std::max(worst, std::fabs(vals[static_cast<std::size_t>(n)]) / env);
    }
  }
  return worst;
}

}  // namespace matcoef::specfun
