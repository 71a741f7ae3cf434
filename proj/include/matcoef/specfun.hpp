#pragma once

// Real special functions used by the coefficient formulas: log-Gamma,
// Jacobi polynomials and their normalized (bounded) form, L^2-normalized
// Laguerre and Hermite functions.

#include <span>

namespace matcoef::specfun {

/// A real number stored as sign * exp(log_magnitude). sign == 0 iff the
/// value is exactly zero (log_magnitude is then -inf).
class SignedLogReal {
public:
  SignedLogReal() = default;
  SignedLogReal(double log_magnitude, int sign);

  static SignedLogReal from_double(double v);
  static SignedLogReal from_log(double log_magnitude) { return {log_magnitude, 1}; }

  double log_magnitude() const { return log_magnitude_; }
  int sign() const { return sign_; }
  bool is_zero() const { return sign_ == 0; }

  /// Converts back; overflows to +-inf and underflows to 0 like exp().
  double to_double() const;

  SignedLogReal pow(double exponent) const;  // requires sign > 0 unless exponent is an integer

  friend SignedLogReal operator*(SignedLogReal a, SignedLogReal b);
  friend SignedLogReal operator/(SignedLogReal a, SignedLogReal b);

private:
  double log_magnitude_ = 0.0;
  int sign_ = 1;
};

/// ln Gamma(x) for x > 0 (Lanczos, g = 7). Throws std::domain_error for x <= 0.
double log_gamma(double x);

/// P_n^{(alpha,beta)}(x) by the three-term recurrence; alpha, beta > -1.
double jacobi_poly(int n, double alpha, double beta, double x);

/// Normalized Jacobi function
///   g_nu^{(alpha,beta)}(x) = sqrt(G(nu+1)G(nu+alpha+beta+1) / (G(nu+alpha+1)G(nu+beta+1)))
///                            * ((1-x)/2)^{alpha/2} ((1+x)/2)^{beta/2} P_nu^{(alpha,beta)}(x)
/// for alpha >= 0, integer beta with nu + beta >= 0 and x in (-1,1). Negative
/// beta = -l is reduced through g_nu^{(alpha,-l)} = g_{nu-l}^{(alpha,l)}.
/// |result| <= 1 for integer alpha.
double jacobi_normalized(int nu, double alpha, int beta, double x);

/// Same function with x given through log((1-x)/2) and log((1+x)/2); keeps
/// full relative accuracy when x is within rounding of +-1.
double jacobi_normalized_split(int nu, double alpha, int beta, double log_lo, double log_hi);

/// L^2(R+)-normalized Laguerre function
///   sqrt(n!/Gamma(n+k+1)) x^{k/2} e^{-x/2} L_n^{(k)}(x).
double laguerre_fn(int n, int k, double x);

/// All orders 0..out.size()-1 of laguerre_fn(., k, x) in one recurrence pass.
void laguerre_fn_all(int k, double x, std::span<double> out);

/// L^2(R)-normalized Hermite function h_n(x).
double hermite_fn(int n, double x);

/// All orders 0..out.size()-1 of hermite_fn(., x).
void hermite_fn_all(double x, std::span<double> out);

/// Decay constant of the exponential envelope term.
inline constexpr double kEnvelopeTau = 1.0 / 20.0;

/// Piecewise envelope A_n + B_n + C for |laguerre_fn(n, 0, x)|, nu = 4n + 2.
struct LaguerreEnvelope {
  int n = 0;
  double nu = 2.0;
  double tau = kEnvelopeTau;

  explicit LaguerreEnvelope(int n_, double tau_ = kEnvelopeTau);
};

/// A_n(x) + B_n(x) + C(x); +inf at x = 0 and x = nu.
double laguerre_envelope_eval(const LaguerreEnvelope& env, double x);

/// Largest |laguerre_fn(n,0,x)| / envelope over n <= n_max on a fixed x grid
/// (points where the envelope is infinite are skipped).
double calibrate_laguerre_envelope(int n_max, int points_per_n = 400);

}  // namespace matcoef::specfun
