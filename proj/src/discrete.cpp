#include "matcoef/discrete.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "matcoef/specfun.hpp"

namespace matcoef::discrete {

namespace {

int sign_pow(int k) { return (k % 2 == 0) ? 1 : -1; }

// log cosh r without overflow
double log_cosh(double r) {
  const double a = std::fabs(r);
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

// Generalized binomial C(z, k) for integer k >= 0.
double binom(double z, int k) {
  double c = 1.0;
  for (int i = 0; i < k; ++i) c *= (z - i) / (i + 1);
  return c;
}

// Explicit finite sum for P_n^{(a,b)}(x); valid for any real a, b.
double jacobi_series(int n, double a, double b, double x) {
  double sum = 0.0;
  for (int s = 0; s <= n; ++s)
    sum += binom(n + a, n - s) * binom(n + b, s) * std::pow((x - 1.0) / 2.0, s) * std::pow((x + 1.0) / 2.0, n - s);
  return sum;
}

// Indices mapped into D+: (m, n) and the sign picked up on the way.
struct PlusIndices {
  int m2, n2, sign;
};

PlusIndices to_plus(const DiscreteParams& p) {
  if (p.sign == Sign::plus) return {p.m.twice, p.n.twice, 1};
  // D- value = (-1)^{n-m} * D+ value at (-m, -n)
  return {-p.m.twice, -p.n.twice, sign_pow((p.n.twice - p.m.twice) / 2)};
}

}  // namespace

HalfInt HalfInt::from_double(double v) {
  const double t = 2.0 * v;
  if (t != std::round(t) || std::fabs(t) > 1e9) throw std::invalid_argument("HalfInt: value is not a half-integer");
  return HalfInt{static_cast<int>(std::lround(t))};
}

DiscreteParams DiscreteParams::from_offsets(int ell, Sign sign, int dm, int dn) {
  DiscreteParams p;
  p.ell = ell;
  p.sign = sign;
  const int s = sign == Sign::plus ? 1 : -1;
  p.m.twice = s * (ell + 2 * dm);
  p.n.twice = s * (ell + 2 * dn);
  p.validate();
  return p;
}

void DiscreteParams::validate() const {
  if (ell < 1) throw std::invalid_argument("discrete: ell must be a positive integer");
  const int s = sign == Sign::plus ? 1 : -1;
  // m - h in N for D+, -h - m in N for D-
  for (int t : {m.twice, n.twice}) {
    const int off2 = s * t - ell;
    if (off2 < 0 || off2 % 2 != 0) throw std::invalid_argument("discrete: index outside the K-types of this representation");
  }
}

double coeff_discrete(const DiscreteParams& p, double r) {
  p.validate();
  if (!(r >= 0.0) || !std::isfinite(r)) throw std::invalid_argument("coeff_discrete: r must be finite and >= 0");
  if (r == 0.0) return p.m == p.n ? 1.0 : 0.0;
  const PlusIndices q = to_plus(p);
  const int nu = (q.n2 - p.ell) / 2;    // n - h
  const int beta = (q.m2 - q.n2) / 2;   // m - n
  const double alpha = p.ell - 1.0;     // 2h - 1
  // (1-x)/2 = 1/cosh^2 r and (1+x)/2 = tanh^2 r with x = (y-1)/(y+1), y = sinh^2 r.
  const double lc = log_cosh(r);
  const double log_lo = -2.0 * lc;
  const double log_hi = 2.0 * (r < 1.0 ? std::log(std::tanh(r)) : std::log1p(-2.0 / (std::exp(2.0 * r) + 1.0)));
  const double g = specfun::jacobi_normalized_split(nu, alpha, beta, log_lo, log_hi);
  return q.sign * sign_pow(nu) * std::exp(-lc) * g;
}

double coeff_discrete_gamma_route(const DiscreteParams& p, double r) {
  p.validate();
  if (r == 0.0) return p.m == p.n ? 1.0 : 0.0;
  const PlusIndices q = to_plus(p);
  const double h = p.ell / 2.0, m = q.m2 / 2.0, n = q.n2 / 2.0;
  const double y = std::sinh(r) * std::sinh(r);
  const double pref = std::sqrt(std::tgamma(m + h) * std::tgamma(n + 1 - h) / (std::tgamma(n + h) * std::tgamma(m + 1 - h)));
  const int nu = static_cast<int>(std::lround(n - h));
  const double poly = jacobi_series(nu, 2 * h - 1, m - n, (y - 1) / (y + 1));
  return q.sign * sign_pow(nu) * pref * std::pow(y, -h) * std::pow(y / (y + 1), h + (m - n) / 2) * poly;
}

double discrete_bound_ratio(const DiscreteParams& p, double r) { return std::cosh(r) * std::fabs(coeff_discrete(p, r)); }

quad::QuadResult formal_degree_integral(const DiscreteParams& p, const quad::QuadConfig& cfg) {
  p.validate();
  if (p.ell < 2) throw std::invalid_argument("formal_degree_integral: the integral diverges for ell = 1");
  return quad::integrate_halfline(
      [&](double r) {
        const double v = coeff_discrete(p, r);
        // sinh(2r) overflows long before v^2 underflows to zero; combine in logs.
        if (v == 0.0) return quad::cplx(0.0);
        const double log_s2 = r > 20.0 ? 2.0 * r - std::numbers::ln2 : std::log(std::sinh(2.0 * r));
        return quad::cplx(std::exp(2.0 * std::log(std::fabs(v)) + log_s2));
      },
      cfg);
}

}  // namespace matcoef::discrete
