#include "matcoef/metaplectic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <set>
#include <stdexcept>

#include "matcoef/specfun.hpp"

namespace matcoef::metaplectic {

namespace {

constexpr double pi = std::numbers::pi;

int sign_pow(int k) { return k % 2 == 0 ? 1 : -1; }

void check_lambda(double lambda) {
  if (!(lambda >= 1.0) || lambda > 1000.0) throw std::invalid_argument("metaplectic: lambda must lie in [1, 1000]");
}

}  // namespace

std::size_t HermiteVector::dimension() const { return entries.empty() ? 0 : entries.front().first.size(); }

double HermiteVector::norm_sq() const {
  double s = 0.0;
  for (const auto& e : entries) s += std::norm(e.second);
  return s;
}

int HermiteVector::max_degree() const {
  int m = 0;
  for (const auto& e : entries)
    for (int b : e.first) m = std::max(m, b);
  return m;
}

void HermiteVector::validate() const {
  if (entries.empty()) throw std::invalid_argument("HermiteVector: no entries");
  const std::size_t d = dimension();
  if (d == 0) throw std::invalid_argument("HermiteVector: multi-index of length 0");
  std::set<HermiteMultiIndex> seen;
  for (const auto& [beta, amp] : entries) {
    if (beta.size() != d) throw std::invalid_argument("HermiteVector: mixed dimensions");
    for (int b : beta)
      if (b < 0 || b > kMaxHermiteDegree) throw std::invalid_argument("HermiteVector: degree outside [0, 200]");
    if (!seen.insert(beta).second) throw std::invalid_argument("HermiteVector: repeated multi-index");
  }
}

cplx HermiteVector::eval(double x) const {
  if (dimension() != 1) throw std::invalid_argument("HermiteVector::eval: dimension 1 only");
  std::vector<double> h(static_cast<std::size_t>(max_degree()) + 1);
  specfun::hermite_fn_all(x, h);
  cplx s = 0.0;
  for (const auto& [beta, amp] : entries) s += amp * h[static_cast<std::size_t>(beta[0])];
  return s;
}

void DiagonalSymplectic::validate() const {
  if (lambdas.empty()) throw std::invalid_argument("DiagonalSymplectic: empty");
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] >= 1.0) || !std::isfinite(lambdas[i]))
      throw std::invalid_argument("DiagonalSymplectic: entries must be >= 1");
    if (i > 0 && lambdas[i] > lambdas[i - 1]) throw std::invalid_argument("DiagonalSymplectic: entries must be nonincreasing");
  }
}

double wigner_diag(int n, cplx z) {
  if (n < 0 || n > kMaxHermiteDegree) throw std::invalid_argument("wigner_diag: n outside [0, 200]");
  return 2.0 * sign_pow(n) / std::sqrt(2.0 * pi) * specfun::laguerre_fn(n, 0, 2.0 * std::norm(z));
}

cplx wigner_cross(int n, int k, cplx z) {
  if (n < 0 || k < 0 || n + k > kMaxHermiteDegree) throw std::invalid_argument("wigner_cross: need n, k >= 0, n + k <= 200");
  if (k == 0) return wigner_diag(n, z);
  if (z == cplx(0.0)) return 0.0;
  const double mag = sign_pow(n) * std::sqrt(2.0 / pi) * specfun::laguerre_fn(n, k, 2.0 * std::norm(z));
  return std::polar(mag, -k * std::arg(z));
}

cplx wigner_hermite_pair(int a, int b, cplx z) {
  // W(g, f) = conj(W(f, g))
  return a >= b ? wigner_cross(b, a - b, z) : std::conj(wigner_cross(a, b - a, z));
}

cplx wigner_closed(const HermiteVector& f, const HermiteVector& g, cplx z) {
  if (f.dimension() != 1 || g.dimension() != 1) throw std::invalid_argument("wigner_closed: dimension 1 only");
  cplx s = 0.0;
  for (const auto& [a, fa] : f.entries)
    for (const auto& [b, gb] : g.entries) s += fa * std::conj(gb) * wigner_hermite_pair(a[0], b[0], z);
  return s;
}

QuadResult wigner_direct(const HermiteVector& f, const HermiteVector& g, cplx z, const QuadConfig& cfg) {
  f.validate();
  g.validate();
  if (f.dimension() != 1 || g.dimension() != 1) throw std::invalid_argument("wigner_direct: dimension 1 only");
  const double x = z.real(), y = z.imag();
  QuadConfig c = cfg;
  c.oscillation_scale = std::max(cfg.oscillation_scale, std::fabs(y));
  QuadResult r = quad::integrate_line(
      [&](double s) { return std::polar(1.0, -s * y) * f.eval(x + s / 2) * std::conj(g.eval(x - s / 2)); }, c);
  const double k = 1.0 / std::sqrt(2.0 * pi);
  r.value *= k;
  r.err_estimate *= k;
  return r;
}

void wigner_pair_all(int max_degree, cplx z, std::span<cplx> out) {
  if (max_degree < 0 || 2 * max_degree > kMaxHermiteDegree) throw std::invalid_argument("wigner_pair_all: bad degree");
  const std::size_t n1 = static_cast<std::size_t>(max_degree) + 1;
  if (out.size() != n1 * n1) throw std::invalid_argument("wigner_pair_all: output size");
  const double x = 2.0 * std::norm(z);
  const double base = std::sqrt(2.0 / pi);
  const cplx unit = z == cplx(0.0) ? cplx(0.0) : std::conj(z) / std::abs(z);
  std::vector<double> lag(n1);
  cplx phase = 1.0;  // unit^k
  for (std::size_t k = 0; k < n1; ++k) {
    specfun::laguerre_fn_all(static_cast<int>(k), x, std::span<double>(lag.data(), n1 - k));
    for (std::size_t n = 0; n + k < n1; ++n) {
      const double mag = sign_pow(static_cast<int>(n)) * base * lag[n];
      if (k == 0) {
        out[n * n1 + n] = 2.0 * sign_pow(static_cast<int>(n)) / std::sqrt(2.0 * pi) * lag[n];
      } else {
        const cplx w = mag * phase;                 // W(h_{n+k}, h_n)
        out[(n + k) * n1 + n] = w;
        out[n * n1 + n + k] = std::conj(w);
      }
    }
    phase *= unit;
  }
}

quad::BatchResult<cplx> wigner_overlap_batch(std::span<const WignerPair> lhs, std::span<const WignerPair> rhs,
                                             const QuadConfig& cfg) {
  if (lhs.size() != rhs.size()) throw std::invalid_argument("wigner_overlap_batch: size mismatch");
  int top = 0;
  auto scan = [&](const HermiteVector& v) {
    v.validate();
    if (v.dimension() != 1) throw std::invalid_argument("wigner_overlap_batch: dimension 1 only");
    top = std::max(top, v.max_degree());
  };
  for (std::size_t k = 0; k < lhs.size(); ++k) {
    scan(lhs[k].first);
    scan(lhs[k].second);
    scan(rhs[k].first);
    scan(rhs[k].second);
  }
  const std::size_t n1 = static_cast<std::size_t>(top) + 1;
  std::vector<cplx> table(n1 * n1);
  auto apply = [&](const WignerPair& p) {
    cplx s = 0.0;
    for (const auto& [a, fa] : p.first.entries)
      for (const auto& [b, gb] : p.second.entries)
        s += fa * std::conj(gb) * table[static_cast<std::size_t>(a[0]) * n1 + static_cast<std::size_t>(b[0])];
    return s;
  };
  quad::PlaneAccumulator<cplx> acc = [&](double x, double y, double w, std::span<cplx> sums) {
    wigner_pair_all(top, cplx(x, y), table);
    for (std::size_t k = 0; k < lhs.size(); ++k) sums[k] += w * apply(lhs[k]) * std::conj(apply(rhs[k]));
  };
  QuadConfig c = cfg;
  c.oscillation_scale = std::max(cfg.oscillation_scale, std::sqrt(2.0 * (4.0 * top + 2.0)));
  return quad::integrate_plane_batch<cplx>(lhs.size(), acc, c);
}

PairTable laguerre_pair_table(int max_index, double lambda, const QuadConfig& cfg) {
  PairTable t = laguerre_pair_table_unchecked(max_index, lambda, cfg);
  if (!t.converged) {
    const auto worst = static_cast<std::size_t>(std::max_element(t.err_estimate.begin(), t.err_estimate.end()) -
                                                t.err_estimate.begin());
    throw quad::QuadratureError("laguerre_pair_table: tolerance not met", QuadResult{t.value[worst], t.err_estimate[worst], 0});
  }
  return t;
}

PairTable laguerre_pair_table_unchecked(int max_index, double lambda, const QuadConfig& cfg) {
  check_lambda(lambda);
  if (max_index < 0 || max_index > kMaxHermiteDegree) throw std::invalid_argument("laguerre_pair_table: bad max_index");
  const std::size_t n1 = static_cast<std::size_t>(max_index) + 1;
  const double inv2 = 1.0 / (lambda * lambda);
  // Beyond this argument every L_k underflows.
  const double cutoff = 4.0 * max_index + 2.0 + 1500.0;
  std::vector<double> a(n1), b(n1);

  // In the variables (x, eta) with eta = lambda y:
  //   lambda I = (2/pi) (-1)^{m+n} iint L_m(2(x^2/lambda^2 + eta^2)) L_n(2(x^2 + eta^2/lambda^2)),
  // with an integrand even in both variables.
  quad::PlaneAccumulator<double> acc = [&](double x, double eta, double w, std::span<double> sums) {
    const double x2 = x * x, e2 = eta * eta;
    const double arg1 = 2.0 * (x2 * inv2 + e2), arg2 = 2.0 * (x2 + e2 * inv2);
    if (arg1 > cutoff || arg2 > cutoff) return;
    specfun::laguerre_fn_all(0, arg1, a);
    specfun::laguerre_fn_all(0, arg2, b);
    for (std::size_t m = 0; m < n1; ++m) {
      const double wa = w * a[m];
      double* row = sums.data() + m * n1;
      for (std::size_t n = 0; n < n1; ++n) row[n] += wa * b[n];
    }
  };
  QuadConfig c = cfg;
  c.oscillation_scale = std::max(cfg.oscillation_scale, std::sqrt(2.0 * (4.0 * max_index + 2.0)));
  const auto res = quad::integrate_plane_batch<double>(n1 * n1, acc, c, {1.0, quad::Side::positive},
                                                       {1.0, quad::Side::positive});
  PairTable t;
  t.max_index = max_index;
  t.lambda = lambda;
  t.value.resize(n1 * n1);
  t.err_estimate.resize(n1 * n1);
  for (std::size_t m = 0; m < n1; ++m)
    for (std::size_t n = 0; n < n1; ++n) {
      const double k = 4.0 * (2.0 / pi) * sign_pow(static_cast<int>(m + n)) / lambda;
      t.value[m * n1 + n] = k * res.value[m * n1 + n];
      t.err_estimate[m * n1 + n] = std::fabs(k) * res.err_estimate[m * n1 + n];
    }
  t.converged = res.converged;
  return t;
}

double laguerre_pair_integral(int m, int n, double lambda, const QuadConfig& cfg) {
  if (m < 0 || n < 0 || m > 100 || n > 100) throw std::invalid_argument("laguerre_pair_integral: m, n must lie in [0, 100]");
  return laguerre_pair_table(std::max(m, n), lambda, cfg).at(m, n);
}

QuadResult laguerre_pair_halfline(int m, int n, double lambda, const QuadConfig& cfg) {
  check_lambda(lambda);
  const double inv2 = 1.0 / (lambda * lambda);
  const QuadConfig inner = cfg.tightened(10.0);
  double inner_err = 0.0;
  QuadResult outer = quad::integrate_halfline(
      [&](double r1) {
        const QuadResult in = quad::integrate_halfline(
            [&](double r2) {
              return quad::cplx(specfun::laguerre_fn(m, 0, r1 * inv2 + r2) * specfun::laguerre_fn(n, 0, r1 + r2 * inv2) /
                                std::sqrt(r2));
            },
            inner);
        inner_err = std::max(inner_err, in.err_estimate);
        return in.value / std::sqrt(r1);
      },
      cfg);
  const double k = sign_pow(m + n) / pi;
  outer.value *= k;
  outer.err_estimate = std::fabs(k) * outer.err_estimate;
  return outer;
}

double torus_averaged_coeff_sq(const DiagonalSymplectic& g, const HermiteVector& f1, const HermiteVector& f2,
                               const QuadConfig& cfg) {
  g.validate();
  f1.validate();
  f2.validate();
  const std::size_t d = g.lambdas.size();
  if (f1.dimension() != d || f2.dimension() != d) throw std::invalid_argument("torus_averaged_coeff_sq: dimension mismatch");

  // One table per distinct lambda, sized by the largest degree in use.
  int top = std::max(f1.max_degree(), f2.max_degree());
  std::map<double, PairTable> tables;
  for (double lam : g.lambdas)
    if (!tables.count(lam)) tables.emplace(lam, laguerre_pair_table(top, lam, cfg));

  std::vector<const PairTable*> per_coord;
  for (double lam : g.lambdas) per_coord.push_back(&tables.at(lam));
  return torus_average_from_tables(per_coord, f1, f2);
}

double torus_average_from_tables(std::span<const PairTable* const> tables, const HermiteVector& f1,
                                 const HermiteVector& f2) {
  const std::size_t d = tables.size();
  if (f1.dimension() != d || f2.dimension() != d) throw std::invalid_argument("torus_average_from_tables: dimension mismatch");
  for (const PairTable* t : tables)
    if (std::max(f1.max_degree(), f2.max_degree()) > t->max_index)
      throw std::invalid_argument("torus_average_from_tables: table too small");
  double total = 0.0;
  for (const auto& [beta, b] : f1.entries)
    for (const auto& [gamma, c] : f2.entries) {
      double prod = std::norm(b) * std::norm(c);
      for (std::size_t l = 0; l < d && prod != 0.0; ++l) prod *= tables[l]->at(beta[l], gamma[l]);
      total += prod;
    }
  return total;
}

double torus_averaged_coeff_sq_any_order(std::span<const double> lambdas, const HermiteVector& f1,
                                         const HermiteVector& f2, const QuadConfig& cfg) {
  const std::size_t d = lambdas.size();
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return lambdas[i] > lambdas[j]; });
  DiagonalSymplectic g;
  for (std::size_t i : order) g.lambdas.push_back(lambdas[i]);
  auto permute = [&](const HermiteVector& v) {
    if (v.dimension() != d) throw std::invalid_argument("torus_averaged_coeff_sq: dimension mismatch");
    HermiteVector out;
    for (const auto& [beta, amp] : v.entries) {
      HermiteMultiIndex p(d);
      for (std::size_t l = 0; l < d; ++l) p[l] = beta[order[l]];
      out.entries.emplace_back(std::move(p), amp);
    }
    return out;
  };
  return torus_averaged_coeff_sq(g, permute(f1), permute(f2), cfg);
}

double schrodinger_singular_value(double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("schrodinger_singular_value: t must be finite");
  return std::fabs(t) + std::hypot(1.0, t);
}

double dispersive_ratio(int n, double t, const HermiteVector& f1, const HermiteVector& f2, const QuadConfig& cfg) {
  if (n < 1) throw std::invalid_argument("dispersive_ratio: dimension must be >= 1");
  DiagonalSymplectic g;
  g.lambdas.assign(static_cast<std::size_t>(n), schrodinger_singular_value(t));
  const double avg = torus_averaged_coeff_sq(g, f1, f2, cfg);
  return std::pow(1.0 + std::fabs(t), n / 2.0) * std::sqrt(std::max(avg, 0.0));
}

HermiteVector random_hermite_vector(rng::SplitMix64& g, int dim, std::size_t terms, int max_degree) {
  if (dim < 1 || max_degree < 0 || max_degree > kMaxHermiteDegree) throw std::invalid_argument("random_hermite_vector: bad shape");
  const double space = std::pow(max_degree + 1.0, dim);
  if (static_cast<double>(terms) > space) throw std::invalid_argument("random_hermite_vector: too many terms");
  std::set<HermiteMultiIndex> seen;
  std::vector<HermiteMultiIndex> picks;
  while (picks.size() < terms) {
    HermiteMultiIndex beta(static_cast<std::size_t>(dim));
    for (int& b : beta) b = static_cast<int>(g.below(static_cast<std::uint64_t>(max_degree) + 1));
    if (seen.insert(beta).second) picks.push_back(std::move(beta));
  }
  const auto amp = rng::unit_amplitudes(g, terms);
  HermiteVector v;
  for (std::size_t k = 0; k < terms; ++k) v.entries.emplace_back(std::move(picks[k]), amp[k]);
  return v;
}

}  // namespace matcoef::metaplectic
