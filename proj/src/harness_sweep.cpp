#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "harness_detail.hpp"
#include "matcoef/complementary.hpp"
#include "matcoef/discrete.hpp"
#include "matcoef/harness.hpp"
#include "matcoef/metaplectic.hpp"
#include "matcoef/principal.hpp"
#include "matcoef/random.hpp"

namespace matcoef::harness {

namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument("config: " + what); }

void need(bool ok, const std::string& what) {
  if (!ok) bad(what);
}

bool parity_ok(int k, int eps) { return ((k - eps) % 2 + 2) % 2 == 0; }

std::vector<int> with_parity(const std::vector<int>& v, int eps) {
  std::vector<int> out;
  for (int k : v)
    if (parity_ok(k, eps)) out.push_back(k);
  return out;
}

bool missed(double value_abs, double err, const QuadConfig& q) {
  return !(err <= std::max(q.abs_tol, q.rel_tol * value_abs)) || !std::isfinite(value_abs);
}

BoundRecord make(std::string family, double p1, double p2, double mu, double nu, double r, double abs_coeff,
                 double bound, double err, bool flagged) {
  BoundRecord b;
  b.family = std::move(family);
  b.p1 = p1;
  b.p2 = p2;
  b.mu = mu;
  b.nu = nu;
  b.r_or_t = r;
  b.abs_coeff = abs_coeff;
  b.bound = bound;
  b.ratio = bound > 0.0 ? abs_coeff / bound : 0.0;
  b.quad_err = err;
  b.flagged = flagged;
  return b;
}

// (s or lambda) x epsilon x r blocks, emitted in order param, epsilon, mu, nu, r.
std::vector<BoundRecord> block_sweep(const SweepConfig& c, bool parallel, bool complementary, bool howe_tan) {
  const std::vector<double>& params = complementary ? c.lambda_grid : c.s_grid;
  const std::vector<int> eps_list = complementary ? std::vector<int>{0} : c.epsilons;
  const std::size_t P = params.size(), E = eps_list.size(), R = c.r_grid.size();
  std::vector<principal::CoeffBlock> blocks(P * E * R);
  detail::for_each_task(blocks.size(), parallel, [&](std::size_t k) {
    const std::size_t pi = k / (E * R), ei = (k / R) % E, ri = k % R;
    const auto mus = with_parity(c.mu_range, eps_list[ei]), nus = with_parity(c.nu_range, eps_list[ei]);
    blocks[k] = complementary ? complementary::coeff_complementary_block(params[pi], mus, nus, c.r_grid[ri], c.quad)
                              : principal::coeff_principal_block(params[pi], eps_list[ei], mus, nus, c.r_grid[ri], c.quad);
  });

  std::vector<BoundRecord> rows;
  for (std::size_t pi = 0; pi < P; ++pi)
    for (std::size_t ei = 0; ei < E; ++ei) {
      const double p = params[pi];
      const int eps = eps_list[ei];
      std::string fam = complementary ? "complementary" : howe_tan ? "howe-tan" : "principal";
      if (howe_tan && p == 0.0 && eps == 1) fam = "howe-tan-reducible";
      const auto& first = blocks[(pi * E + ei) * R];
      for (std::size_t i = 0; i < first.mus.size(); ++i)
        for (std::size_t j = 0; j < first.nus.size(); ++j)
          for (std::size_t ri = 0; ri < R; ++ri) {
            const auto& b = blocks[(pi * E + ei) * R + ri];
            const double r = c.r_grid[ri];
            const double a = std::abs(b.at(i, j)), e = b.err_at(i, j);
            const double bound = complementary ? complementary::theorem_bound(p, r)
                                 : howe_tan    ? principal::howe_tan_bound(r)
                                               : principal::theorem_bound(p, r);
            rows.push_back(make(fam, p, eps, b.mus[i], b.nus[j], r, a, bound, e, !b.converged && missed(a, e, c.quad)));
          }
    }
  return rows;
}

std::vector<BoundRecord> discrete_sweep(const SweepConfig& c, bool parallel, discrete::Sign sign) {
  const std::size_t L = c.ell_set.size(), M = c.mu_range.size(), N = c.nu_range.size(), R = c.r_grid.size();
  std::vector<BoundRecord> rows(L * M * N * R);
  const std::string fam = sign == discrete::Sign::plus ? "discrete-plus" : "discrete-minus";
  detail::for_each_task(L, parallel, [&](std::size_t li) {
    for (std::size_t mi = 0; mi < M; ++mi)
      for (std::size_t ni = 0; ni < N; ++ni) {
        const auto p = discrete::DiscreteParams::from_offsets(c.ell_set[li], sign, c.mu_range[mi], c.nu_range[ni]);
        for (std::size_t ri = 0; ri < R; ++ri) {
          const double r = c.r_grid[ri];
          const double v = discrete::coeff_discrete(p, r);
          rows[((li * M + mi) * N + ni) * R + ri] =
              make(fam, p.ell, 0.0, p.m.value(), p.n.value(), r, std::fabs(v), 1.0 / std::cosh(r), 0.0, false);
        }
      }
  });
  return rows;
}

std::vector<BoundRecord> metaplectic_sweep(const SweepConfig& c, bool parallel) {
  const int top = std::max(*std::max_element(c.mu_range.begin(), c.mu_range.end()),
                           *std::max_element(c.nu_range.begin(), c.nu_range.end()));
  std::vector<metaplectic::PairTable> tables(c.lambda_grid.size());
  detail::for_each_task(tables.size(), parallel, [&](std::size_t k) {
    tables[k] = metaplectic::laguerre_pair_table_unchecked(top, c.lambda_grid[k], c.quad);
  });
  std::vector<BoundRecord> rows;
  for (const auto& t : tables)
    for (int m : c.mu_range)
      for (int n : c.nu_range) {
        const double a = std::fabs(t.at(m, n)), e = t.err_at(m, n);
        rows.push_back(make("metaplectic", t.lambda, 0.0, m, n, t.lambda, a, 1.0 / t.lambda, e,
                            !t.converged && missed(a, e, c.quad)));
      }
  return rows;
}

}  // namespace

std::vector<metaplectic::HermiteVector> dispersive_vectors(const SweepConfig& c, int dim) {
  // One stream per dimension so adding dims does not move earlier vectors.
  rng::SplitMix64 g(c.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(dim)));
  std::vector<metaplectic::HermiteVector> out;
  for (int k = 0; k < 2 * c.vector_pairs; ++k)
    out.push_back(metaplectic::random_hermite_vector(g, dim, static_cast<std::size_t>(c.vector_terms), c.max_degree));
  return out;
}

namespace {

// Torus average from tables, with a first-order error bound from the table errors.
std::pair<double, double> average_with_error(const metaplectic::PairTable& t, int dim,
                                             const metaplectic::HermiteVector& f1,
                                             const metaplectic::HermiteVector& f2) {
  double total = 0.0, err = 0.0;
  for (const auto& [beta, b] : f1.entries)
    for (const auto& [gamma, cc] : f2.entries) {
      const double w = std::norm(b) * std::norm(cc);
      double prod = 1.0, upper = 1.0;
      for (int l = 0; l < dim; ++l) {
        const double v = t.at(beta[static_cast<std::size_t>(l)], gamma[static_cast<std::size_t>(l)]);
        const double e = t.err_at(beta[static_cast<std::size_t>(l)], gamma[static_cast<std::size_t>(l)]);
        prod *= v;
        upper *= std::fabs(v) + e;
      }
      total += w * prod;
      err += w * (upper - std::fabs(prod));
    }
  return {total, err};
}

std::vector<BoundRecord> dispersive_sweep(const SweepConfig& c, bool parallel) {
  std::vector<std::vector<metaplectic::HermiteVector>> vecs;
  for (int d : c.dims) vecs.push_back(dispersive_vectors(c, d));
  std::vector<metaplectic::PairTable> tables(c.t_grid.size());
  detail::for_each_task(tables.size(), parallel, [&](std::size_t k) {
    tables[k] = metaplectic::laguerre_pair_table_unchecked(
        c.max_degree, metaplectic::schrodinger_singular_value(c.t_grid[k]), c.quad);
  });
  std::vector<BoundRecord> rows;
  for (std::size_t di = 0; di < c.dims.size(); ++di) {
    const int d = c.dims[di];
    for (int k = 0; k < c.vector_pairs; ++k) {
      const auto& f1 = vecs[di][2 * static_cast<std::size_t>(k)];
      const auto& f2 = vecs[di][2 * static_cast<std::size_t>(k) + 1];
      for (std::size_t ti = 0; ti < c.t_grid.size(); ++ti) {
        const double t = c.t_grid[ti];
        const auto [avg, err] = average_with_error(tables[ti], d, f1, f2);
        const double root = std::sqrt(std::max(avg, 0.0));
        const double root_err = root > 0.0 ? err / (2.0 * root) : std::sqrt(err);
        const double bound = std::pow(1.0 + std::fabs(t), -d / 2.0);
        rows.push_back(make("dispersive", d, k, 0, 0, t, root, bound, root_err,
                            !tables[ti].converged && missed(avg, err, c.quad)));
      }
    }
  }
  return rows;
}

}  // namespace

void SweepConfig::validate() const {
  quad.validate();
  need(family.has_value(), "family is required for a sweep");
  auto nonempty = [](const auto& v, const char* name) { need(!v.empty(), std::string(name) + " must be nonempty"); };
  switch (*family) {
    case Family::principal:
    case Family::howe_tan: {
      const bool ht = *family == Family::howe_tan;
      nonempty(s_grid, "s_grid");
      for (double s : s_grid)
        need(std::fabs(s) <= principal::kMaxAbsS && (ht || s != 0.0), ht ? "s must satisfy |s| <= 100"
                                                                          : "s must satisfy 0 < |s| <= 100");
      nonempty(epsilons, "epsilons");
      for (int e : epsilons) need(e == 0 || e == 1, "epsilons must be 0 or 1");
      nonempty(mu_range, "mu_range");
      nonempty(nu_range, "nu_range");
      for (int k : mu_range) need(std::abs(k) <= principal::kMaxAbsIndex, "|mu| must be <= 200");
      for (int k : nu_range) need(std::abs(k) <= principal::kMaxAbsIndex, "|nu| must be <= 200");
      for (int e : epsilons)
        need(!with_parity(mu_range, e).empty() && !with_parity(nu_range, e).empty(),
             "mu_range and nu_range need indices of every listed parity");
      nonempty(r_grid, "r_grid");
      for (double r : r_grid) need(ht ? r >= 0.0 : r >= 1.0, ht ? "r must be >= 0" : "r must be >= 1");
      break;
    }
    case Family::complementary:
      nonempty(lambda_grid, "lambda_grid");
      for (double l : lambda_grid) need(l != 0.0 && std::fabs(l) < 0.5, "lambda must satisfy 0 < |lambda| < 1/2");
      nonempty(mu_range, "mu_range");
      nonempty(nu_range, "nu_range");
      for (int k : mu_range) need(k % 2 == 0 && std::abs(k) <= principal::kMaxAbsIndex, "mu must be even, |mu| <= 200");
      for (int k : nu_range) need(k % 2 == 0 && std::abs(k) <= principal::kMaxAbsIndex, "nu must be even, |nu| <= 200");
      nonempty(r_grid, "r_grid");
      for (double r : r_grid) need(r >= 1.0, "r must be >= 1");
      break;
    case Family::discrete_plus:
    case Family::discrete_minus:
      nonempty(ell_set, "ell_set");
      for (int l : ell_set) need(l >= 1 && l <= 200, "ell must lie in [1, 200]");
      nonempty(mu_range, "mu_range");
      nonempty(nu_range, "nu_range");
      for (int k : mu_range) need(k >= 0 && k <= 400, "discrete offsets must lie in [0, 400]");
      for (int k : nu_range) need(k >= 0 && k <= 400, "discrete offsets must lie in [0, 400]");
      nonempty(r_grid, "r_grid");
      for (double r : r_grid) need(r >= 0.0, "r must be >= 0");
      break;
    case Family::metaplectic:
      nonempty(lambda_grid, "lambda_grid");
      for (double l : lambda_grid) need(l >= 1.0 && l <= 1000.0, "lambda must lie in [1, 1000]");
      nonempty(mu_range, "mu_range");
      nonempty(nu_range, "nu_range");
      for (int k : mu_range) need(k >= 0 && k <= 100, "m must lie in [0, 100]");
      for (int k : nu_range) need(k >= 0 && k <= 100, "n must lie in [0, 100]");
      break;
    case Family::dispersive:
      nonempty(dims, "dims");
      for (int d : dims) need(d >= 1 && d <= 8, "dims must lie in [1, 8]");
      nonempty(t_grid, "t_grid");
      for (double t : t_grid) need(metaplectic::schrodinger_singular_value(t) <= 1000.0, "|t| too large");
      for (int d : dims)
        need(static_cast<double>(vector_terms) <= std::pow(max_degree + 1.0, d), "vector_terms exceeds the index space");
      break;
  }
}

std::vector<BoundRecord> run_sweep(const SweepConfig& cfg, Execution ex) {
  cfg.validate();
  const bool par = ex == Execution::parallel;
  switch (*cfg.family) {
    case Family::principal:
      return block_sweep(cfg, par, false, false);
    case Family::howe_tan:
      return block_sweep(cfg, par, false, true);
    case Family::complementary:
      return block_sweep(cfg, par, true, false);
    case Family::discrete_plus:
      return discrete_sweep(cfg, par, discrete::Sign::plus);
    case Family::discrete_minus:
      return discrete_sweep(cfg, par, discrete::Sign::minus);
    case Family::metaplectic:
      return metaplectic_sweep(cfg, par);
    case Family::dispersive:
      return dispersive_sweep(cfg, par);
  }
  return {};
}

}  // namespace matcoef::harness
