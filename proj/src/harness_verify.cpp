#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "harness_detail.hpp"
#include "matcoef/complementary.hpp"
#include "matcoef/discrete.hpp"
#include "matcoef/harness.hpp"
#include "matcoef/ktype_average.hpp"
#include "matcoef/metaplectic.hpp"
#include "matcoef/principal.hpp"
#include "matcoef/random.hpp"
#include "matcoef/specfun.hpp"

namespace matcoef::harness {

using nlohmann::json;
using quad::cplx;
using quad::QuadResult;

namespace {

constexpr double kDriftLimit = 0.05;
constexpr std::size_t kMaxListedFailures = 25;

// Collects failures; the suite passes iff none were recorded.
struct Checker {
  SuiteResult& out;
  std::size_t count = 0;
  void fail(const std::string& msg) {
    ++count;
    if (out.failures.size() < kMaxListedFailures) out.failures.push_back(msg);
  }
  void expect(bool ok, const std::string& msg) {
    if (!ok) fail(msg);
  }
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

std::vector<double> steps(double a, double b, double h) {
  std::vector<double> v;
  const int n = static_cast<int>(std::floor((b - a) / h + 1e-9));
  for (int i = 0; i <= n; ++i) v.push_back(a + i * h);
  return v;
}

std::vector<int> int_steps(int a, int b, int h = 1) {
  std::vector<int> v;
  for (int k = a; k <= b; k += h) v.push_back(k);
  return v;
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double num = 0, den = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += (x[i] - mx) * (y[i] - my);
    den += (x[i] - mx) * (x[i] - mx);
  }
  return num / den;
}

struct SweepStats {
  double max_ratio = 0.0;
  std::size_t flagged = 0, nonfinite = 0, rows = 0;
  json where;
};

SweepStats stats(const std::vector<BoundRecord>& rows) {
  SweepStats s;
  s.rows = rows.size();
  for (const auto& r : rows) {
    if (r.flagged) ++s.flagged;
    if (!std::isfinite(r.ratio) || !std::isfinite(r.abs_coeff) || !std::isfinite(r.quad_err)) {
      ++s.nonfinite;
      continue;
    }
    if (r.ratio > s.max_ratio) {
      s.max_ratio = r.ratio;
      s.where = {{"family", r.family}, {"p1", r.p1}, {"p2", r.p2}, {"mu", r.mu}, {"nu", r.nu}, {"r_or_t", r.r_or_t}};
    }
  }
  return s;
}

// Runs the sweep at the config tolerance and 10x tighter; checks finiteness and drift of the max ratio.
std::pair<std::vector<BoundRecord>, std::vector<BoundRecord>> drift_check(const SweepConfig& sweep, Checker& ck,
                                                                          json& details) {
  SweepConfig fine = sweep;
  fine.quad = sweep.quad.tightened(10.0);
  auto a = run_sweep(sweep), b = run_sweep(fine);
  const auto sa = stats(a), sb = stats(b);
  const double drift = std::fabs(sa.max_ratio - sb.max_ratio) / sb.max_ratio;
  details["rows"] = sa.rows;
  details["max_ratio"] = sa.max_ratio;
  details["max_ratio_tightened"] = sb.max_ratio;
  details["c_emp"] = sb.max_ratio;
  details["argmax"] = sb.where;
  details["drift"] = drift;
  details["flagged"] = sa.flagged + sb.flagged;
  ck.expect(sa.nonfinite == 0 && sb.nonfinite == 0, "non-finite records: " + std::to_string(sa.nonfinite + sb.nonfinite));
  ck.expect(sa.flagged == 0 && sb.flagged == 0,
            "records missed quadrature tolerance: " + std::to_string(sa.flagged + sb.flagged));
  ck.expect(std::isfinite(drift) && drift < kDriftLimit, "max ratio drift " + fmt(drift) + " >= 0.05");
  return {std::move(a), std::move(b)};
}

// Rows come in groups of len(r_grid) sharing (p1, p2, mu, nu); fits ln|coeff| on r in [4, 8].
struct SlopeFit {
  const BoundRecord* key;
  double slope;
  bool guarded;  // |coeff(8)| > 10 quad_err
};

std::vector<SlopeFit> slope_fits(const std::vector<BoundRecord>& rows, std::size_t group) {
  std::vector<SlopeFit> out;
  for (std::size_t g = 0; g + group <= rows.size(); g += group) {
    std::vector<double> x, y;
    const BoundRecord* at8 = nullptr;
    for (std::size_t k = g; k < g + group; ++k) {
      const auto& r = rows[k];
      if (r.r_or_t >= 4.0 - 1e-12 && r.r_or_t <= 8.0 + 1e-12) {
        x.push_back(r.r_or_t);
        y.push_back(std::log(r.abs_coeff));
      }
      if (std::fabs(r.r_or_t - 8.0) < 1e-12) at8 = &r;
    }
    const bool guarded = at8 && at8->abs_coeff > 10.0 * at8->quad_err;
    out.push_back({&rows[g], ls_slope(x, y), guarded});
  }
  return out;
}

std::string point(const BoundRecord& r) {
  return r.family + " p1=" + fmt(r.p1) + " p2=" + fmt(r.p2) + " mu=" + fmt(r.mu) + " nu=" + fmt(r.nu);
}

const std::vector<double> kPrincipalS{0.05, 0.1, 0.2, 0.5, 1, 2, 5, 10, 20};
const std::vector<double> kComplementaryLambda{-0.45, -0.35, -0.25, -0.15, -0.05, 0.05, 0.15, 0.25, 0.35, 0.45};

// ---- criterion 1
void suite_discrete_bound(const SweepConfig& cfg, SuiteResult& res, Checker& ck) {
  (void)cfg;
  const auto rs = steps(0.0, 6.0, 0.05);
  double worst = 0.0, sharp_dev = 0.0;
  std::size_t points = 0;
  for (auto sign : {discrete::Sign::plus, discrete::Sign::minus})
    for (int ell = 1; ell <= 6; ++ell)
      for (int dm = 0; dm <= 40; ++dm)
        for (int dn = 0; dn <= 40; ++dn) {
          const auto p = discrete::DiscreteParams::from_offsets(ell, sign, dm, dn);
          for (double r : rs) {
            const double q = discrete::discrete_bound_ratio(p, r);
            ++points;
            if (!(q <= 1.0 + 1e-12))
              ck.fail("ratio " + format_double(q) + " at ell=" + std::to_string(ell) + " dm=" + std::to_string(dm) +
                      " dn=" + std::to_string(dn) + " r=" + fmt(r));
            worst = std::max(worst, q);
            if (ell == 1 && dm == 0 && dn == 0) {
              sharp_dev = std::max(sharp_dev, std::fabs(q - 1.0));
              if (!(std::fabs(q - 1.0) <= 1e-12)) ck.fail("sharp case deviates at r=" + fmt(r));
            }
          }
        }
  res.details = {{"points", points}, {"max_ratio", worst}, {"sharp_case_max_deviation", sharp_dev}};
}

// ---- criterion 2
void suite_formal_degree(const SweepConfig& cfg, SuiteResult& res, Checker& ck) {
  const std::pair<int, int> pairs[] = {{0, 0}, {0, 3}, {2, 5}, {7, 1}, {10, 10}};
  double worst = 0.0;
  json rows = json::array();
  for (int ell = 2; ell <= 6; ++ell)
    for (auto [dm, dn] : pairs) {
      const auto p = discrete::DiscreteParams::from_offsets(ell, discrete::Sign::plus, dm, dn);
      const double want = 1.0 / (ell - 1);
      try {
        const double got = discrete::formal_degree_integral(p, cfg.quad).value.real();
        const double rel = std::fabs(got - want) / want;
        worst = std::max(worst, rel);
        ck.expect(rel <= 1e-6, "ell=" + std::to_string(ell) + " offsets (" + std::to_string(dm) + "," +
                                   std::to_string(dn) + "): relative error " + fmt(rel));
      } catch (const quad::QuadratureError& e) {
        ck.fail("quadrature failed at ell=" + std::to_string(ell) + ": " + e.what());
      }
    }
  res.details = {{"max_relative_error", worst}, {"pairs_per_ell", 5}};
}

SweepConfig principal_grid(const SweepConfig& cfg, bool with_zero) {
  SweepConfig c;
  c.family = with_zero ? Family::howe_tan : Family::principal;
  c.s_grid = kPrincipalS;
  if (with_zero) c.s_grid.insert(c.s_grid.begin(), 0.0);
  c.epsilons = {0, 1};
  c.mu_range = c.nu_range = int_steps(-41, 41);
  c.r_grid = steps(1.0, 8.0, 0.5);
  c.quad = cfg.quad;
  return c;
}

// ---- criterion 3
void suite_principal(const SweepConfig& cfg, SuiteResult& res, Checker& ck) {
  const SweepConfig c = principal_grid(cfg, false);
  const auto [coarse, fine] = drift_check(c, ck, res.details);
  const auto fits = slope_fits(fine, c.r_grid.size());
  std::size_t guarded = 0, outside = 0;
  double lo = 0.0, hi = -1e300;
  std::map<double, std::pair<std::size_t, std::size_t>> by_s;  // s -> (outside, guarded)
  for (const auto& f : fits) {
    if (!f.guarded) continue;
    ++guarded;
    lo = std::min(lo, f.slope);
    hi = std::max(hi, f.slope);
    auto& e = by_s[f.key->p1];
    ++e.second;
    if (!(f.slope >= -1.05 && f.slope <= -0.95)) {
      ++outside;
      ++e.first;
      ck.fail("slope " + fmt(f.slope) + " at " + point(*f.key));
    }
  }
  json per_s = json::object();
  for (const auto& [s, e] : by_s) per_s[fmt(s)] = {{"outside", e.first}, {"guarded", e.second}};
  res.details["slope_fits_guarded"] = guarded;
  res.details["slope_fits_outside"] = outside;
  res.details["slope_min"] = lo;
  res.details["slope_max"] = hi;
  res.details["slope_outside_by_s"] = per_s;
}

// ---- criterion 4
void suite_howe_tan(const SweepConfig& cfg, SuiteResult& res, Checker& ck) {
  drift_check(principal_grid(cfg, true), ck, res.details);
}

// ---- criterion 5
void suite_complementary(const SweepConfig& cfg, SuiteResult& res, Checker& ck) {
  SweepConfig c;
  c.family = Family::complementary;
  c.lambda_grid = kComplementaryLambda;
  c.mu_range = c.nu_range = int_steps(-20, 20, 2);
  c.r_grid = steps(1.0, 8.0, 0.5);
  c.quad = cfg.quad;
  const auto [coarse, fine] = drift_check(c, ck, res.details);

  json slopes = json::object();
  for (const auto& f : slope_fits(fine, c.r_grid.size())) {
    if (f.key->mu != 0.0 || f.key->nu != 0.0) continue;
    const double lam = std::fabs(f.key->p1), target = -(1.0 - 2.0 * lam);
    const double tol = 0.02 * (1.0 - 2.0 * lam);
    slopes[fmt(f.key->p1)] = {{"slope", f.slope}, {"target", target}};
    ck.expect(std::fabs(f.slope - target) <= tol,
              "slope " + fmt(f.slope) + " vs " + fmt(target) + " +- " + fmt(tol) + " at lambda=" + fmt(f.key->p1));
  }
  res.details["slopes_mu_nu_0"] = slopes;

  rng::SplitMix64 g(cfg.seed);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const double lam = (0.05 + 0.4 * g.uniform()) * (g.below(2) ? 1.0 : -1.0);
    const int mu = 2 * static_cast<int>(g.below(21)) - 20, nu = 2 * static_cast<int>(g.below(21)) - 20;
    const double r = 1.0 + 7.0 * g.uniform();
    try {
      const auto a = complementary::a_integral(lam, mu, nu, -r, cfg.quad);
      const auto b = complementary::a_integral(-lam, -nu, -mu, r, cfg.quad);
      const double rel = std::abs(a.value - b.value) / std::max({std::abs(a.value), std::abs(b.value), 1e-300});
      worst = std::max(worst, rel);
      ck.expect(rel <= 1e-6, "A-symmetry relative gap " + fmt(rel) + " at lambda=" + fmt(lam));
    } catch (const quad::QuadratureError& e) {
      ck.fail(std::string("A-symmetry quadrature failed: ") + e.what());
    }
  }
  res.details["a_symmetry_max_relative_gap"] = worst;
}

// ---- criterion 6
void suite_prop41(const SweepConfig& cfg, SuiteResult& res, Checker& ck) {
  using namespace ktype;
  struct Case {
    const char* name;
    RepresentationId rep;
    int bound;
  };
  const Case cases[] = {{"principal s=1 eps=0", Principal{1.0, 0}, 41},
                        {"complementary lambda=0.25", Complementary{0.25}, 20},
                        {"discrete-plus ell=2", DiscretePlus{2}, 82}};
  rng::SplitMix64 g(cfg.seed);
  json per = json::object();
  for (const auto& cs : cases) {
    const auto pool = index_pool(cs.rep, cs.bound);
    std::vector<std::pair<KTypeVector, KTypeVector>> vecs;
    for (int k = 0; k < 20; ++k) {
      auto f = random_vector(g, pool, 10);
      auto h = random_vector(g, pool, 10);
      vecs.emplace_back(std::move(f), std::move(h));
    }
    for (double r : {0.5, 2.0, 5.0}) {
      std::vector<double> rel(vecs.size(), 0.0);
      detail::for_each_task(vecs.size(), true, [&](std::size_t k) {
        const auto& [f, h] = vecs[k];
        const auto mus = f.indices(), nus = h.indices();
        const auto t = coefficient_table(cs.rep, mus, nus, r, cfg.quad);
        const double sum = averaged_coeff_sq(t, f, h);
        const double direct = averaged_coeff_sq_direct(t, f, h, cfg.quad).value.real();
        rel[k] = std::fabs(sum - direct) / sum;
      });
      const double worst = *std::max_element(rel.begin(), rel.end());
      per[std::string(cs.name) + " r=" + fmt(r)] = worst;
      for (std::size_t k = 0; k < rel.size(); ++k)
        ck.expect(rel[k] <= 1e-6, std::string(cs.name) + " r=" + fmt(r) + " pair " + std::to_string(k) +
                                      ": relative gap " + fmt(rel[k]));
    }
  }
  res.details["max_relative_gap"] = per;
}

cplx hermite_inner(const metaplectic::HermiteVector& f, const metaplectic::HermiteVector& g) {
  cplx s = 0.0;
  for (const auto& [a, x] : f.entries)
    for (const auto& [b, y] : g.entries)
      if (a == b) s += x * std::conj(y);
  return s;
}

// ---- criterion 7
void suite_wigner_moyal(const SweepConfig& cfg, SuiteResult& res, Checker& ck) {
  using namespace metaplectic;
  rng::SplitMix64 g(cfg.seed);
  std::vector<WignerPair> lhs, rhs;
  for (int k = 0; k < 20; ++k) {
    lhs.emplace_back(random_hermite_vector(g, 1, 3, 10), random_hermite_vector(g, 1, 3, 10));
    rhs.emplace_back(random_hermite_vector(g, 1, 3, 10), random_hermite_vector(g, 1, 3, 10));
  }
  const auto moyal = wigner_overlap_batch(lhs, rhs, cfg.quad);
  double worst = 0.0;
  for (std::size_t k = 0; k < lhs.size(); ++k) {
    const cplx want = hermite_inner(lhs[k].first, rhs[k].first) * std::conj(hermite_inner(lhs[k].second, rhs[k].second));
    const double scale = std::sqrt(lhs[k].first.norm_sq() * lhs[k].second.norm_sq() * rhs[k].first.norm_sq() *
                                   rhs[k].second.norm_sq());
    const double rel = std::abs(moyal.value[k] - want) / scale;
    worst = std::max(worst, rel);
    ck.expect(rel <= 1e-6, "Moyal pair " + std::to_string(k) + ": relative error " + fmt(rel));
  }
  res.details["moyal_max_relative_error"] = worst;

  std::vector<WignerPair> diag;
  for (int n = 0; n <= 12; ++n) {
    HermiteVector h{{{{n}, 1.0}}};
    diag.emplace_back(h, h);
  }
  const auto norms = wigner_overlap_batch(diag, diag, cfg.quad);
  double norm_dev = 0.0;
  for (int n = 0; n <= 12; ++n) {
    const double dev = std::abs(norms.value[static_cast<std::size_t>(n)] - 1.0);
    norm_dev = std::max(norm_dev, dev);
    ck.expect(dev <= 1e-8, "int W(h_" + std::to_string(n) + ")^2 off by " + fmt(dev));
  }
  res.details["wigner_norm_max_deviation"] = norm_dev;

  const auto t1 = laguerre_pair_table_unchecked(12, 1.0, cfg.quad);
  double delta_dev = 0.0;
  for (int m = 0; m <= 12; ++m)
    for (int n = 0; n <= 12; ++n) delta_dev = std::max(delta_dev, std::fabs(t1.at(m, n) - (m == n ? 1.0 : 0.0)));
  ck.expect(delta_dev <= 1e-6, "I(m,n,1) deviates from delta by " + fmt(delta_dev));
  res.details["identity_table_max_deviation"] = delta_dev;

  try {
    const double planar = laguerre_pair_table(0, 2.0, cfg.quad).at(0, 0);
    const double half = laguerre_pair_halfline(0, 0, 2.0, cfg.quad).value.real() / 2.0;
    const double gap = std::fabs(planar - half);
    res.details["two_route_gap"] = gap;
    ck.expect(gap <= 1e-6, "two routes for I(0,0,2) differ by " + fmt(gap));
  } catch (const quad::QuadratureError& e) {
    ck.fail(std::string("two-route quadrature failed: ") + e.what());
  }
}

// ---- criterion 8
void suite_lemma52(const SweepConfig& cfg, SuiteResult& res, Checker& ck) {
  using namespace metaplectic;
  const std::vector<double> lams{1, 2, 4, 8, 16, 32, 64, 128};
  std::vector<PairTable> coarse(lams.size()), fine(lams.size());
  const QuadConfig tight = cfg.quad.tightened(10.0);
  detail::for_each_task(2 * lams.size(), true, [&](std::size_t k) {
    const std::size_t i = k % lams.size();
    (k < lams.size() ? coarse[i] : fine[i]) =
        laguerre_pair_table_unchecked(30, lams[i], k < lams.size() ? cfg.quad : tight);
  });
  auto max_scaled = [&](const std::vector<PairTable>& ts) {
    double m = 0.0;
    for (const auto& t : ts)
      for (int a = 0; a <= 30; ++a)
        for (int b = 0; b <= 30; ++b) m = std::max(m, t.lambda * std::fabs(t.at(a, b)));
    return m;
  };
  for (std::size_t i = 0; i < lams.size(); ++i)
    ck.expect(coarse[i].converged && fine[i].converged, "pair table missed tolerance at lambda=" + fmt(lams[i]));
  const double c1 = max_scaled(coarse), c2 = max_scaled(fine);
  const double drift = std::fabs(c1 - c2) / c2;
  res.details["lambda_I_max"] = c1;
  res.details["lambda_I_max_tightened"] = c2;
  res.details["lambda_I_drift"] = drift;
  ck.expect(std::isfinite(c1) && std::isfinite(c2) && drift < kDriftLimit, "lambda*|I| drift " + fmt(drift));

  // dimension 2: value * lambda1 * lambda2 over ordered pairs from {1, 2, 8, 32}
  const std::size_t pick[] = {0, 1, 3, 5};
  rng::SplitMix64 g(cfg.seed);
  std::vector<std::pair<HermiteVector, HermiteVector>> vecs;
  for (int k = 0; k < cfg.vector_pairs; ++k) vecs.emplace_back(random_hermite_vector(g, 2, 4, 10), random_hermite_vector(g, 2, 4, 10));
  auto torus_max = [&](const std::vector<PairTable>& ts) {
    double m = 0.0;
    for (std::size_t a : pick)
      for (std::size_t b : pick) {
        const PairTable* per[] = {&ts[a], &ts[b]};
        for (const auto& [f1, f2] : vecs) {
          const double v = torus_average_from_tables(per, f1, f2) * lams[a] * lams[b] / (f1.norm_sq() * f2.norm_sq());
          m = std::max(m, v);
        }
      }
    return m;
  };
  const double t1 = torus_max(coarse), t2 = torus_max(fine);
  const double tdrift = std::fabs(t1 - t2) / t2;
  res.details["torus_scaled_max"] = t1;
  res.details["torus_scaled_max_tightened"] = t2;
  res.details["torus_drift"] = tdrift;
  ck.expect(std::isfinite(t1) && tdrift < kDriftLimit, "torus average drift " + fmt(tdrift));
}

// ---- criterion 9
void suite_dispersive(const SweepConfig& cfg, SuiteResult& res, Checker& ck) {
  SweepConfig c;
  c.family = Family::dispersive;
  c.dims = {1, 2, 3};
  c.t_grid = {0, 0.5, 1, 2, 5, 10, 25, 50, 100};
  c.seed = cfg.seed;
  c.vector_pairs = cfg.vector_pairs;
  c.vector_terms = 3;
  c.max_degree = 6;
  c.quad = cfg.quad;
  drift_check(c, ck, res.details);
  const double l0 = metaplectic::schrodinger_singular_value(0.0), l1 = metaplectic::schrodinger_singular_value(1.0);
  ck.expect(std::fabs(l0 - 1.0) <= 1e-12, "lambda(0) = " + format_double(l0));
  ck.expect(std::fabs(l1 - (1.0 + std::sqrt(2.0))) <= 1e-12, "lambda(1) = " + format_double(l1));
  res.details["lambda_0"] = l0;
  res.details["lambda_1"] = l1;
}

// ---- criterion 10
void suite_specfun(const SweepConfig& cfg, SuiteResult& res, Checker& ck) {
  constexpr int N = 20;
  constexpr std::size_t n1 = N + 1;
  auto gram_dev = [](const quad::BatchResult<double>& b) {
    double d = 0.0;
    for (std::size_t m = 0; m < n1; ++m)
      for (std::size_t n = 0; n < n1; ++n) d = std::max(d, std::fabs(b.value[m * n1 + n] - (m == n ? 1.0 : 0.0)));
    return d;
  };
  json gram = json::object();
  for (int k : {0, 1, 2}) {
    quad::LineAccumulator<double> acc = [k](double t, double w, std::span<double> s) {
      double v[n1];
      specfun::laguerre_fn_all(k, t * t, std::span<double>(v, n1));  // x = t^2, dx = 2t dt
      for (std::size_t m = 0; m < n1; ++m)
        for (std::size_t n = 0; n < n1; ++n) s[m * n1 + n] += 2.0 * t * w * v[m] * v[n];
    };
    QuadConfig q = cfg.quad;
    q.oscillation_scale = std::max(q.oscillation_scale, std::sqrt(4.0 * N + 2.0 * k + 2.0));
    const double d = gram_dev(quad::integrate_line_batch<double>(n1 * n1, acc, q, {1.0, quad::Side::positive}));
    gram["laguerre_k" + std::to_string(k)] = d;
    ck.expect(d <= 1e-8, "Laguerre Gram (k=" + std::to_string(k) + ") deviates by " + fmt(d));
  }
  {
    quad::LineAccumulator<double> acc = [](double x, double w, std::span<double> s) {
      double v[n1];
      specfun::hermite_fn_all(x, std::span<double>(v, n1));
      for (std::size_t m = 0; m < n1; ++m)
        for (std::size_t n = 0; n < n1; ++n) s[m * n1 + n] += w * v[m] * v[n];
    };
    QuadConfig q = cfg.quad;
    q.oscillation_scale = std::max(q.oscillation_scale, std::sqrt(2.0 * N + 1.0));
    const double d = gram_dev(quad::integrate_line_batch<double>(n1 * n1, acc, q));
    gram["hermite"] = d;
    ck.expect(d <= 1e-8, "Hermite Gram deviates by " + fmt(d));
  }
  res.details["gram_max_deviation"] = gram;

  rng::SplitMix64 g(cfg.seed);
  double worst = 0.0;
  int samples = 0;
  while (samples < 10000) {
    const int nu = static_cast<int>(g.below(61));
    const double alpha = 12.0 * g.uniform();
    const int beta = static_cast<int>(g.below(81)) - 40;
    const double x = 2.0 * g.uniform() - 1.0;
    if (nu + beta < 0) continue;
    ++samples;
    const double v = std::fabs(specfun::jacobi_normalized(nu, alpha, beta, x));
    worst = std::max(worst, v);
    if (!(v <= 1.0 + 1e-12)) ck.fail("|g| = " + format_double(v) + " at nu=" + std::to_string(nu));
  }
  res.details["jacobi_normalized_max_abs"] = worst;

  double resid = 0.0;
  for (int i = 1; i <= 1000; ++i) {
    const double x = 100.0 * i / 1000.0;
    const double lhs = specfun::log_gamma(x + 1.0), rhs = specfun::log_gamma(x) + std::log(x);
    resid = std::max(resid, std::fabs(lhs - rhs) / std::max(1.0, std::fabs(lhs)));
  }
  res.details["log_gamma_recurrence_residual"] = resid;
  ck.expect(resid <= 1e-12, "log_gamma recurrence residual " + fmt(resid));
  res.details["laguerre_envelope_constant_n100"] = specfun::calibrate_laguerre_envelope(100);
}

// ---- pointwise refinement anchors
// A value counts as reproducible to 1e-6 when a 10x tighter run moves it by at most
// 1e-6 relative and its own error estimate certifies the same.
void suite_refinement(const SweepConfig& cfg, SuiteResult& res, Checker& ck) {
  const QuadConfig tight = cfg.quad.tightened(10.0);
  using Eval = std::function<QuadResult(const QuadConfig&)>;
  auto scaled = [](QuadResult r, double k) {
    r.value *= k;
    r.err_estimate *= std::fabs(k);
    return r;
  };
  const std::vector<std::pair<std::string, Eval>> anchors = {
      {"principal ratio s=1 mu=nu=0 r=1",
       [&](const QuadConfig& q) {
         principal::PrincipalParams p;
         p.s = 1.0;
         return scaled(principal::coeff_principal(p, 1.0, q), 1.0 / principal::theorem_bound(1.0, 1.0));
       }},
      {"howe-tan ratio s=0 eps=1 mu=nu=1 r=3",
       [&](const QuadConfig& q) {
         principal::PrincipalParams p;
         p.epsilon = 1;
         p.mu = p.nu = 1;
         return scaled(principal::coeff_principal(p, 3.0, q), 1.0 / principal::howe_tan_bound(3.0));
       }},
      {"complementary ratio lambda=0.25 mu=nu=0 r=4",
       [&](const QuadConfig& q) {
         complementary::ComplementaryParams p;
         p.lambda = 0.25;
         return scaled(complementary::coeff_complementary(p, 4.0, q), 1.0 / complementary::theorem_bound(0.25, 4.0));
       }},
      {"A lambda=0.3 mu=2 nu=0 r=2", [](const QuadConfig& q) { return complementary::a_integral(0.3, 2, 0, 2.0, q); }},
      {"dispersive n=1 h0 t=5",
       [](const QuadConfig& q) {
         const auto t = metaplectic::laguerre_pair_table(0, metaplectic::schrodinger_singular_value(5.0), q);
         const double v = std::sqrt(6.0 * t.at(0, 0));
         return QuadResult{v, 0.5 * v * t.err_at(0, 0) / t.at(0, 0), 0};
       }},
      {"I(0,0,2)",
       [](const QuadConfig& q) {
         const auto t = metaplectic::laguerre_pair_table(0, 2.0, q);
         return QuadResult{t.at(0, 0), t.err_at(0, 0), 0};
       }},
  };
  json out = json::object();
  for (const auto& [name, f] : anchors) {
    try {
      const QuadResult a = f(cfg.quad), b = f(tight);
      const double mag = std::max(std::abs(b.value), 1e-300);
      const double change = std::abs(a.value - b.value) / mag, cert = a.err_estimate / mag;
      out[name] = {{"value", std::abs(a.value)}, {"relative_change", change}, {"relative_err_estimate", cert}};
      ck.expect(change <= 1e-6, name + ": refinement change " + fmt(change));
      ck.expect(cert <= 1e-6, name + ": error estimate " + fmt(cert) + " does not certify 1e-6");
    } catch (const quad::QuadratureError& e) {
      ck.fail(name + ": " + e.what());
    }
  }
  res.details["anchors"] = out;
}

using SuiteFn = void (*)(const SweepConfig&, SuiteResult&, Checker&);

struct SuiteEntry {
  const char* name;
  int criterion;
  SuiteFn fn;
};

const SuiteEntry kSuites[] = {
    {"discrete_bound", 1, suite_discrete_bound}, {"formal_degree", 2, suite_formal_degree},
    {"principal", 3, suite_principal},           {"howe_tan", 4, suite_howe_tan},
    {"complementary", 5, suite_complementary},   {"prop41", 6, suite_prop41},
    {"wigner_moyal", 7, suite_wigner_moyal},     {"lemma52", 8, suite_lemma52},
    {"dispersive", 9, suite_dispersive},         {"specfun", 10, suite_specfun},
    {"refinement", 0, suite_refinement},
};

const char* status_name(Status s) { return s == Status::pass ? "pass" : s == Status::fail ? "fail" : "skipped"; }

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& s : kSuites) v.emplace_back(s.name);
    return v;
  }();
  return names;
}

int suite_criterion(const std::string& name) {
  for (const auto& s : kSuites)
    if (name == s.name) return s.criterion;
  return -1;
}

SuiteResult run_suite(const std::string& name, const SweepConfig& cfg) {
  for (const auto& s : kSuites) {
    if (name != s.name) continue;
    SuiteResult res;
    res.name = s.name;
    res.criterion = s.criterion;
    Checker ck{res};
    try {
      s.fn(cfg, res, ck);
    } catch (const std::exception& e) {
      ck.fail(std::string("suite aborted: ") + e.what());
    }
    res.details["failure_count"] = ck.count;
    res.status = ck.count == 0 ? Status::pass : Status::fail;
    return res;
  }
  throw std::invalid_argument("unknown suite '" + name + "'");
}

bool VerifySummary::passed() const {
  return std::none_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.status == Status::fail; });
}

json VerifySummary::to_json() const {
  json arr = json::array();
  for (const auto& s : suites)
    arr.push_back({{"name", s.name},
                   {"criterion", s.criterion},
                   {"status", status_name(s.status)},
                   {"details", s.details},
                   {"failures", s.failures}});
  return {{"passed", passed()}, {"suites", arr}};
}

VerifySummary verify_all(const SweepConfig& cfg) {
  cfg.quad.validate();
  VerifySummary out;
  for (const auto& s : kSuites) {
    const bool wanted = !cfg.suites || std::find(cfg.suites->begin(), cfg.suites->end(), s.name) != cfg.suites->end();
    if (!wanted) {
      SuiteResult skipped;
      skipped.name = s.name;
      skipped.criterion = s.criterion;
      skipped.status = Status::skipped;
      out.suites.push_back(std::move(skipped));
      continue;
    }
    out.suites.push_back(run_suite(s.name, cfg));
  }
  return out;
}

}  // namespace matcoef::harness
