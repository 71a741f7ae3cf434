#include "matcoef/ktype_average.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "matcoef/complementary.hpp"
#include "matcoef/principal.hpp"

namespace matcoef::ktype {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool even(int k) { return k % 2 == 0; }

CoefficientTable from_block(principal::CoeffBlock&& b, const char* who) {
  if (!b.converged) {
    std::size_t worst = 0;
    for (std::size_t k = 1; k < b.err_estimate.size(); ++k)
      if (b.err_estimate[k] > b.err_estimate[worst]) worst = k;
    throw quad::QuadratureError(std::string(who) + ": tolerance not met",
                                QuadResult{b.value[worst], b.err_estimate[worst], b.nodes_used});
  }
  return CoefficientTable{std::move(b.mus), std::move(b.nus), std::move(b.value), std::move(b.err_estimate)};
}

CoefficientTable discrete_table(int ell, discrete::Sign sign, std::span<const int> mus, std::span<const int> nus,
                                double r) {
  CoefficientTable t{{mus.begin(), mus.end()}, {nus.begin(), nus.end()}, {}, {}};
  t.value.reserve(mus.size() * nus.size());
  for (int mu : mus)
    for (int nu : nus) {
      // <pi(a) g_n, g_m> = v_{m,n}(a) because the coefficient is real.
      discrete::DiscreteParams p;
      p.ell = ell;
      p.sign = sign;
      p.m = discrete::HalfInt{nu};
      p.n = discrete::HalfInt{mu};
      t.value.emplace_back(discrete::coeff_discrete(p, r));
    }
  t.err_estimate.assign(t.value.size(), 0.0);
  return t;
}

std::size_t position(const std::vector<int>& v, int x) {
  const auto it = std::find(v.begin(), v.end(), x);
  if (it == v.end()) throw std::invalid_argument("coefficient table does not cover the vector's indices");
  return static_cast<std::size_t>(it - v.begin());
}

}  // namespace

bool index_allowed(const RepresentationId& rep, int index) {
  return std::visit(
      overloaded{
          [&](const Principal& p) { return even(index - p.epsilon) && std::abs(index) <= principal::kMaxAbsIndex; },
          [&](const Complementary&) { return even(index) && std::abs(index) <= principal::kMaxAbsIndex; },
          [&](const DiscretePlus& d) { return index >= d.ell && even(index - d.ell); },
          [&](const DiscreteMinus& d) { return index <= -d.ell && even(index + d.ell); },
      },
      rep);
}

std::vector<int> index_pool(const RepresentationId& rep, int bound) {
  std::vector<int> out;
  for (int k = -bound; k <= bound; ++k)
    if (index_allowed(rep, k)) out.push_back(k);
  return out;
}

double KTypeVector::norm_sq() const {
  double s = 0.0;
  for (const auto& e : entries) s += std::norm(e.second);
  return s;
}

std::vector<int> KTypeVector::indices() const {
  std::vector<int> v;
  v.reserve(entries.size());
  for (const auto& e : entries) v.push_back(e.first);
  return v;
}

void KTypeVector::validate(const RepresentationId& rep) const {
  std::set<int> seen;
  for (const auto& e : entries) {
    if (!seen.insert(e.first).second) throw std::invalid_argument("KTypeVector: repeated index");
    if (!index_allowed(rep, e.first)) throw std::invalid_argument("KTypeVector: index not a K-type of this representation");
  }
}

KTypeVector KTypeVector::scaled(cplx a) const {
  KTypeVector v = *this;
  for (auto& e : v.entries) e.second *= a;
  return v;
}

CoefficientTable coefficient_table(const RepresentationId& rep, std::span<const int> mus, std::span<const int> nus,
                                   double r, const QuadConfig& cfg) {
  if (!(r >= 0.0)) throw std::invalid_argument("coefficient_table: r must be >= 0");
  for (int m : mus)
    if (!index_allowed(rep, m)) throw std::invalid_argument("coefficient_table: bad index");
  for (int n : nus)
    if (!index_allowed(rep, n)) throw std::invalid_argument("coefficient_table: bad index");
  return std::visit(
      overloaded{
          [&](const Principal& p) {
            return from_block(principal::coeff_principal_block(p.s, p.epsilon, mus, nus, r, cfg), "principal table");
          },
          [&](const Complementary& c) {
            return from_block(complementary::coeff_complementary_block(c.lambda, mus, nus, r, cfg),
                              "complementary table");
          },
          [&](const DiscretePlus& d) { return discrete_table(d.ell, discrete::Sign::plus, mus, nus, r); },
          [&](const DiscreteMinus& d) { return discrete_table(d.ell, discrete::Sign::minus, mus, nus, r); },
      },
      rep);
}

QuadResult coeff_from_table(const CoefficientTable& t, const KTypeVector& f, const KTypeVector& g, double theta1,
                            double theta2) {
  QuadResult out;
  for (const auto& [mu, b] : f.entries) {
    const std::size_t i = position(t.mus, mu);
    for (const auto& [nu, c] : g.entries) {
      const std::size_t j = position(t.nus, nu);
      const cplx w = b * std::conj(c);
      out.value += w * std::polar(1.0, mu * theta2 + nu * theta1) * t.at(i, j);
      out.err_estimate += std::abs(w) * t.err_estimate[i * t.nus.size() + j];
    }
  }
  out.nodes_used = 1;
  return out;
}

QuadResult coeff_general(const RepresentationId& rep, const KTypeVector& f, const KTypeVector& g, const KAKElement& x,
                         const QuadConfig& cfg) {
  f.validate(rep);
  g.validate(rep);
  const auto mus = f.indices(), nus = g.indices();
  const CoefficientTable t = coefficient_table(rep, mus, nus, x.r, cfg);
  return coeff_from_table(t, f, g, x.theta1, x.theta2);
}

double averaged_coeff_sq(const CoefficientTable& t, const KTypeVector& f, const KTypeVector& g) {
  double s = 0.0;
  for (const auto& [mu, b] : f.entries) {
    const std::size_t i = position(t.mus, mu);
    for (const auto& [nu, c] : g.entries) s += std::norm(b) * std::norm(c) * std::norm(t.at(i, position(t.nus, nu)));
  }
  return s;
}

double averaged_coeff_sq(const RepresentationId& rep, const KTypeVector& f, const KTypeVector& g, double r,
                         const QuadConfig& cfg) {
  f.validate(rep);
  g.validate(rep);
  const auto mus = f.indices(), nus = g.indices();
  return averaged_coeff_sq(coefficient_table(rep, mus, nus, r, cfg), f, g);
}

QuadResult averaged_coeff_sq_direct(const CoefficientTable& t, const KTypeVector& f, const KTypeVector& g,
                                    const QuadConfig& cfg) {
  int top = 0;
  for (const auto& e : f.entries) top = std::max(top, std::abs(e.first));
  for (const auto& e : g.entries) top = std::max(top, std::abs(e.first));
  QuadConfig c = cfg;
  c.oscillation_scale = std::max(cfg.oscillation_scale, 2.0 * top);

  // For fixed theta1 the coefficient is sum_mu b_mu e^{i mu theta2} D_mu(theta1).
  std::vector<cplx> d(f.entries.size());
  auto outer = [&](double th1) -> cplx {
    for (std::size_t a = 0; a < f.entries.size(); ++a) {
      const std::size_t i = position(t.mus, f.entries[a].first);
      cplx s = 0.0;
      for (const auto& [nu, cc] : g.entries) s += std::conj(cc) * std::polar(1.0, nu * th1) * t.at(i, position(t.nus, nu));
      d[a] = f.entries[a].second * s;
    }
    const auto inner = quad::integrate_periodic(
        [&](double th2) {
          cplx s = 0.0;
          for (std::size_t a = 0; a < f.entries.size(); ++a) s += d[a] * std::polar(1.0, f.entries[a].first * th2);
          return cplx(std::norm(s));
        },
        c);
    return inner.value;
  };
  QuadResult r = quad::integrate_periodic(outer, c);
  const double norm = 4.0 * std::numbers::pi * std::numbers::pi;
  r.value /= norm;
  r.err_estimate /= norm;
  return r;
}

KTypeVector random_vector(rng::SplitMix64& g, std::span<const int> pool, std::size_t terms) {
  const std::vector<int> idx = rng::choose_distinct(g, pool, terms);
  const auto amp = rng::unit_amplitudes(g, terms);
  KTypeVector v;
  for (std::size_t k = 0; k < terms; ++k) v.entries.emplace_back(idx[k], amp[k]);
  return v;
}

}  // namespace matcoef::ktype
