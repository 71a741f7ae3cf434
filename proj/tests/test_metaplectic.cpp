#include <cmath>
#include <numbers>

#include "doctest.h"
#include "matcoef/metaplectic.hpp"
#include "matcoef/specfun.hpp"

using namespace matcoef;
using namespace matcoef::metaplectic;

namespace {

constexpr double pi = std::numbers::pi;

HermiteVector basis(int n) { return HermiteVector{{{{n}, 1.0}}}; }

cplx inner(const HermiteVector& f, const HermiteVector& g) {
  cplx s = 0.0;
  for (const auto& [a, x] : f.entries)
    for (const auto& [b, y] : g.entries)
      if (a == b) s += x * std::conj(y);
  return s;
}

}  // namespace

TEST_CASE("wigner values at the origin") {
  CHECK(wigner_diag(0, 0.0) == doctest::Approx(2 / std::sqrt(2 * pi)).epsilon(1e-15));
  CHECK(wigner_diag(1, 0.0) == doctest::Approx(-2 / std::sqrt(2 * pi)).epsilon(1e-15));
  CHECK(wigner_cross(3, 2, 0.0) == cplx(0.0));
  CHECK(wigner_diag(4, cplx(0.3, 0.4)) == doctest::Approx(wigner_diag(4, cplx(0.5, 0.0))).epsilon(1e-14));
}

TEST_CASE("closed forms against the defining integral") {
  QuadConfig cfg;
  CHECK(std::abs(wigner_direct(basis(0), basis(0), 0.0, cfg).value - wigner_diag(0, 0.0)) < 1e-9);
  rng::SplitMix64 g(1);
  for (int k = 0; k < 20; ++k) {
    const cplx z(4 * g.uniform() - 2, 4 * g.uniform() - 2);
    CHECK(std::abs(wigner_direct(basis(1), basis(0), z, cfg).value - wigner_cross(0, 1, z)) < 1e-8);
  }
  for (auto [a, b] : {std::pair{3, 1}, {0, 4}, {5, 5}}) {
    const cplx z(0.7, -0.4);
    CHECK(std::abs(wigner_direct(basis(a), basis(b), z, cfg).value - wigner_hermite_pair(a, b, z)) < 1e-8);
    // rotation covariance of the diagonal term
    const cplx w = std::polar(1.0, 1.1) * z;
    CHECK(std::abs(wigner_direct(basis(a), basis(a), w, cfg).value - wigner_diag(a, z)) < 1e-8);
  }
}

TEST_CASE("Moyal normalization") {
  QuadConfig cfg;
  for (int n : {0, 3, 12}) {
    const auto r = quad::integrate_plane([&](cplx z) { return cplx(std::pow(wigner_diag(n, z), 2)); }, cfg);
    CHECK(std::fabs(r.value.real() - 1.0) <= 1e-8);
  }
  for (auto [n, k] : {std::pair{0, 1}, {2, 3}, {8, 8}}) {
    const auto r = quad::integrate_plane([&](cplx z) { return cplx(std::norm(wigner_cross(n, k, z))); }, cfg);
    CHECK(std::fabs(r.value.real() - 1.0) <= 1e-8);
    // angular average vanishes off the diagonal
    QuadConfig pc;
    pc.oscillation_scale = k;
    const auto a = quad::integrate_periodic([&](double t) { return wigner_cross(n, k, std::polar(0.8, t)); }, pc);
    CHECK(std::abs(a.value) < 1e-12);
  }
}

TEST_CASE("pair table matches the single formulas") {
  std::vector<cplx> t(11 * 11);
  for (cplx z : {cplx(0.0), cplx(0.3, -1.2), cplx(-2.0, 0.5)}) {
    wigner_pair_all(10, z, t);
    for (int a = 0; a <= 10; ++a)
      for (int b = 0; b <= 10; ++b) CHECK(std::abs(t[a * 11 + b] - wigner_hermite_pair(a, b, z)) <= 1e-14);
  }
}

TEST_CASE("Moyal identity on random vectors") {
  QuadConfig cfg;
  rng::SplitMix64 g(2);
  std::vector<WignerPair> lhs, rhs;
  for (int k = 0; k < 5; ++k) {
    lhs.emplace_back(random_hermite_vector(g, 1, 3, 8), random_hermite_vector(g, 1, 3, 8));
    rhs.emplace_back(random_hermite_vector(g, 1, 3, 8), random_hermite_vector(g, 1, 3, 8));
  }
  const auto res = wigner_overlap_batch(lhs, rhs, cfg);
  CHECK(res.converged);
  for (std::size_t k = 0; k < lhs.size(); ++k) {
    const cplx want = inner(lhs[k].first, rhs[k].first) * std::conj(inner(lhs[k].second, rhs[k].second));
    CHECK(std::abs(res.value[k] - want) <= 1e-6);
  }
  // one pair checked through the scalar plane engine as well
  const auto& [f1, f2] = lhs[0];
  const auto& [t1, t2] = rhs[0];
  const auto scalar = quad::integrate_plane(
      [&](cplx z) { return wigner_closed(f1, f2, z) * std::conj(wigner_closed(t1, t2, z)); }, cfg);
  CHECK(std::abs(scalar.value - res.value[0]) <= 1e-8);
}

TEST_CASE("laguerre pair integrals") {
  QuadConfig cfg;
  const auto t1 = laguerre_pair_table(12, 1.0, cfg);
  for (int m = 0; m <= 12; ++m)
    for (int n = 0; n <= 12; ++n) CHECK(std::fabs(t1.at(m, n) - (m == n ? 1.0 : 0.0)) <= 1e-6);
  for (double lam : {2.0, 4.0, 30.0}) {
    const auto t = laguerre_pair_table(8, lam, cfg);
    CHECK(t.at(0, 0) == doctest::Approx(2 * lam / (1 + lam * lam)).epsilon(1e-9));
    for (int m = 0; m <= 8; ++m)
      for (int n = 0; n <= 8; ++n) {
        CHECK(std::fabs(t.at(m, n) - t.at(n, m)) <= 1e-9);
        CHECK(t.at(m, n) >= -1e-12);
      }
  }
  CHECK(laguerre_pair_integral(0, 0, 2.0, cfg) == doctest::Approx(0.8).epsilon(1e-9));
  const auto hl = laguerre_pair_halfline(0, 0, 2.0, cfg);
  CHECK(std::fabs(hl.value.real() / 2.0 - laguerre_pair_integral(0, 0, 2.0, cfg)) <= 1e-6);
  CHECK_THROWS(laguerre_pair_integral(101, 0, 2.0, cfg));
  CHECK_THROWS(laguerre_pair_integral(0, 0, 0.5, cfg));
}

TEST_CASE("laguerre pair integral is a squared overlap") {
  // I(m, n, lambda) = (int lambda^{-1/2} h_m(x / lambda) h_n(x) dx)^2
  QuadConfig cfg;
  const double lam = 3.0;
  const auto t = laguerre_pair_table(6, lam, cfg);
  for (int m = 0; m <= 6; ++m)
    for (int n = 0; n <= 6; ++n) {
      const auto ov = quad::integrate_line(
          [&](double x) {
            return cplx(specfun::hermite_fn(m, x / lam) * specfun::hermite_fn(n, x) / std::sqrt(lam));
          },
          cfg);
      CHECK(std::fabs(t.at(m, n) - std::norm(ov.value)) <= 1e-9);
    }
}

TEST_CASE("torus average and dispersive ratio") {
  QuadConfig cfg;
  DiagonalSymplectic id{{1.0, 1.0}};
  HermiteVector b{{{{2, 3}, 1.0}}};
  CHECK(torus_averaged_coeff_sq(id, b, b, cfg) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(torus_averaged_coeff_sq(DiagonalSymplectic{{4.0}}, basis(0), basis(0), cfg) ==
        doctest::Approx(laguerre_pair_integral(0, 0, 4.0, cfg)).epsilon(1e-14));
  CHECK_THROWS(DiagonalSymplectic{{2.0, 4.0}}.validate());

  rng::SplitMix64 g(4);
  const auto f1 = random_hermite_vector(g, 2, 4, 6), f2 = random_hermite_vector(g, 2, 4, 6);
  const double sorted = torus_averaged_coeff_sq(DiagonalSymplectic{{8.0, 2.0}}, f1, f2, cfg);
  CHECK(sorted > 0.0);
  // swapping the two coordinates of both vectors and of lambda leaves the value alone
  auto swap = [](const HermiteVector& v) {
    HermiteVector o;
    for (const auto& [beta, a] : v.entries) o.entries.emplace_back(HermiteMultiIndex{beta[1], beta[0]}, a);
    return o;
  };
  const double lambdas[] = {2.0, 8.0};
  CHECK(torus_averaged_coeff_sq_any_order(lambdas, swap(f1), swap(f2), cfg) == doctest::Approx(sorted).epsilon(1e-13));

  CHECK(schrodinger_singular_value(0.0) == 1.0);
  CHECK(std::fabs(schrodinger_singular_value(1.0) - (1 + std::sqrt(2.0))) <= 1e-12);
  CHECK(std::fabs(schrodinger_singular_value(1e3) / 2e3 - 1.0) <= 1e-5);
  const double l5 = schrodinger_singular_value(5.0);
  CHECK(std::fabs(l5 * (1.0 / l5) - 1.0) <= 1e-15);
  CHECK(std::fabs(l5 * l5 - (1 + 50 + 2 * std::sqrt(625.0 + 25.0))) <= 1e-10);

  CHECK(dispersive_ratio(1, 0.0, basis(0), basis(0), cfg) <= 1.0 + 1e-9);
  const double a = dispersive_ratio(1, 5.0, basis(0), basis(0), cfg);
  const double c = dispersive_ratio(1, 5.0, basis(0), basis(0), cfg.tightened(10));
  CHECK(std::fabs(a - c) <= 1e-6 * c);
  CHECK(dispersive_ratio(2, -2.0, f1, f2, cfg) == dispersive_ratio(2, 2.0, f1, f2, cfg));
}
