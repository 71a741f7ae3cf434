#include <cmath>
#include <numbers>

#include "doctest.h"
#include "matcoef/ktype_average.hpp"
#include "matcoef/principal.hpp"

using namespace matcoef;
using namespace matcoef::ktype;

TEST_CASE("index sets") {
  CHECK(index_allowed(Principal{1.0, 1}, -3));
  CHECK_FALSE(index_allowed(Principal{1.0, 1}, 2));
  CHECK(index_allowed(Complementary{0.2}, -20));
  CHECK_FALSE(index_allowed(Complementary{0.2}, 3));
  CHECK(index_allowed(DiscretePlus{3}, 7));
  CHECK_FALSE(index_allowed(DiscretePlus{3}, 1));
  CHECK_FALSE(index_allowed(DiscretePlus{3}, 4));
  CHECK(index_allowed(DiscreteMinus{2}, -4));
  CHECK_FALSE(index_allowed(DiscreteMinus{2}, 2));
  CHECK(index_pool(DiscretePlus{2}, 10) == std::vector<int>{2, 4, 6, 8, 10});
  KTypeVector v{{{2, 1.0}, {2, 0.5}}};
  CHECK_THROWS(v.validate(DiscretePlus{2}));
}

TEST_CASE("single basis vectors") {
  QuadConfig cfg;
  const RepresentationId rep = Principal{1.5, 0};
  KTypeVector e{{{4, 1.0}}}, f{{{-2, 1.0}}};
  const auto diag = coeff_general(rep, e, f, KAKElement{0, 2.0, 0}, cfg);
  principal::PrincipalParams p;
  p.s = 1.5;
  p.mu = 4;
  p.nu = -2;
  const auto direct = principal::coeff_principal(p, 2.0, cfg);
  CHECK(std::abs(diag.value - direct.value) <= 1e-12);
  CHECK(averaged_coeff_sq(rep, e, f, 2.0, cfg) == doctest::Approx(std::norm(direct.value)).epsilon(1e-12));

  for (const RepresentationId& r : {RepresentationId{Principal{0.7, 1}}, RepresentationId{DiscreteMinus{3}}}) {
    const int mu = std::holds_alternative<Principal>(r) ? 5 : -7;
    KTypeVector u{{{mu, 1.0}}};
    const auto v = coeff_general(r, u, u, KAKElement{0.4, 0.0, -1.1}, cfg);
    CHECK(std::abs(v.value - std::polar(1.0, mu * (0.4 - 1.1))) <= 1e-9);
  }
}

TEST_CASE("basis-sum average equals direct torus quadrature") {
  QuadConfig cfg;
  rng::SplitMix64 g(11);
  const RepresentationId reps[] = {Principal{1.0, 0}, Complementary{0.25}, DiscretePlus{2}};
  const int bounds[] = {41, 20, 82};
  for (int k = 0; k < 3; ++k) {
    const auto pool = index_pool(reps[k], bounds[k]);
    for (double r : {0.5, 2.0}) {
      const auto f = random_vector(g, pool, 10), h = random_vector(g, pool, 10);
      const auto mus = f.indices(), nus = h.indices();
      const auto t = coefficient_table(reps[k], mus, nus, r, cfg);
      const double sum = averaged_coeff_sq(t, f, h);
      const auto direct = averaged_coeff_sq_direct(t, f, h, cfg);
      CHECK(std::fabs(sum - direct.value.real()) <= 1e-6 * sum);
    }
  }
}

TEST_CASE("scaling, truncation and Cauchy-Schwarz") {
  QuadConfig cfg;
  rng::SplitMix64 g(5);
  const RepresentationId rep = DiscretePlus{2};
  const auto pool = index_pool(rep, 40);
  const auto f = random_vector(g, pool, 5), h = random_vector(g, pool, 5);
  const double base = averaged_coeff_sq(rep, f, h, 1.3, cfg);
  const cplx a(0.3, -2.0), b(1.7, 0.4);
  const double scaled = averaged_coeff_sq(rep, f.scaled(a), h.scaled(b), 1.3, cfg);
  CHECK(scaled == doctest::Approx(std::norm(a) * std::norm(b) * base).epsilon(1e-13));

  KTypeVector part;
  double prev = 0.0;
  for (const auto& e : f.entries) {
    part.entries.push_back(e);
    const double v = averaged_coeff_sq(rep, part, h, 1.3, cfg);
    CHECK(v >= prev);
    prev = v;
  }
  CHECK(prev == doctest::Approx(base).epsilon(1e-13));

  for (double th : {0.0, 0.9, -2.5}) {
    const auto c = coeff_general(rep, f, h, KAKElement{th, 0.8, 1.0 - th}, cfg);
    CHECK(std::abs(c.value) <= std::sqrt(f.norm_sq() * h.norm_sq()) + c.err_estimate + 1e-12);
  }
}

TEST_CASE("averages respect the series bounds") {
  QuadConfig cfg;
  rng::SplitMix64 g(3);
  const RepresentationId rep = DiscretePlus{3};
  const auto pool = index_pool(rep, 30);
  for (double r : {0.5, 3.0}) {
    const auto f = random_vector(g, pool, 6), h = random_vector(g, pool, 6);
    CHECK(averaged_coeff_sq(rep, f, h, r, cfg) <= std::pow(std::cosh(r), -2) * f.norm_sq() * h.norm_sq() * (1 + 1e-12));
  }
}
