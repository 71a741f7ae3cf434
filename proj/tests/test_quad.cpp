#include <cmath>
#include <numbers>

#include "doctest.h"
#include "matcoef/quad.hpp"
#include "matcoef/specfun.hpp"

using namespace matcoef::quad;
using matcoef::specfun::laguerre_fn;

namespace {

constexpr double pi = std::numbers::pi;

bool close(cplx got, cplx want, double tol) { return std::abs(got - want) <= tol * std::max(1.0, std::abs(want)); }

double w0(cplx z) { return 2.0 / std::sqrt(2 * pi) * laguerre_fn(0, 0, 2 * std::norm(z)); }
double w1(cplx z) { return -2.0 / std::sqrt(2 * pi) * laguerre_fn(1, 0, 2 * std::norm(z)); }

}  // namespace

TEST_CASE("config validation") {
  QuadConfig c;
  CHECK_NOTHROW(c.validate());
  c.rel_tol = 0;
  CHECK_THROWS(c.validate());
  c = {};
  c.max_doublings = 0;
  CHECK_THROWS(c.validate());
  CHECK(QuadConfig{}.tightened(10).rel_tol == doctest::Approx(1e-10));
}

TEST_CASE("gauss-legendre rule") {
  const auto r = gauss_legendre(16);
  double sw = 0;
  for (double w : r.weights) sw += w;
  CHECK(sw == doctest::Approx(2.0).epsilon(1e-15));
  // exact for degree 31
  double s = 0;
  for (int i = 0; i < 16; ++i) s += r.weights[i] * std::pow(r.nodes[i], 30);
  CHECK(s == doctest::Approx(2.0 / 31).epsilon(1e-14));
}

TEST_CASE("integrate_periodic") {
  QuadConfig cfg;
  auto r = integrate_periodic([](double) { return cplx(1); }, cfg);
  CHECK(close(r.value, 2 * pi, 1e-14));
  CHECK(r.nodes_used > 0);
  r = integrate_periodic([](double t) { return std::exp(cplx(0, t)); }, cfg);
  CHECK(std::abs(r.value) < 1e-14);
  r = integrate_periodic([](double t) { return std::exp(cplx(0, 3 * t)) * std::exp(cplx(0, -3 * t)); }, cfg);
  CHECK(close(r.value, 2 * pi, 1e-14));
  // Trigonometric polynomials of degree < N/2 with N = 4(1+osc) initial nodes.
  cfg.oscillation_scale = 9;  // N0 = 40
  r = integrate_periodic(
      [](double t) { return 2.0 + std::cos(19 * t) + cplx(0, 1) * std::sin(7 * t) + std::exp(cplx(0, -12 * t)); },
      cfg);
  CHECK(std::abs(r.value - 4 * pi) < 1e-14);
  // Smooth non-polynomial: int exp(cos t) = 2 pi I0(1)
  r = integrate_periodic([](double t) { return cplx(std::exp(std::cos(t))); }, QuadConfig{});
  CHECK(close(r.value, 2 * pi * std::cyl_bessel_i(0.0, 1.0), 1e-12));
}

TEST_CASE("integrate_line examples") {
  QuadConfig cfg;
  auto r = integrate_line([](double t) { return cplx(std::exp(-t * t)); }, cfg);
  CHECK(close(r.value, std::sqrt(pi), 1e-10));
  r = integrate_line([](double t) { return cplx(1.0 / (1 + t * t)); }, cfg);
  CHECK(close(r.value, pi, 1e-10));
  CHECK(r.err_estimate <= 1e-9 * pi);

  auto f = [](double t) {
    const double e2 = std::exp(-2.0);
    return 1.0 / std::sqrt((e2 + t * t) * (1 + e2 * t * t));
  };
  r = integrate_line([&](double t) { return cplx(f(t)); }, cfg);
  // Brute-force trapezoid in t = sinh(u) with 10^6 nodes on [-40, 40].
  const int N = 1000000;
  const double U = 40, h = 2 * U / N;
  double brute = 0;
  for (int i = 0; i <= N; ++i) {
    const double u = -U + i * h;
    brute += (i == 0 || i == N ? 0.5 : 1.0) * f(std::sinh(u)) * std::cosh(u);
  }
  brute *= h;
  CHECK(std::abs(r.value - brute) <= 1e-8 * brute);
  // Elliptic closed form 2 K(sqrt(1 - e^{-4})).
  CHECK(std::abs(r.value - 2 * std::comp_ellint_1(std::sqrt(1 - std::exp(-4.0)))) <= 1e-9 * brute);
}

TEST_CASE("integrate_line oscillatory and failure") {
  QuadConfig cfg;
  cfg.oscillation_scale = 30;
  auto r = integrate_line([](double t) { return std::exp(cplx(0, 30 * t)) * std::exp(-t * t); }, cfg);
  CHECK(std::abs(r.value - std::sqrt(pi) * std::exp(-225.0)) < 1e-11);
  // Not integrable: the tail never becomes negligible.
  CHECK_THROWS_AS(integrate_line([](double t) { return cplx(1.0 / (1 + std::fabs(t))); }, QuadConfig{}),
                  QuadratureError);
  try {
    QuadConfig tiny;
    tiny.max_doublings = 1;
    tiny.rel_tol = 1e-300;
    tiny.abs_tol = 1e-300;
    integrate_line([](double t) { return cplx(std::exp(-t * t)); }, tiny);
    FAIL("expected QuadratureError");
  } catch (const QuadratureError& e) {
    CHECK(close(e.best().value, std::sqrt(pi), 1e-10));
    CHECK(e.best().nodes_used > 0);
  }
}

TEST_CASE("integrate_halfline examples") {
  QuadConfig cfg;
  auto r = integrate_halfline([](double x) { return cplx(std::exp(-x)); }, cfg);
  CHECK(close(r.value, 1.0, 1e-10));
  r = integrate_halfline([](double x) { return cplx(std::exp(-x) / std::sqrt(x)); }, cfg);
  CHECK(close(r.value, std::sqrt(pi), 1e-10));
  r = integrate_halfline([](double x) { return cplx(std::pow(laguerre_fn(3, 0, x), 2)); }, cfg);
  CHECK(close(r.value, 1.0, 1e-10));
}

TEST_CASE("integrate_plane examples") {
  QuadConfig cfg;
  auto r = integrate_plane([](cplx z) { return cplx(std::exp(-std::norm(z))); }, cfg);
  CHECK(close(r.value, pi, 1e-9));
  r = integrate_plane([](cplx z) { return cplx(w0(z) * w0(z)); }, cfg);
  CHECK(close(r.value, 1.0, 1e-9));
  r = integrate_plane([](cplx z) { return cplx(w0(z) * w1(z)); }, cfg);
  CHECK(std::abs(r.value) < 1e-10);
}

TEST_CASE("rotation invariance of the plane engine") {
  QuadConfig cfg;
  auto f = [](cplx z) { return cplx(std::exp(-std::norm(z - cplx(0.3, 0)) * 1.5) * (1 + std::real(z))); };
  const cplx rot = std::polar(1.0, 0.7);
  // |f(rot z)| differs pointwise but the integral of a rotated function is the same.
  auto a = integrate_plane(f, cfg);
  auto b = integrate_plane([&](cplx z) { return f(rot * z); }, cfg);
  CHECK(std::abs(a.value - b.value) <= a.err_estimate + b.err_estimate + 1e-12);
  auto g = [](cplx z) { return cplx(std::exp(-std::abs(z))) * std::exp(cplx(0, std::arg(z))); };
  auto c = integrate_plane([&](cplx z) { return std::abs(g(z)); }, cfg);
  auto d = integrate_plane([&](cplx z) { return std::abs(g(rot * z)); }, cfg);
  CHECK(std::abs(c.value - d.value) <= std::max(c.err_estimate + d.err_estimate, 1e-9 * std::abs(c.value)));
}

TEST_CASE("halving rel_tol stays within the reported error") {
  auto f = [](double t) { return std::exp(cplx(0, 3 * t)) / (1 + t * t); };
  QuadConfig cfg;
  cfg.rel_tol = 1e-6;
  cfg.abs_tol = 1e-8;
  cfg.oscillation_scale = 3;
  auto coarse = integrate_line(f, cfg);
  cfg.rel_tol /= 2;
  auto fine = integrate_line(f, cfg);
  CHECK(std::abs(fine.value - coarse.value) <= coarse.err_estimate);
  CHECK(std::abs(fine.value - pi * std::exp(-3.0)) <= fine.err_estimate + 1e-8);

  auto g = [](double x) { return cplx(std::exp(-x) * std::cos(x) / std::sqrt(x)); };
  QuadConfig hc;
  hc.rel_tol = 1e-5;
  auto hc1 = integrate_halfline(g, hc);
  hc.rel_tol /= 2;
  auto hc2 = integrate_halfline(g, hc);
  CHECK(std::abs(hc1.value - hc2.value) <= hc1.err_estimate);
}

TEST_CASE("batched engines agree with scalar ones") {
  QuadConfig cfg;
  LineAccumulator<double> acc = [](double t, double w, std::span<double> s) {
    for (std::size_t k = 0; k < s.size(); ++k) s[k] += w * std::exp(-(k + 1.0) * t * t);
  };
  auto b = integrate_line_batch<double>(5, acc, cfg);
  CHECK(b.converged);
  for (int k = 0; k < 5; ++k) CHECK(b.value[k] == doctest::Approx(std::sqrt(pi / (k + 1))).epsilon(1e-10));

  PlaneAccumulator<double> pacc = [](double x, double y, double w, std::span<double> s) {
    s[0] += w * std::exp(-x * x - 2 * y * y);
  };
  auto p = integrate_plane_batch<double>(1, pacc, cfg, {1.0, Side::positive}, {1.0, Side::positive});
  CHECK(p.converged);
  CHECK(p.value[0] == doctest::Approx(pi / (4 * std::sqrt(2.0))).epsilon(1e-10));
}
