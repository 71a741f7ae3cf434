#include <cmath>

#include "doctest.h"
#include "matcoef/discrete.hpp"

using namespace matcoef;
using namespace matcoef::discrete;
using matcoef::quad::QuadConfig;

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(DiscreteParams::from_offsets(3, Sign::plus, 0, 4).validate());
  CHECK(DiscreteParams::from_offsets(3, Sign::plus, 1, 0).m.value() == 2.5);
  CHECK(DiscreteParams::from_offsets(3, Sign::minus, 1, 0).m.value() == -2.5);
  DiscreteParams p;
  p.ell = 2;
  p.m = HalfInt{1};  // 1/2 is not in h + N for h = 1
  p.n = HalfInt{2};
  CHECK_THROWS(p.validate());
  CHECK_THROWS(HalfInt::from_double(0.3));
  CHECK(HalfInt::from_double(-1.5).twice == -3);
  CHECK_THROWS(coeff_discrete(DiscreteParams::from_offsets(2, Sign::plus, 0, 0), -0.1));
}

TEST_CASE("lowest K-type closed form") {
  for (int ell = 1; ell <= 6; ++ell)
    for (double r : {0.0, 0.3, 2.0, 6.0}) {
      const auto p = DiscreteParams::from_offsets(ell, Sign::plus, 0, 0);
      CHECK(coeff_discrete(p, r) == doctest::Approx(std::pow(std::cosh(r), -ell)).epsilon(1e-13));
    }
  const auto p = DiscreteParams::from_offsets(1, Sign::plus, 0, 0);
  CHECK(std::fabs(discrete_bound_ratio(p, 2.0) - 1.0) <= 1e-12);
  for (double r = 0; r <= 6; r += 0.25) CHECK(std::fabs(discrete_bound_ratio(p, r) - 1.0) <= 1e-12);
}

TEST_CASE("identity element and bound") {
  for (int ell : {1, 4})
    for (int dm = 0; dm < 5; ++dm)
      for (int dn = 0; dn < 5; ++dn) {
        const auto p = DiscreteParams::from_offsets(ell, Sign::plus, dm, dn);
        CHECK(coeff_discrete(p, 0.0) == (dm == dn ? 1.0 : 0.0));
      }
  const double q = discrete_bound_ratio(DiscreteParams::from_offsets(4, Sign::plus, 3, 5), 2.5);
  CHECK(q >= 0.0);
  CHECK(q <= 1.0);
}

TEST_CASE("transpose symmetry, minus series and the gamma route") {
  for (int ell = 1; ell <= 5; ++ell)
    for (int dm = 0; dm <= 8; dm += 2)
      for (int dn = 0; dn <= 9; dn += 3)
        for (double r : {0.2, 1.0, 3.5}) {
          const auto p = DiscreteParams::from_offsets(ell, Sign::plus, dm, dn);
          const auto t = DiscreteParams::from_offsets(ell, Sign::plus, dn, dm);
          const double v = coeff_discrete(p, r);
          CHECK(std::fabs(std::fabs(v) - std::fabs(coeff_discrete(t, r))) <= 1e-14);
          const auto q = DiscreteParams::from_offsets(ell, Sign::minus, dm, dn);
          const double sign = ((dn - dm) % 2 == 0) ? 1.0 : -1.0;
          CHECK(coeff_discrete(q, r) == doctest::Approx(sign * v).epsilon(1e-14));
          const double g = coeff_discrete_gamma_route(p, r);
          CHECK(std::fabs(g - v) <= 1e-10 * std::max(std::fabs(v), 1e-300) + 1e-300);
        }
}

TEST_CASE("formal degree") {
  QuadConfig cfg;
  CHECK(formal_degree_integral(DiscreteParams::from_offsets(2, Sign::plus, 0, 0), cfg).value.real() ==
        doctest::Approx(1.0).epsilon(1e-8));
  CHECK(formal_degree_integral(DiscreteParams::from_offsets(4, Sign::plus, 0, 0), cfg).value.real() ==
        doctest::Approx(1.0 / 3).epsilon(1e-8));
  CHECK(formal_degree_integral(DiscreteParams::from_offsets(4, Sign::plus, 0, 3), cfg).value.real() ==
        doctest::Approx(1.0 / 3).epsilon(1e-6));
  CHECK(formal_degree_integral(DiscreteParams::from_offsets(3, Sign::minus, 7, 2), cfg).value.real() ==
        doctest::Approx(0.5).epsilon(1e-6));
  CHECK_THROWS(formal_degree_integral(DiscreteParams::from_offsets(1, Sign::plus, 0, 0), cfg));
}
