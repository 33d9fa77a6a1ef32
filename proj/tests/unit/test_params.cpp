#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "lgf/params.hpp"
#include "lgf/rng.hpp"

TEST_CASE("Q and alpha round-trip through the defining identity") {
  lgf::CounterRng rng(lgf::RngSeed{42, 0});
  for (int i = 0; i < 500; ++i) {
    const int d = 2 + static_cast<int>(rng.uniform01() * 9);
    double g = rng.uniform01() * std::sqrt(2.0 * d);
    if (d == 2) g = std::min(g, 1.999);  // q = 2 exactly has no root in (0,2)
    if (g < 1e-3) g = 1e-3;
    const double q = lgf::derive_q(d, g);
    const double a = lgf::alpha_of_q(q);
    CHECK(2.0 / a + a / 2.0 == doctest::Approx(q).epsilon(1e-12));
    CHECK(a > 0.0);
    CHECK(a < 2.0);
  }
}

TEST_CASE("d = 2 collapses alpha to gamma") {
  for (double g : {0.1, 0.5, 1.0, 1.5, 1.9}) {
    const double a = lgf::alpha_of_q(lgf::derive_q(2, g));
    CHECK(a == doctest::Approx(g).epsilon(1e-12));
  }
}

TEST_CASE("reference values") {
  CHECK(lgf::alpha_of_q(4.5) ==
        doctest::Approx(0.468871125850725).epsilon(1e-14));
  CHECK(lgf::alpha_critical(6) ==
        doctest::Approx(0.635674490391564).epsilon(1e-14));
  CHECK(lgf::alpha_critical(2) == doctest::Approx(2.0).epsilon(1e-14));
  const double a4 = lgf::alpha_of_q(lgf::derive_q(4, 1.0));
  CHECK(lgf::spectral_dimension_formula(4, a4, 0.0) ==
        doctest::Approx(3.895806416477617).epsilon(1e-13));
  CHECK(lgf::chi_bar_formula(4, a4, 0.0) ==
        doctest::Approx(0.947903208238808).epsilon(1e-13));
  // beta = alpha/2 restores the ambient dimension
  CHECK(lgf::spectral_dimension_formula(4, a4, a4 / 2.0) ==
        doctest::Approx(4.0).epsilon(1e-13));
  const double a3 = lgf::alpha_of_q(lgf::derive_q(3, 1.0));
  CHECK(a3 == doctest::Approx(0.627718676730986).epsilon(1e-13));
}

TEST_CASE("half-integer gamma function is exact") {
  CHECK(lgf::gamma_fn(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-15));
  CHECK(lgf::gamma_fn(3.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(lgf::gamma_fn(2.5) ==
        doctest::Approx(0.75 * std::sqrt(M_PI)).epsilon(1e-15));
}

TEST_CASE("domain validation") {
  CHECK_THROWS_AS(lgf::alpha_of_q(2.0), std::domain_error);
  CHECK_THROWS_AS(lgf::derive_q(1, 1.0), std::domain_error);
  CHECK_THROWS_AS(lgf::derive_q(4, 0.0), std::domain_error);
  CHECK_THROWS_AS(lgf::derive_q(4, 3.0), std::domain_error);
  CHECK_THROWS_AS(lgf::Params::make(4, 1.0, 100.0), std::domain_error);
  const lgf::Params p = lgf::Params::make(6, 1.0);
  CHECK(p.c_d == 2);
  CHECK(p.even_only);
  CHECK_FALSE(lgf::Params::make(3, 1.0).even_only);
}
