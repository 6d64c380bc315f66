#include <doctest.h>

#include <cmath>
#include <numbers>

#include "loophull/quadrature.hpp"

using namespace loophull;

TEST_SUITE("quadrature") {

TEST_CASE("int_0^pi sin = 2 to 1e-12") {
  const double v =
      integrate_adaptive([](double u) { return std::sin(u); }, 0.0,
                         std::numbers::pi);
  CHECK(std::abs(v - 2.0) < 1e-12);
}

TEST_CASE("int_0^inf exp(-cosh t) matches a 10x-finer trapezoid oracle") {
  auto f = [](double t) { return std::exp(-std::cosh(t)); };
  const double v = integrate_to_infinity(
      f, 0.0, [&](double T) { return std::exp(-std::cosh(std::min(T, 700.0))); });
  // Brute-force oracle: fixed trapezoid on [0, 40] with 4e6 panels.
  const double T = 40.0;
  const long long n = 4000000;
  const double h = T / n;
  double acc = 0.5 * (f(0.0) + f(T));
  for (long long k = 1; k < n; ++k) acc += f(k * h);
  const double oracle = acc * h;
  CHECK(std::abs(v - oracle) < 1e-10);
}

TEST_CASE("endpoint singularity: int_0^1 u^-1/2 = 2 to 1e-8") {
  const double v = integrate_adaptive(
      [](double u) { return 1.0 / std::sqrt(u); }, 0.0, 1.0);
  CHECK(std::abs(v - 2.0) < 1e-8);
}

TEST_CASE("orientation and the degenerate interval") {
  auto f = [](double u) { return u; };
  CHECK(integrate_adaptive(f, 3.0, 3.0) == 0.0);
  CHECK(integrate_adaptive(f, 1.0, 0.0) == doctest::Approx(-0.5));
}

TEST_CASE("subdivision exhaustion reports the partial estimate") {
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-15;
  cfg.rel_tol = 1e-15;
  cfg.max_subdivisions = 3;
  bool thrown = false;
  try {
    integrate_adaptive([](double u) { return 1.0 / std::sqrt(std::abs(u)); },
                       0.0, 1.0, cfg);
  } catch (const QuadratureError& e) {
    thrown = true;
    CHECK(std::abs(e.partial_estimate - 2.0) < 0.1);
  }
  CHECK(thrown);
}

TEST_CASE("config validation") {
  QuadratureConfig bad;
  bad.abs_tol = 0.0;
  CHECK_THROWS_AS(
      integrate_adaptive([](double) { return 1.0; }, 0.0, 1.0, bad),
      std::invalid_argument);
}

TEST_CASE("tail bound that never drops below the cutoff is an error") {
  CHECK_THROWS_AS(
      integrate_to_infinity([](double) { return 1.0; }, 0.0,
                            [](double) { return 1.0; }),
      QuadratureError);
}

}  // TEST_SUITE
