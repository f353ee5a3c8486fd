#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "dwpap/errors.hpp"
#include "dwpap/quadrature.hpp"

using namespace dwpap;

TEST_CASE("smooth integrands against closed forms") {
  QuadOptions opt;
  CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0, opt) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, opt) ==
        doctest::Approx(2.0).epsilon(1e-11));
  CHECK(integrate([](double x) { return std::exp(-x * x); }, -6.0, 6.0, opt) ==
        doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-11));
}

TEST_CASE("oscillatory integrand with a bounded step") {
  QuadOptions opt;
  opt.max_step = std::numbers::pi / 20.0;  // an eighth of the period of cos(5t)
  double v = integrate([](double x) { return std::cos(5.0 * x); }, 0.0, 10.0 * std::numbers::pi,
                       opt);
  CHECK(std::abs(v) <= 1e-10);
}

TEST_CASE("complex integration") {
  QuadOptions opt;
  auto unit_osc = [](double x) { return std::exp(std::complex<double>(0.0, x)); };
  std::complex<double> full = integrate_c(unit_osc, 0.0, 2.0 * std::numbers::pi, opt);
  CHECK(std::abs(full) <= 1e-10);
  std::complex<double> quarter = integrate_c(unit_osc, 0.0, std::numbers::pi / 2.0, opt);
  CHECK(quarter.real() == doctest::Approx(1.0).epsilon(1e-11));
  CHECK(quarter.imag() == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("log-scale integration never leaves log domain") {
  QuadOptions opt;
  // integral of e^x over [0, 100] = e^100 - 1; in log scale ~ 100
  double lg = integrate_log([](double x) { return x; }, 0.0, 100.0, opt);
  double want = 100.0 + std::log1p(-std::exp(-100.0));
  CHECK(lg == doctest::Approx(want).epsilon(1e-10));

  // far past double overflow: integral of e^x over [0, 800]
  double big = integrate_log([](double x) { return x; }, 0.0, 800.0, opt);
  CHECK(big == doctest::Approx(800.0).epsilon(1e-10));

  // identically zero integrand
  double zero = integrate_log(
      [](double) { return -std::numeric_limits<double>::infinity(); }, 0.0, 1.0, opt);
  CHECK(std::isinf(zero));
  CHECK(zero < 0);
}

TEST_CASE("non-finite samples raise an engine error") {
  QuadOptions opt;
  CHECK_THROWS_AS(integrate([](double x) { return 1.0 / x; }, 0.0, 1.0, opt), EngineError);
}
