#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "dwpap/bohr.hpp"
#include "dwpap/trig_spec.hpp"

using namespace dwpap;

using namespace std::complex_literals;

TEST_CASE("coefficients of a trig polynomial are recovered exactly") {
  TrigPoly p = parse_trig_text("1 + 2*cos(3*t)");
  CHECK(bohr_transform(p, 3.0)[0] == 1.0 + 0.0i);
  CHECK(bohr_transform(p, -3.0)[0] == 1.0 + 0.0i);
  CHECK(bohr_transform(p, 0.0)[0] == 1.0 + 0.0i);
  CHECK(bohr_transform(p, 2.0)[0] == 0.0 + 0.0i);
  CHECK(bohr_mean_exact(p)[0] == bohr_transform(p, 0.0)[0]);
}

TEST_CASE("the transform is linear in the polynomial") {
  TrigPoly f = parse_trig_text("1 + cos(1*t)");
  TrigPoly g = parse_trig_text("sin(1*t) + cos(2*t)");
  TrigPoly combo = add(f.scale(2.0), g.scale(3.0 + 1.0i));
  for (double lambda : {0.0, 1.0, -1.0, 2.0, 0.5}) {
    std::complex<double> want =
        2.0 * bohr_transform(f, lambda)[0] + (3.0 + 1.0i) * bohr_transform(g, lambda)[0];
    CHECK(std::abs(bohr_transform(combo, lambda)[0] - want) <= 1e-15);
  }
}

TEST_CASE("translation rotates each coefficient by its frequency phase") {
  TrigPoly f = parse_trig_text("1 + cos(1*t) + sin(sqrt2*t)");
  double alpha = 0.83;
  TrigPoly shifted = f.translate(alpha);
  for (double lambda : f.frequencies()) {
    std::complex<double> phase = std::exp(std::complex<double>(0.0, lambda * alpha));
    std::complex<double> want = phase * bohr_transform(f, lambda)[0];
    CHECK(std::abs(bohr_transform(shifted, lambda)[0] - want) <= 1e-15);
  }
}

TEST_CASE("numeric transform recovers on-spectrum coefficients and decays off spectrum") {
  Schedule s;
  TrigPoly p = parse_trig_text("1 + 2*cos(3*t)");
  FunctionHandle h = make_handle(p);

  BohrCoefficient on = bohr_transform(h, 3.0, s);
  CHECK(std::abs(on.value[0] - (1.0 + 0.0i)) <= 1e-3);

  BohrCoefficient at_zero = bohr_transform(h, 0.0, s);
  CHECK(std::abs(at_zero.value[0] - (1.0 + 0.0i)) <= 1e-3);

  // off the spectrum the estimate decays like 1/T
  BohrCoefficient off = bohr_transform(h, 1.3, s);
  CHECK(off.curve.verdict.kind == LimitKind::ConvergesToZero);
  CHECK(off.curve.verdict.decay_exponent >= 0.8);
}

TEST_CASE("spectrum scan keeps exactly the frequencies above threshold") {
  TrigPoly p = parse_trig_text("1 + 2*cos(3*t) + 0.5*sin(sqrt2*t)");
  std::vector<double> grid{-3.0, -std::numbers::sqrt2, -1.0, 0.0, 1.0, std::numbers::sqrt2, 2.0,
                           3.0};
  SpectrumSet set = bohr_spectrum_scan(p, grid, 1e-6);
  REQUIRE(set.points.size() == 5);  // 0, +-sqrt2, +-3
  CHECK(set.points.front().lambda == -3.0);
  CHECK(set.points.back().lambda == 3.0);
  for (const SpectrumPoint& pt : set.points) CHECK(pt.magnitude > 1e-6);

  // a tighter threshold removes the small sine pair
  SpectrumSet tight = bohr_spectrum_scan(p, grid, 0.4);
  CHECK(tight.points.size() == 3);
}

TEST_CASE("numeric scan matches the exact scan on a trig input") {
  Schedule s;
  TrigPoly p = parse_trig_text("2 + cos(1*t)");
  std::vector<double> grid{0.0, 1.0};
  SpectrumSet exact = bohr_spectrum_scan(p, grid, 1e-6);
  SpectrumSet numeric = bohr_spectrum_scan(make_handle(p), grid, 1e-3, s);
  REQUIRE(exact.points.size() == numeric.points.size());
  for (std::size_t i = 0; i < exact.points.size(); ++i)
    CHECK(std::abs(exact.points[i].value[0] - numeric.points[i].value[0]) <= 5e-3);
}

TEST_CASE("sup error reports the largest pointwise gap on a grid") {
  TrigPoly p = parse_trig_text("cos(1*t)");
  FunctionHandle f = parse_function_spec("cos(1*t) ++ lorentz");
  std::vector<double> grid{0.0, 1.0, 2.0, 5.0};
  // the perturbation is largest at t = 0 where it equals 1
  CHECK(sup_error(f, p, grid) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sup_error(make_handle(p), p, grid) <= 1e-12);
}
