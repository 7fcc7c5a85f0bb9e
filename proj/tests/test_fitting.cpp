#include <cmath>
#include <random>

#include "doctest.h"
#include "spikesr/error.hpp"
#include "spikesr/fitting.hpp"

using namespace spikesr;

TEST_CASE("fit_line on planted lines") {
  const std::vector<double> x{0, 1, 2, 3};
  const std::vector<double> y{1, 3, 5, 7};
  const LineFit f = fit_line(x, y);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.r2 == doctest::Approx(1.0));
  CHECK(f.residual_std == doctest::Approx(0.0));
  CHECK(f.n == 4);
}

TEST_CASE("fit_loglog on planted power laws") {
  std::vector<double> srf, k2, k3;
  for (int i = 0; i < 20; ++i) {
    const double s = std::pow(10.0, 0.1 * i);
    srf.push_back(s);
    k2.push_back(s * s);
    k3.push_back(7 * s * s * s);
  }
  const LineFit a = fit_loglog(srf, k2);
  CHECK(a.slope == doctest::Approx(2.0));
  CHECK(a.r2 == doctest::Approx(1.0));
  const LineFit b = fit_loglog(srf, k3);
  CHECK(b.slope == doctest::Approx(3.0));
  CHECK(b.intercept == doctest::Approx(std::log(7.0)));
}

TEST_CASE("fit_loglog drops non-positive pairs") {
  std::vector<double> x, y;
  for (int i = 1; i <= 12; ++i) {
    x.push_back(i);
    y.push_back(i * i);
  }
  x.push_back(0.0);
  y.push_back(5.0);
  x.push_back(3.0);
  y.push_back(-1.0);
  const LineFit f = fit_loglog(x, y);
  CHECK(f.n == 12);
  CHECK(f.slope == doctest::Approx(2.0));
}

TEST_CASE("fit failures") {
  try {
    fit_loglog(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2, 3});
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InsufficientData);
  }
  try {
    fit_line(std::vector<double>{2, 2, 2}, std::vector<double>{1, 2, 3});
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateFit);
  }
  CHECK_THROWS_AS(fit_line(std::vector<double>{1, 2}, std::vector<double>{1}), Error);
}

TEST_CASE("noisy line recovers its slope") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> noise(0.0, 0.1);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::vector<double> x, y;
  for (int i = 0; i < 2000; ++i) {
    x.push_back(u(rng));
    y.push_back(-1.5 * x.back() + 4.0 + noise(rng));
  }
  const LineFit f = fit_line(x, y);
  CHECK(f.slope == doctest::Approx(-1.5).epsilon(0.01));
  CHECK(f.residual_std == doctest::Approx(0.1).epsilon(0.1));
}

TEST_CASE("phase boundary on a planted logistic model") {
  // P(success) = sigmoid(2 (log eps_crit - log eps)), log eps_crit = -3 log SRF - 2
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ls(0.0, std::log(1000.0)), le(std::log(1e-14), std::log(1.0)), u(0.0, 1.0);
  std::vector<double> srf, eps;
  std::vector<bool> ok;
  for (int i = 0; i < 4000; ++i) {
    const double s = ls(rng);
    const double e = le(rng);
    const double z = 2.0 * ((-3.0 * s - 2.0) - e);
    srf.push_back(std::exp(s));
    eps.push_back(std::exp(e));
    ok.push_back(u(rng) < 1.0 / (1.0 + std::exp(-z)));
  }
  const PhaseBoundaryFit f = fit_phase_boundary(srf, eps, ok);
  CHECK(f.slope == doctest::Approx(-3.0).epsilon(0.05));
  CHECK(f.intercept == doctest::Approx(-2.0).epsilon(0.3));
  CHECK(f.b_eps < 0.0);
  CHECK(f.n == 4000);
  CHECK(f.success_rate > 0.0);
  CHECK(f.success_rate < 1.0);
}

TEST_CASE("phase boundary degenerate cases") {
  const std::vector<double> srf{1, 2, 3, 4};
  const std::vector<double> eps{1e-3, 1e-2, 1e-1, 1};
  try {
    fit_phase_boundary(srf, eps, {true, true, true, true});
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateFit);
  }
  // Perfectly separable data drives the coefficients to infinity.
  try {
    fit_phase_boundary(srf, eps, {true, true, false, false});
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateFit);
  }
}
