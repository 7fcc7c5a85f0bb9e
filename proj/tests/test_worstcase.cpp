#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "spikesr/error.hpp"
#include "spikesr/fitting.hpp"
#include "spikesr/worstcase.hpp"

using namespace spikesr;

namespace {

ClusterGeometry pair_geometry(double h) {
  ClusterGeometry g;
  g.p = 2;
  g.d = 2;
  g.h = h;
  g.T = 1.0;
  g.tau = 1.0;
  g.eta = 0.5;
  return g;
}

// Amplitudes (1, -1) at mu -+ h/2.
SpikeTrain pair(double mu, double h) { return SpikeTrain({1.0, -1.0}, {mu - h / 2, mu + h / 2}); }

double taylor_constant(int p) {
  return std::pow(kTwoPi, 2 * p - 1) / std::tgamma(2.0 * p);
}

}  // namespace

TEST_CASE("epsilon zero is the identity") {
  const SpikeTrain f = pair(0.1, 0.02);
  const WorstCaseReport r = worst_case_signal(f, pair_geometry(0.02), 0.0);
  CHECK(r.perturbed == f);
  CHECK(r.node_displacement == 0.0);
  CHECK(r.amplitude_displacement == 0.0);
  CHECK(r.spectral_deviation == 0.0);
  CHECK(verify_spectral_deviation(f, f, 3.0, 100) == 0.0);
}

TEST_CASE("moments below 2p-1 are kept and the last one moves by epsilon") {
  for (double eps : {1e-9, 1e-7, 1e-6}) {
    const WorstCaseReport r = worst_case_signal(pair(0.0, 0.2), pair_geometry(0.2), eps);
    CHECK(r.moment_match_error <= 1e-8 * std::max(1.0, r.moment_scale));
    CHECK(r.last_moment_delta == doctest::Approx(eps).epsilon(1e-6));
    // Independent check on the perturbed train itself (centred at 0).
    const auto& g = r.perturbed;
    const auto& f = pair(0.0, 0.2);
    for (int k = 0; k < 3; ++k)
      CHECK(std::abs(oracle::moment(g.amplitudes(), g.nodes(), k) -
                     oracle::moment(f.amplitudes(), f.nodes(), k)) < 1e-12);
    const cplx d3 = oracle::moment(g.amplitudes(), g.nodes(), 3) - oracle::moment(f.amplitudes(), f.nodes(), 3);
    CHECK(d3.real() == doctest::Approx(eps).epsilon(1e-5));
  }
}

TEST_CASE("antisymmetric pair matches the closed form") {
  for (double omega : {1.0, 10.0, 250.0})
    for (double h : {0.002, 0.05, 0.3})
      for (double frac : {1e-6, 1e-3, 0.3}) {
        const double c = omega * h / 2;  // half-width after the blowup
        const double eps = frac * 2 * c * c * c;
        WorstCaseOptions opts;
        opts.blowup = omega;
        const double mu = 0.25;
        const WorstCaseReport r = worst_case_signal(pair(mu, h), pair_geometry(h), eps, opts);
        const auto o = oracle::pair_worst_case(c, eps);
        const RVector& x = r.perturbed.nodes();
        CHECK(x[0] == doctest::Approx(mu - o.r / omega).epsilon(1e-12));
        CHECK(x[1] == doctest::Approx(mu + o.r / omega).epsilon(1e-12));
        CHECK(r.perturbed.amplitude(0).real() == doctest::Approx(o.beta).epsilon(1e-9));
        CHECK(r.perturbed.amplitude(1).real() == doctest::Approx(-o.beta).epsilon(1e-9));
        CHECK(std::abs(r.perturbed.amplitude(0).imag()) < 1e-12);
        CHECK(r.node_displacement == doctest::Approx((c - o.r) / omega).epsilon(1e-6));
        CHECK(r.center == doctest::Approx(mu));
      }
}

TEST_CASE("epsilon beyond the solvable range") {
  const double h = 0.1;
  const double c = h / 2;
  try {
    worst_case_signal(pair(0.0, h), pair_geometry(h), 2.5 * c * c * c);
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EpsilonTooLarge);
  }
  CHECK_NOTHROW(worst_case_signal(pair(0.0, h), pair_geometry(h), 1.5 * c * c * c));
}

TEST_CASE("invalid input") {
  CHECK_THROWS_AS(worst_case_signal(SpikeTrain({cplx(1, 1), -1.0}, {0.0, 0.1}), pair_geometry(0.1), 1e-6),
                  Error);
  CHECK_THROWS_AS(worst_case_signal(pair(0.0, 0.1), pair_geometry(0.1), -1.0), Error);
  WorstCaseOptions bad;
  bad.blowup = 0.0;
  CHECK_THROWS_AS(worst_case_signal(pair(0.0, 0.1), pair_geometry(0.1), 1e-6, bad), Error);
  ClusterGeometry g = pair_geometry(0.1);
  g.d = 3;
  CHECK_THROWS_AS(worst_case_signal(pair(0.0, 0.1), g, 1e-6), Error);
}

TEST_CASE("non-cluster parameters are untouched") {
  ClusterGeometry g;
  g.p = 2;
  g.d = 4;
  g.h = 0.001;
  g.T = 1.0;
  g.tau = 1.0;
  g.eta = 0.2;
  g.kappa = 2;
  const SpikeTrain f({cplx(0.5, 0.5), 1.0, -1.0, cplx(0.0, 2.0)}, {-0.3, 0.1, 0.101, 0.4});
  WorstCaseOptions opts;
  opts.blowup = 50.0;
  const WorstCaseReport r = worst_case_signal(f, g, 1e-9, opts);
  for (std::size_t j : {0u, 3u}) {
    CHECK(r.perturbed.node(j) == f.node(j));
    CHECK(r.perturbed.amplitude(j) == f.amplitude(j));
  }
  CHECK(r.perturbed.node(1) != f.node(1));
  CHECK(r.center == doctest::Approx(0.1005));
}

TEST_CASE("displacement is linear in epsilon") {
  const double h = 0.1;
  std::vector<double> eps, disp, amp;
  for (double e = 1e-8; e <= 1.0001e-5; e *= std::sqrt(10.0)) {
    const WorstCaseReport r = worst_case_signal(pair(0.0, h), pair_geometry(h), e);
    eps.push_back(e);
    disp.push_back(r.node_displacement);
    amp.push_back(r.amplitude_displacement);
  }
  CHECK(eps.size() == 7);
  const LineFit fx = fit_loglog(eps, disp, 5);
  const LineFit fa = fit_loglog(eps, amp, 5);
  CHECK(fx.slope == doctest::Approx(1.0).epsilon(0.05));
  CHECK(fa.slope == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("spectral deviation follows the leading Taylor term") {
  // For an antisymmetric pair the even moments agree, so the deviation on
  // [-Omega, Omega] is (2 pi Omega)^3 / 3! times the shift of the third
  // moment at bandwidth 1, up to O((Omega h)^2) corrections.
  for (double omega : {1.0, 20.0}) {
    const double h = 0.01 / omega;
    WorstCaseOptions opts;
    opts.blowup = omega;
    opts.grid_points = 1001;
    std::vector<double> eps, dev;
    for (double e : {1e-12, 1e-11, 1e-10, 1e-9}) {
      const WorstCaseReport r = worst_case_signal(pair(0.3, h), pair_geometry(h), e, opts);
      CHECK(r.spectral_deviation / e == doctest::Approx(taylor_constant(2)).epsilon(0.01));
      eps.push_back(e);
      dev.push_back(r.spectral_deviation);
    }
    CHECK(fit_loglog(eps, dev, 4).slope == doctest::Approx(1.0).epsilon(0.05));
  }
}

TEST_CASE("spectral deviation of a shift") {
  const double omega = 5.0;
  for (double delta : {1e-7, 1e-5}) {
    const SpikeTrain one({cplx(0.0, 2.0)}, {0.1});
    const double dev = verify_spectral_deviation(one, shift(one, delta), omega, 1001);
    CHECK(dev == doctest::Approx(kTwoPi * omega * delta * 2.0).epsilon(1e-4));

    const SpikeTrain f({1.0, -0.5, 2.0}, {-0.2, 0.05, 0.3});
    const double dev3 = verify_spectral_deviation(f, shift(f, delta), omega, 1001);
    CHECK(dev3 <= kTwoPi * omega * delta * 3.5 * (1 + 1e-6));
    // |F(F)(s)| (e^{2 pi i s delta} - 1) maximised over the same grid.
    double expect = 0.0;
    for (int i = 0; i < 1001; ++i) {
      const double s = -omega + 2.0 * omega * i / 1000;
      expect = std::max(expect, std::abs(oracle::fourier(f.amplitudes(), f.nodes(), s)) *
                                    2.0 * std::abs(std::sin(kPi * s * delta)));
    }
    CHECK(dev3 == doctest::Approx(expect).epsilon(1e-6));
  }
  CHECK_THROWS_AS(verify_spectral_deviation(pair(0, 0.1), pair(0, 0.1), 1.0, 1), Error);
}

TEST_CASE("displacement probe scaling") {
  for (int p : {2, 3}) {
    const int d = p + 1;
    const double omega = 1.0;
    const double tau = 1.0 / (p - 1);
    std::vector<double> hs;
    for (int i = 0; i < 12; ++i) {
      const double srf = 20.0 * std::pow(50.0, i / 11.0);
      hs.push_back(kTwoPi / (srf * tau * omega));
    }
    const auto rows = displacement_scaling_probe(p, d, hs, omega, ProportionalEpsilon{1e-3});
    REQUIRE(rows.size() == hs.size());
    std::vector<double> srf, kx, ka;
    for (const auto& r : rows) {
      CHECK(r.epsilon == doctest::Approx(1e-3 * std::pow(1.0 / r.srf, 2 * p - 1)));
      CHECK(r.node_factor == doctest::Approx(r.node_displacement * omega / r.epsilon));
      srf.push_back(r.srf);
      kx.push_back(r.node_factor);
      ka.push_back(r.amplitude_factor);
    }
    CHECK(srf.front() == doctest::Approx(20.0));
    CHECK(fit_loglog(srf, kx).slope == doctest::Approx(2.0 * p - 2).epsilon(0.3 / (2 * p - 2)));
    CHECK(fit_loglog(srf, ka).slope == doctest::Approx(2.0 * p - 1).epsilon(0.3 / (2 * p - 1)));
  }
}

TEST_CASE("single-h probe gives one row and no fit") {
  const std::vector<double> hs{0.05};
  const auto rows = displacement_scaling_probe(2, 3, hs, 1.0, FixedEpsilon{1e-10});
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].epsilon == 1e-10);
  CHECK(rows[0].srf == doctest::Approx(kTwoPi / 0.05));
  try {
    fit_loglog(std::vector<double>{rows[0].srf}, std::vector<double>{rows[0].node_factor});
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InsufficientData);
  }
}

TEST_CASE("probe propagates failures") {
  const std::vector<double> hs{0.05, 0.01};
  CHECK_THROWS_AS(displacement_scaling_probe(2, 3, hs, 1.0, FixedEpsilon{1.0}), Error);
}

TEST_CASE("serial and OpenMP paths agree bit for bit") {
  std::vector<double> hs;
  for (int i = 0; i < 16; ++i) hs.push_back(1e-3 * std::pow(100.0, i / 15.0));
  const auto a = displacement_scaling_probe(3, 5, hs, 2.0, ProportionalEpsilon{1e-4}, Execution::Serial);
  const auto b = displacement_scaling_probe(3, 5, hs, 2.0, ProportionalEpsilon{1e-4}, Execution::OpenMP);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].node_displacement == b[i].node_displacement);
    CHECK(a[i].amplitude_displacement == b[i].amplitude_displacement);
  }
  const SpikeTrain f = pair(0.1, 0.01);
  const SpikeTrain g = shift(f, 1e-6);
  CHECK(verify_spectral_deviation(f, g, 30.0, 20001, Execution::Serial) ==
        verify_spectral_deviation(f, g, 30.0, 20001, Execution::OpenMP));
}
