#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "hamrsim/errors.hpp"
#include "hamrsim/sensing.hpp"

using namespace hamrsim;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

ElectricalModel sample_model() { return {0.9, 160.0, 3.8}; }

}  // namespace

TEST_CASE("instantaneous current terms") {
  const ElectricalModel e = sample_model();
  // Purely resistive leakage at constant voltage.
  CHECK(instantaneous_current(e, 200.0, 0.0, 0.0) ==
        doctest::Approx(200.0 / 160e6).epsilon(1e-12));
  // Pure motional current at 1 mm/s.
  CHECK(instantaneous_current(e, 0.0, 0.0, 1.0) == doctest::Approx(3.8e-6).epsilon(1e-12));
}

TEST_CASE("series forward model") {
  const ElectricalModel e = sample_model();
  const double f = 160.0, dt = 1.0 / (400.0 * f);
  const int n = 4000;

  SUBCASE("capacitive amplitude matches the analytic derivative") {
    ElectricalModel cap_only = e;
    cap_only.resistance_mohm = 1e12;  // effectively open leakage path
    std::vector<double> v(n), qd(n, 0.0);
    for (int i = 0; i < n; ++i) v[i] = 30.0 * std::sin(kTwoPi * f * i * dt);
    const auto current = piezo_current(cap_only, v, qd, dt);
    double peak = 0;
    for (int i = 1; i + 1 < n; ++i) peak = std::max(peak, std::abs(current[i]));
    const double expected = kTwoPi * f * cap_only.capacitance_nf * 1e-9 * 30.0;
    CHECK(peak == doctest::Approx(expected).epsilon(1e-4));
  }
  SUBCASE("linearity: doubling voltage and velocity doubles current") {
    std::vector<double> v(n), qd(n), v2(n), qd2(n);
    for (int i = 0; i < n; ++i) {
      v[i] = 50.0 + 40.0 * std::sin(kTwoPi * f * i * dt);
      qd[i] = 2.0 * std::cos(kTwoPi * f * i * dt);
      v2[i] = 2 * v[i];
      qd2[i] = 2 * qd[i];
    }
    const auto i1 = piezo_current(e, v, qd, dt);
    const auto i2 = piezo_current(e, v2, qd2, dt);
    for (int i = 0; i < n; ++i) CHECK(i2[i] == doctest::Approx(2 * i1[i]).epsilon(1e-12));
  }
  SUBCASE("length mismatch rejected") {
    std::vector<double> v(10, 0.0), qd(9, 0.0);
    CHECK_THROWS_AS(piezo_current(e, v, qd, dt), DomainError);
  }
}

TEST_CASE("velocity recovery is the exact algebraic inverse at interior samples") {
  const ElectricalModel e = sample_model();
  const double f = 120.0, dt = 1.0 / (256.0 * f);
  const int n = 2048;
  std::vector<double> v(n), qd(n);
  for (int i = 0; i < n; ++i) {
    v[i] = 100.0 * (1.0 + std::sin(kTwoPi * f * i * dt));
    qd[i] = 15.0 * std::cos(kTwoPi * f * i * dt) + 3.0 * std::sin(kTwoPi * 3 * f * i * dt);
  }
  SenseRecord rec{dt, v, piezo_current(e, v, qd, dt)};
  const auto est = estimate_velocity(e, rec);
  for (int i = 1; i + 1 < n; ++i) {
    CHECK(est[i] == doctest::Approx(qd[i]).epsilon(1e-9));
  }

  SUBCASE("zero record gives zero velocity") {
    SenseRecord zero{dt, std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
    for (double x : estimate_velocity(e, zero)) CHECK(x == 0.0);
  }
}

TEST_CASE("position estimation") {
  SUBCASE("zero corner integrates a constant velocity into a ramp") {
    const double dt = 1e-4;
    std::vector<double> vel(1000, 2.5);
    const auto p = estimate_position(vel, dt, 0.0);
    CHECK(p.back() == doctest::Approx(2.5 * 999 * dt).epsilon(1e-9));
  }
  SUBCASE("sinusoid amplitude matches the analytic integral within 1%") {
    const double f = 160.0, corner = 10.0, dt = 1.0 / (2048.0 * f);
    const int n = 1 << 16;
    std::vector<double> vel(n);
    for (int i = 0; i < n; ++i) vel[i] = 7.0 * std::sin(kTwoPi * f * i * dt);
    const auto p = estimate_position(vel, dt, corner);
    double lo = 1e300, hi = -1e300;
    for (int i = n / 2; i < n; ++i) {
      lo = std::min(lo, p[i]);
      hi = std::max(hi, p[i]);
    }
    const double amplitude = 0.5 * (hi - lo);
    CHECK(amplitude == doctest::Approx(7.0 / (kTwoPi * f)).epsilon(0.01));
  }
  SUBCASE("zero-mean periodic velocity stays bounded over 1e4 cycles") {
    const double f = 100.0, dt = 1.0 / (64.0 * f);
    const int cycles = 10000, n = 64 * cycles;
    std::vector<double> vel(n);
    for (int i = 0; i < n; ++i) {
      vel[i] = std::sin(kTwoPi * f * i * dt) + 0.4 * std::sin(kTwoPi * 2 * f * i * dt + 0.3);
    }
    const auto p = estimate_position(vel, dt, f / 16.0);
    const double bound = 3.0 / (kTwoPi * f);
    for (int i = 0; i < n; ++i) CHECK(std::abs(p[i]) < bound);
  }
}
