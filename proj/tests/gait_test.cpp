#include <doctest.h>

#include <cmath>

#include "hamrsim/errors.hpp"
#include "hamrsim/gait.hpp"

using namespace hamrsim;

TEST_CASE("phase tables") {
  const auto trot = gait_phase_table(GaitName::Trot);
  CHECK(trot[0] == 0.0);   // FL
  CHECK(trot[3] == 0.0);   // RR
  CHECK(trot[1] == 0.5);   // FR
  CHECK(trot[2] == 0.5);   // RL

  const auto pronk = gait_phase_table(GaitName::Pronk);
  for (double p : pronk) CHECK(p == 0.0);

  const auto bound = gait_phase_table(GaitName::Bound);
  CHECK(bound[0] == 0.0);
  CHECK(bound[1] == 0.0);
  CHECK(bound[2] == 0.5);
  CHECK(bound[3] == 0.5);

  CHECK_THROWS_AS(gait_phase_table("jump"), DomainError);
  CHECK_THROWS_AS(gait_phase_table("gallop"), DomainError);
}

TEST_CASE("synthesized drive waveforms") {
  GaitProgram trot = make_gait_program(GaitName::Trot, 10.0, 200.0);

  SUBCASE("all channels bounded by [0, V] on a dense grid") {
    for (int i = 0; i < 2000; ++i) {
      const double t = i * (1.0 / 10.0) / 2000.0;
      for (double v : synthesize_drive(trot, t)) {
        CHECK(v >= 0.0);
        CHECK(v <= 200.0);
      }
    }
  }
  SUBCASE("extremes reach 0 and V") {
    // FL swing phase 0: sin = 1 at f t = 0.25, sin = -1 at f t = 0.75.
    CHECK(drive_voltage(trot, Leg::FrontLeft, false, 0.025) ==
          doctest::Approx(200.0).epsilon(1e-12));
    CHECK(drive_voltage(trot, Leg::FrontLeft, false, 0.075) ==
          doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("periodicity") {
    for (int i = 0; i < 50; ++i) {
      const double t = 0.013 * i;
      const auto a = synthesize_drive(trot, t);
      const auto b = synthesize_drive(trot, t + 0.1);
      for (int ch = 0; ch < 8; ++ch) CHECK(a[ch] == doctest::Approx(b[ch]).epsilon(1e-12));
    }
  }
  SUBCASE("trot swing channels are half a period apart") {
    for (int i = 0; i < 50; ++i) {
      const double t = 0.007 * i;
      CHECK(drive_voltage(trot, Leg::FrontLeft, false, t) ==
            doctest::Approx(drive_voltage(trot, Leg::FrontRight, false, t + 0.05))
                .epsilon(1e-12));
    }
  }
  SUBCASE("pronk swing channels are identical") {
    GaitProgram pronk = make_gait_program(GaitName::Pronk, 25.0, 180.0);
    for (int i = 0; i < 50; ++i) {
      const double t = 0.003 * i;
      const auto v = synthesize_drive(pronk, t);
      CHECK(v[channel_index(Leg::FrontLeft, false)] ==
            v[channel_index(Leg::RearRight, false)]);
      CHECK(v[channel_index(Leg::FrontRight, true)] ==
            v[channel_index(Leg::RearLeft, true)]);
    }
  }
  SUBCASE("lift leads swing by a quarter cycle") {
    // At the default lead, lift(t) equals swing(t + lead/f).
    for (int i = 0; i < 50; ++i) {
      const double t = 0.004 * i;
      CHECK(drive_voltage(trot, Leg::FrontLeft, true, t) ==
            doctest::Approx(drive_voltage(trot, Leg::FrontLeft, false, t + 0.025))
                .epsilon(1e-12));
    }
  }
  SUBCASE("uniform phase shift is a time shift") {
    GaitProgram shifted = trot;
    const double c = 0.3;
    for (auto& p : shifted.leg_phase) p = std::fmod(p + c, 1.0);
    for (int i = 0; i < 50; ++i) {
      const double t = 0.009 * i;
      const auto a = synthesize_drive(shifted, t);
      const auto b = synthesize_drive(trot, t + c / trot.frequency_hz);
      for (int ch = 0; ch < 8; ++ch) CHECK(a[ch] == doctest::Approx(b[ch]).epsilon(1e-12));
    }
  }
}

TEST_CASE("gait validation") {
  GaitProgram p = make_gait_program(GaitName::Trot, 160.0, 200.0);
  CHECK(validate_gait(p, 200.0).empty());

  p.leg_phase[2] = 1.2;
  CHECK(!validate_gait(p, 200.0).empty());

  GaitProgram zero_f = make_gait_program(GaitName::Pronk, 1.0, 200.0);
  zero_f.frequency_hz = 0.0;
  CHECK(!validate_gait(zero_f, 200.0).empty());

  GaitProgram over_v = make_gait_program(GaitName::Pronk, 10.0, 250.0);
  CHECK(!validate_gait(over_v, 200.0).empty());
}
