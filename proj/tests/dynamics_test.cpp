#include <doctest.h>

#include <cmath>
#include <numbers>
#include <tuple>

#include "hamrsim/dynamics.hpp"
#include "hamrsim/errors.hpp"
#include "hamrsim/metrics.hpp"
#include "hamrsim/presets.hpp"

using namespace hamrsim;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Ideal rollover kinematics: a foot is in stance while its lift extension is
// above mid-stroke; the body tracks the stance feet with no slip and the
// airborne feet reposition freely. Independent of the simulator.
double rollover_advance_per_cycle(const GaitProgram& p, double swing_stroke_p2p_mm) {
  const int n = 100000;
  const double period = 1.0 / p.frequency_hz;
  const double half_stroke = swing_stroke_p2p_mm / 2.0;
  double advance = 0;
  for (int i = 0; i < n; ++i) {
    const double t = i * period / n;
    double body_velocity = 0;
    int stance = 0;
    for (int leg = 0; leg < 4; ++leg) {
      const double arg = kTwoPi * (p.frequency_hz * t + p.leg_phase[leg]);
      // lift extension above mean <=> cos(arg) > 0 with the quarter-cycle lead
      if (std::cos(arg) > 0) {
        ++stance;
        body_velocity += half_stroke * kTwoPi * p.frequency_hz * std::cos(arg);
      }
    }
    if (stance > 0) advance += body_velocity / stance * (period / n);
  }
  return advance;
}

SimConfig quick_config(double duration_s, double settle_s) {
  SimConfig cfg;
  cfg.duration_s = duration_s;
  cfg.settle_s = settle_s;
  return cfg;
}

}  // namespace

TEST_CASE("actuator step") {
  const RobotSpec jr = hamr_jr();
  const TransmissionModel& m = jr.legs[0].lift.model;
  const double dt = 1e-6;

  SUBCASE("constant voltage settles at the static equilibrium") {
    double q = 0, v = 0;
    for (int i = 0; i < 500000; ++i) {
      std::tie(q, v) = actuator_step(m, q, v, 100.0, 0.0, dt);
    }
    const double expected = m.drive_force_n_v() * 100.0 / m.k_total_n_m;
    CHECK(q == doctest::Approx(expected).epsilon(1e-6));
    CHECK(std::abs(v) < 1e-9);
  }
  SUBCASE("resonant drive amplifies by Q") {
    const double f_n = natural_frequency(m);
    double q = 0, v = 0;
    double peak = 0;
    const long steps = std::lround(1.0 / dt);
    for (long i = 0; i < steps; ++i) {
      const double volt = 50.0 * std::sin(kTwoPi * f_n * i * dt);
      std::tie(q, v) = actuator_step(m, q, v, volt, 0.0, dt);
      if (i > steps / 2) peak = std::max(peak, std::abs(q));
    }
    const double qs_amplitude = m.drive_force_n_v() * 50.0 / m.k_total_n_m;
    CHECK(peak == doctest::Approx(m.quality_factor * qs_amplitude).epsilon(0.02));
  }
  SUBCASE("passive release decays with non-increasing energy") {
    double q = 1e-4, v = 0;
    double energy = 0.5 * m.k_total_n_m * q * q;
    for (int block = 0; block < 100; ++block) {
      for (int i = 0; i < 1000; ++i) {
        std::tie(q, v) = actuator_step(m, q, v, 0.0, 0.0, dt);
      }
      const double e = 0.5 * m.k_total_n_m * q * q + 0.5 * m.effective_mass_kg() * v * v;
      CHECK(e <= energy * (1 + 1e-9));
      energy = e;
    }
    CHECK(energy < 1e-4 * 0.5 * m.k_total_n_m * 1e-8);
  }
  SUBCASE("bad timestep rejected") {
    CHECK_THROWS_AS(actuator_step(m, 0, 0, 0, 0, 0.0), DomainError);
  }
}

TEST_CASE("foot contact force") {
  const RobotSpec jr = hamr_jr();
  LegContactParams params;
  params.curve = jr.legs[0].vertical_stiffness;
  params.serial_compliance = 1.0;
  params.friction_mu = 0.3;
  params.anchor_stiffness_n_m = 800.0;
  params.anchor_damping_n_s_m = 0.1;
  params.stick_velocity_m_s = 1e-4;

  FootState fs;
  fs.natural_length_m = 7.0e-3;
  fs.foot_x_m = 0.0;
  fs.foot_vx_m_s = 0.0;
  fs.foot_vz_m_s = 0.0;

  SUBCASE("airborne foot produces no force") {
    fs.foot_z_m = 0.5e-3;
    const ContactResult r = foot_contact_force(fs, params);
    CHECK(!r.in_contact);
    CHECK(r.normal_n == 0.0);
    CHECK(r.tangential_n == 0.0);
    CHECK(!r.has_anchor);
  }
  SUBCASE("normal force follows the stiffness curve at the compressed height") {
    const double pen = 30e-6;
    fs.foot_z_m = -pen;
    const ContactResult r = foot_contact_force(fs, params);
    const double height_mm = (fs.natural_length_m - pen) * 1e3;
    const double expected = vertical_leg_stiffness(params.curve, height_mm) * pen;
    CHECK(r.in_contact);
    CHECK(r.normal_n == doctest::Approx(expected).epsilon(1e-12));
    CHECK(!r.slip);
  }
  SUBCASE("tangential demand beyond the cone clamps and slips") {
    const double pen = 30e-6;
    fs.foot_z_m = -pen;
    const double n =
        vertical_leg_stiffness(params.curve, (fs.natural_length_m - pen) * 1e3) * pen;
    // anchored spring stretched to demand 1.1 mu N
    fs.has_anchor = true;
    fs.anchor_x_m = -1.1 * params.friction_mu * n / params.anchor_stiffness_n_m;
    const ContactResult r = foot_contact_force(fs, params);
    CHECK(r.slip);
    CHECK(std::abs(r.tangential_n) ==
          doctest::Approx(params.friction_mu * n).epsilon(1e-12));
    // anchor dragged to the cone edge
    CHECK(r.anchor_x_m ==
          doctest::Approx(fs.foot_x_m + r.tangential_n / params.anchor_stiffness_n_m)
              .epsilon(1e-12));
  }
  SUBCASE("stick inside the cone") {
    const double pen = 30e-6;
    fs.foot_z_m = -pen;
    fs.has_anchor = true;
    fs.anchor_x_m = -1e-7;
    const ContactResult r = foot_contact_force(fs, params);
    CHECK(!r.slip);
    CHECK(r.tangential_n ==
          doctest::Approx(-params.anchor_stiffness_n_m * -1e-7 * -1).epsilon(1e-9));
  }
  SUBCASE("series compliance softens the effective spring") {
    const double pen = 30e-6;
    fs.foot_z_m = -pen;
    LegContactParams soft = params;
    soft.serial_compliance = 0.5;
    const ContactResult rigid = foot_contact_force(fs, params);
    const ContactResult compliant = foot_contact_force(fs, soft);
    CHECK(compliant.normal_n < rigid.normal_n);
  }
}

TEST_CASE("simulate: passive settling") {
  RobotSpec jr = hamr_jr();
  GaitProgram off = make_gait_program(GaitName::Pronk, 10.0, 0.0);
  SimConfig cfg = quick_config(2.0, 1.7);
  cfg.initial_body_height_mm = jr.rest_length_mm + 0.5;
  const Trajectory traj = simulate(jr, off, cfg);
  CHECK(std::abs(mean_speed(traj, cfg.settle_s)) < 0.01);
  // settled on its legs, not fallen over
  CHECK(traj.samples.back().body.z_mm > 0.8 * jr.rest_length_mm);
  CHECK(std::abs(traj.samples.back().body.pitch_rad) < 0.05);
}

TEST_CASE("simulate: quasi-static strides match the rollover oracle") {
  RobotSpec jr = hamr_jr();
  jr.friction_mu = 2.0;
  const double stroke =
      quasi_static_leg_displacement(jr.legs[0].swing.model, 200.0, jr.rated_voltage_v);
  SimConfig cfg = quick_config(5.0, 2.0);

  SUBCASE("trot advances two strokes per cycle") {
    GaitProgram trot = make_gait_program(GaitName::Trot, 1.0, 200.0);
    CHECK(rollover_advance_per_cycle(trot, stroke) == doctest::Approx(2.08).epsilon(1e-3));
    const Trajectory traj = simulate(jr, trot, cfg);
    const double advance = mean_speed(traj, cfg.settle_s) / 1.0;
    CHECK(advance ==
          doctest::Approx(rollover_advance_per_cycle(trot, stroke)).epsilon(0.05));
  }
  SUBCASE("advance below the hop onset never exceeds 1.1x the oracle") {
    // Above ~15 Hz the body can no longer track the lift stroke and
    // ballistic hops amplify strides past the quasi-static value, so the
    // bound is checked in the grounded regime.
    for (double f : {5.0, 10.0}) {
      GaitProgram trot = make_gait_program(GaitName::Trot, f, 200.0);
      const Trajectory traj = simulate(jr, trot, quick_config(1.5, 0.5));
      const double advance = mean_speed(traj, 0.5) / f;
      CHECK(advance <= 1.1 * rollover_advance_per_cycle(trot, stroke));
    }
  }
}

TEST_CASE("simulate: determinism and state guards") {
  const RobotSpec jr = hamr_jr();
  GaitProgram trot = make_gait_program(GaitName::Trot, 80.0, 200.0);
  SimConfig cfg = quick_config(0.5, 0.2);

  SUBCASE("bit-identical reruns") {
    const Trajectory a = simulate(jr, trot, cfg);
    const Trajectory b = simulate(jr, trot, cfg);
    REQUIRE(a.samples.size() == b.samples.size());
    for (size_t i = 0; i < a.samples.size(); ++i) {
      CHECK(a.samples[i].body.x_mm == b.samples[i].body.x_mm);
      CHECK(a.samples[i].body.z_mm == b.samples[i].body.z_mm);
      CHECK(a.samples[i].i_amps[3] == b.samples[i].i_amps[3]);
    }
  }
  SUBCASE("too-coarse timestep is rejected up front") {
    SimConfig coarse = cfg;
    coarse.timestep_s = 1e-3;
    CHECK_THROWS_AS(simulate(jr, trot, coarse), DomainError);
  }
  SUBCASE("unstable contact regularization is reported as divergence") {
    RobotSpec sticky = jr;
    sticky.friction_mu = 1e6;  // cone never clamps, the stiff anchor rings
    SimConfig unstable = cfg;
    unstable.timestep_s = 7e-5;  // still inside the drive/resonance bound
    unstable.anchor_stiffness_factor = 5e6;
    GaitProgram pronk = make_gait_program(GaitName::Pronk, 20.0, 200.0);
    CHECK_THROWS_AS(simulate(sticky, pronk, unstable), SimulationError);
  }
  SUBCASE("invalid gait program is rejected") {
    GaitProgram bad = trot;
    bad.voltage_v = 500.0;
    CHECK_THROWS_AS(simulate(jr, bad, cfg), DomainError);
  }
}

TEST_CASE("simulate: phase-shift equivariance of steady speed") {
  const RobotSpec jr = hamr_jr();
  SimConfig cfg = quick_config(1.2, 0.4);
  GaitProgram trot = make_gait_program(GaitName::Trot, 40.0, 200.0);
  GaitProgram shifted = trot;
  shifted.name = GaitName::Custom;
  for (auto& p : shifted.leg_phase) p = std::fmod(p + 0.3, 1.0);

  const double v1 = mean_speed(simulate(jr, trot, cfg), cfg.settle_s);
  const double v2 = mean_speed(simulate(jr, shifted, cfg), cfg.settle_s);
  CHECK(v2 == doctest::Approx(v1).epsilon(0.05));
}

TEST_CASE("simulate: penetration stays within the static compression bound") {
  const RobotSpec jr = hamr_jr();
  GaitProgram trot = make_gait_program(GaitName::Trot, 40.0, 200.0);
  SimConfig cfg = quick_config(1.0, 0.2);
  const Trajectory traj = simulate(jr, trot, cfg);

  // The natural foot height below ground never exceeds what the softest
  // effective spring would need to carry many body weights.
  const double k_soft_eff =
      jr.legs[0].vertical_stiffness.k_at_highest_n_m * jr.serial_compliance;
  const double bound_mm = 20.0 * jr.total_mass_g() * 1e-3 * 9.81 / k_soft_eff * 1e3;
  for (const auto& s : traj.samples) {
    for (int i = 0; i < 4; ++i) {
      CHECK(-s.foot_z_mm[i] < bound_mm);
    }
  }
}
