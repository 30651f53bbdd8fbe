#pragma once

#include <array>
#include <string>
#include <vector>

namespace hamrsim {

enum class Leg { FrontLeft = 0, FrontRight = 1, RearLeft = 2, RearRight = 3 };
constexpr std::array<Leg, 4> kAllLegs = {Leg::FrontLeft, Leg::FrontRight,
                                         Leg::RearLeft, Leg::RearRight};
constexpr std::array<const char*, 4> kLegNames = {"fl", "fr", "rl", "rr"};

/// Drive channel index in the fixed order
/// (FL-lift, FL-swing, FR-lift, FR-swing, RL-lift, RL-swing, RR-lift, RR-swing).
constexpr int channel_index(Leg leg, bool lift) {
  return 2 * static_cast<int>(leg) + (lift ? 0 : 1);
}

enum class GaitName { Trot, Pronk, Bound, Custom };

const char* to_string(GaitName g);

/// Per-leg drive program: leg phases, lift lead, frequency and voltage.
/// The lift channel of each leg leads its swing channel by
/// lift_swing_phase_lead cycles, tracing an elliptical foot path.
struct GaitProgram {
  GaitName name = GaitName::Trot;
  std::array<double, 4> leg_phase = {0, 0, 0, 0};  // FL, FR, RL, RR in [0,1)
  double lift_swing_phase_lead = 0.25;
  double frequency_hz = 0;
  double voltage_v = 0;
};

/// Footfall phase table of a named gait. Trot puts diagonal pairs in
/// antiphase, pronk drives all legs together, bound opposes the front and
/// rear pairs. Unknown or unsupported names (jump) are a domain error.
std::array<double, 4> gait_phase_table(GaitName gait);
std::array<double, 4> gait_phase_table(const std::string& name);

GaitProgram make_gait_program(GaitName gait, double frequency_hz, double voltage_v);

/// Instantaneous voltage of every channel:
/// v(leg,dof) = V/2 * (1 + sin(2 pi f t + 2 pi phase_leg + delta_dof)),
/// delta_swing = 0, delta_lift = 2 pi * lift_swing_phase_lead.
std::array<double, 8> synthesize_drive(const GaitProgram& program, double t_s);

/// Single channel voltage and its exact time derivative.
double drive_voltage(const GaitProgram& program, Leg leg, bool lift, double t_s);
double drive_voltage_rate(const GaitProgram& program, Leg leg, bool lift, double t_s);

/// Diagnostic check of a program against the rated voltage. Returns an empty
/// list when the program is valid.
std::vector<std::string> validate_gait(const GaitProgram& program,
                                       double rated_voltage_v);

}  // namespace hamrsim
