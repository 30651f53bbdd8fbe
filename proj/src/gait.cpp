#include "hamrsim/gait.hpp"

#include <cmath>
#include <numbers>

#include "hamrsim/errors.hpp"

namespace hamrsim {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

const char* to_string(GaitName g) {
  switch (g) {
    case GaitName::Trot: return "trot";
    case GaitName::Pronk: return "pronk";
    case GaitName::Bound: return "bound";
    case GaitName::Custom: return "custom";
  }
  return "?";
}

std::array<double, 4> gait_phase_table(GaitName gait) {
  switch (gait) {
    case GaitName::Trot:
      return {0.0, 0.5, 0.5, 0.0};  // FL, FR, RL, RR: diagonal pairs
    case GaitName::Pronk:
      return {0.0, 0.0, 0.0, 0.0};
    case GaitName::Bound:
      return {0.0, 0.0, 0.5, 0.5};  // front pair vs rear pair
    case GaitName::Custom:
      break;
  }
  throw DomainError("no built-in phase table for this gait");
}

std::array<double, 4> gait_phase_table(const std::string& name) {
  if (name == "trot") return gait_phase_table(GaitName::Trot);
  if (name == "pronk") return gait_phase_table(GaitName::Pronk);
  if (name == "bound") return gait_phase_table(GaitName::Bound);
  throw DomainError("unsupported gait: " + name);
}

GaitProgram make_gait_program(GaitName gait, double frequency_hz, double voltage_v) {
  GaitProgram p;
  p.name = gait;
  p.leg_phase = gait_phase_table(gait);
  p.frequency_hz = frequency_hz;
  p.voltage_v = voltage_v;
  return p;
}

double drive_voltage(const GaitProgram& program, Leg leg, bool lift, double t_s) {
  const double delta = lift ? kTwoPi * program.lift_swing_phase_lead : 0.0;
  const double arg = kTwoPi * program.frequency_hz * t_s +
                     kTwoPi * program.leg_phase[static_cast<int>(leg)] + delta;
  return 0.5 * program.voltage_v * (1.0 + std::sin(arg));
}

double drive_voltage_rate(const GaitProgram& program, Leg leg, bool lift, double t_s) {
  const double delta = lift ? kTwoPi * program.lift_swing_phase_lead : 0.0;
  const double arg = kTwoPi * program.frequency_hz * t_s +
                     kTwoPi * program.leg_phase[static_cast<int>(leg)] + delta;
  return 0.5 * program.voltage_v * kTwoPi * program.frequency_hz * std::cos(arg);
}

std::array<double, 8> synthesize_drive(const GaitProgram& program, double t_s) {
  std::array<double, 8> v{};
  for (Leg leg : kAllLegs) {
    v[channel_index(leg, true)] = drive_voltage(program, leg, true, t_s);
    v[channel_index(leg, false)] = drive_voltage(program, leg, false, t_s);
  }
  return v;
}

std::vector<std::string> validate_gait(const GaitProgram& program,
                                       double rated_voltage_v) {
  std::vector<std::string> violations;
  for (Leg leg : kAllLegs) {
    const double phase = program.leg_phase[static_cast<int>(leg)];
    if (!(phase >= 0) || !(phase < 1) || !std::isfinite(phase)) {
      violations.push_back(std::string(kLegNames[static_cast<int>(leg)]) +
                           " phase must lie in [0, 1)");
    }
  }
  if (!(program.frequency_hz > 0)) {
    violations.push_back("frequency must be strictly positive");
  }
  if (!(program.voltage_v >= 0) || program.voltage_v > rated_voltage_v) {
    violations.push_back("voltage must lie in [0, rated]");
  }
  if (!std::isfinite(program.lift_swing_phase_lead)) {
    violations.push_back("lift/swing phase lead must be finite");
  }
  return violations;
}

}  // namespace hamrsim
