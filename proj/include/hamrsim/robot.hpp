#pragma once

#include <array>
#include <string>
#include <vector>

#include "hamrsim/gait.hpp"
#include "hamrsim/scaling.hpp"
#include "hamrsim/sensing.hpp"
#include "hamrsim/transmission.hpp"

namespace hamrsim {

/// One actuated DOF of one leg: the physical parts, the linkage geometry
/// reflecting them onto the actuator axis, and the lumped calibration the
/// simulator actually integrates.
struct DofSpec {
  ActuatorSpec actuator;
  FlexureSpec flexure;
  TransmissionGeometry geometry;
  TransmissionModel model;
  ElectricalModel electrical;
};

struct LegSpec {
  DofSpec lift;
  DofSpec swing;
  VerticalStiffnessCurve vertical_stiffness;
  double hip_x_mm = 0;  // body frame, +x forward
  double hip_y_mm = 0;  // lateral offset, unused by the sagittal model
};

/// Full parametric robot description. Legs are ordered FL, FR, RL, RR.
struct RobotSpec {
  std::string name;
  BodyPlan body;
  std::array<LegSpec, 4> legs;
  double rest_length_mm = 0;   // leg length at zero lift drive
  double friction_mu = 0.3;
  double payload_g = 0;
  double serial_compliance = 1;  // 1 = rigid lift transmission under load
  double rated_voltage_v = 200;
  // Linear drag on the body from the drive tether and scuffing losses,
  // calibrated against measured top speeds.
  double body_drag_n_s_m = 0;

  // Bench-measured comparison constants, used by the scale/report commands
  // and the relative-stiffness metric. Zero means "not measured".
  double table_vertical_stiffness_n_m = 0;
  double k_rel_leg_length_mm = 0;
  double quasistatic_stride_200v_mm = 0;
  double measured_max_stride_mm = 0;
  double measured_max_speed_mm_s = 0;
  double measured_max_speed_bl_s = 0;
  double measured_max_stride_frequency_hz = 0;

  void validate() const;

  double total_mass_g() const { return body.body_mass_g + payload_g; }
  const LegSpec& leg(Leg l) const { return legs[static_cast<int>(l)]; }
  LegSpec& leg(Leg l) { return legs[static_cast<int>(l)]; }
};

}  // namespace hamrsim
