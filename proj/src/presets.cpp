#include "hamrsim/presets.hpp"

#include <cmath>
#include <numbers>

#include "hamrsim/errors.hpp"

namespace hamrsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Effective mass is back-solved from the measured resonance so the lumped
// model reproduces it exactly: m_eff = k_total / (2 pi f_n)^2.
TransmissionModel make_transmission(DofKind dof, double leg_side_stiffness_n_m,
                                    double ratio, double f_n_hz, double q,
                                    double qs_gain_um_v) {
  TransmissionModel m;
  m.dof_kind = dof;
  m.transmission_ratio = ratio;
  m.k_total_n_m = leg_side_stiffness_n_m * ratio * ratio;
  m.effective_mass_mg = m.k_total_n_m / ((kTwoPi * f_n_hz) * (kTwoPi * f_n_hz)) * 1e6;
  m.quality_factor = q;
  m.quasi_static_gain_um_v = qs_gain_um_v;
  return m;
}

// Moment arm chosen so the reflected flexure bank tops the actuator stiffness
// up to the calibrated total exactly.
TransmissionGeometry solve_geometry(double k_total_n_m, const ActuatorSpec& act,
                                    const FlexureSpec& flex, int count) {
  const double reflected = k_total_n_m - act.stiffness_n_m;
  if (!(reflected > 0)) {
    throw DomainError("calibrated total stiffness below actuator stiffness");
  }
  TransmissionGeometry g;
  g.flexure_count = count;
  const double k_rot_n_m_rad = flex.stiffness_n_mm_rad * 1e-3;
  g.flexure_moment_arm_mm = std::sqrt(count * k_rot_n_m_rad / reflected) * 1e3;
  return g;
}

// Fraction of the reciprocity-ideal motional coupling that shows up as
// measurable current; calibrated against the observed drive-current band.
constexpr double kSensingCouplingEfficiency = 0.36;

ElectricalModel make_electrical(const TransmissionModel& m, double capacitance_nf,
                                double resistance_mohm) {
  ElectricalModel e;
  e.capacitance_nf = capacitance_nf;
  e.resistance_mohm = resistance_mohm;
  // Electromechanical reciprocity bounds the motional current coefficient by
  // the drive force per volt (N/V converts to uA per mm/s by a factor 1e3);
  // the realized coupling is a calibrated fraction of that bound.
  e.coupling_gain_ua_mm_s = kSensingCouplingEfficiency * m.drive_force_n_v() * 1e3;
  return e;
}

void place_hips(RobotSpec& r, double hip_x_mm, double hip_y_mm) {
  r.leg(Leg::FrontLeft).hip_x_mm = hip_x_mm;
  r.leg(Leg::FrontLeft).hip_y_mm = hip_y_mm;
  r.leg(Leg::FrontRight).hip_x_mm = hip_x_mm;
  r.leg(Leg::FrontRight).hip_y_mm = -hip_y_mm;
  r.leg(Leg::RearLeft).hip_x_mm = -hip_x_mm;
  r.leg(Leg::RearLeft).hip_y_mm = hip_y_mm;
  r.leg(Leg::RearRight).hip_x_mm = -hip_x_mm;
  r.leg(Leg::RearRight).hip_y_mm = -hip_y_mm;
}

}  // namespace

RobotSpec hamr_jr() {
  RobotSpec r;
  r.name = "hamr-jr";

  // Measured chassis: 22.5 mm body, 320 mg. Component thickness is shared
  // with the larger prototype; only length and width were halved.
  r.body = {22.5, 9.0, 0.32, 100.0};

  // Half-scale bender: 600 mN blocked force, 50 um free deflection at 200 V.
  ActuatorSpec act{4.5, 1.6, 50.0, 600.0, 12000.0, 0.7, 13.0, 200.0};
  FlexureSpec flex{300.0, 800.0, 7.5, 0.35, 0.1};

  // Bench calibration: lift resonance 237.3 Hz (Q 6.3), swing resonance
  // 279.1 Hz (Q 9.6). The quasi-static gain of 5.2 um/V at the leg puts the
  // per-cycle foot stroke at 1.04 mm for a 200 V drive. The leg-side
  // reference stiffness ties the actuator-side total to the soft end of the
  // measured vertical stiffness curve.
  const double ratio = 21.0;
  const double k_leg_ref = 34.52;
  TransmissionModel lift = make_transmission(DofKind::Lift, k_leg_ref, ratio, 237.3, 6.3, 5.2);
  TransmissionModel swing = make_transmission(DofKind::Swing, k_leg_ref, ratio, 279.1, 9.6, 5.2);

  // Dielectric constants sized so drive currents land in the tens of
  // microamps at locomotion frequencies; coupling gain follows from the
  // mechanical calibration by reciprocity.
  ElectricalModel elec_lift = make_electrical(lift, 0.7, 13.0);
  ElectricalModel elec_swing = make_electrical(swing, 0.7, 13.0);

  r.rest_length_mm = 6.1;
  const double stroke_mm = lift.quasi_static_gain_um_v * r.rated_voltage_v * 1e-3;

  VerticalStiffnessCurve curve;
  curve.leg_height_min_mm = r.rest_length_mm;
  curve.leg_height_max_mm = r.rest_length_mm + stroke_mm;
  curve.k_at_lowest_n_m = 72.11;   // measured, leg fully retracted
  curve.k_at_highest_n_m = 34.52;  // measured, leg fully extended
  curve.shape_exponent = 1.0;

  for (auto& leg : r.legs) {
    leg.lift = {act, flex, solve_geometry(lift.k_total_n_m, act, flex, 4), lift, elec_lift};
    leg.swing = {act, flex, solve_geometry(swing.k_total_n_m, act, flex, 4), swing, elec_swing};
    leg.vertical_stiffness = curve;
  }
  place_hips(r, 6.75, 4.5);

  r.friction_mu = 0.3;
  // Off-axis twist of the half-scale transmission limits how much of the
  // lift stroke survives under load; calibrated against the payload runs.
  r.serial_compliance = 0.18;
  // Tether and scuffing drag, calibrated so peak open-loop speeds land in
  // the measured few-hundred-mm/s range.
  r.body_drag_n_s_m = 0.002;

  r.table_vertical_stiffness_n_m = 32.42;
  r.k_rel_leg_length_mm = 6.1;
  r.quasistatic_stride_200v_mm = 1.9;
  r.measured_max_stride_mm = 1.77;
  r.measured_max_speed_mm_s = 313.0;
  r.measured_max_speed_bl_s = 13.9;
  r.measured_max_stride_frequency_hz = 200.0;

  r.validate();
  return r;
}

RobotSpec hamr_vi() {
  RobotSpec r;
  r.name = "hamr-vi";

  r.body = {45.1, 18.0, 1.41, 100.0};

  ActuatorSpec act{9.0, 3.2, 200.0, 600.0, 3000.0, 2.8, 3.25, 200.0};
  FlexureSpec flex{300.0, 1600.0, 7.5, 0.35, 0.2};

  // Bench calibration: lift resonance 81.3 Hz (Q assumed equal to the
  // half-scale build), swing resonance 103.0 Hz. A 21 um/V leg gain gives
  // the 4.2 mm per-cycle foot stroke at 200 V. Leg-side stiffness reference
  // is the measured 9.21 N/m at full extension.
  const double ratio = 21.0;
  const double k_leg_ref = 9.21;
  TransmissionModel lift = make_transmission(DofKind::Lift, k_leg_ref, ratio, 81.3, 6.3, 21.0);
  TransmissionModel swing = make_transmission(DofKind::Swing, k_leg_ref, ratio, 103.0, 9.6, 21.0);

  ElectricalModel elec_lift = make_electrical(lift, 2.8, 3.25);
  ElectricalModel elec_swing = make_electrical(swing, 2.8, 3.25);

  r.rest_length_mm = 16.5;
  const double stroke_mm = lift.quasi_static_gain_um_v * r.rated_voltage_v * 1e-3;

  VerticalStiffnessCurve curve;
  curve.leg_height_min_mm = r.rest_length_mm;
  curve.leg_height_max_mm = r.rest_length_mm + stroke_mm;
  curve.k_at_highest_n_m = 9.21;
  // Same retracted-to-extended stiffness ratio as the half-scale curve.
  curve.k_at_lowest_n_m = 9.21 * (72.11 / 34.52);
  curve.shape_exponent = 1.0;

  for (auto& leg : r.legs) {
    leg.lift = {act, flex, solve_geometry(lift.k_total_n_m, act, flex, 4), lift, elec_lift};
    leg.swing = {act, flex, solve_geometry(swing.k_total_n_m, act, flex, 4), swing, elec_swing};
    leg.vertical_stiffness = curve;
  }
  place_hips(r, 13.5, 9.0);

  r.friction_mu = 0.3;
  r.serial_compliance = 1.0;
  r.body_drag_n_s_m = 0.004;

  r.table_vertical_stiffness_n_m = 9.21;
  r.k_rel_leg_length_mm = 16.5;
  r.quasistatic_stride_200v_mm = 8.4;
  r.measured_max_stride_mm = 10.87;
  r.measured_max_speed_mm_s = 478.0;
  r.measured_max_speed_bl_s = 10.6;
  r.measured_max_stride_frequency_hz = 65.0;

  r.validate();
  return r;
}

RobotSpec preset_by_name(const std::string& name) {
  if (name == "hamr-jr") return hamr_jr();
  if (name == "hamr-vi") return hamr_vi();
  throw DomainError("unknown preset: " + name);
}

std::vector<std::string> preset_names() { return {"hamr-jr", "hamr-vi"}; }

}  // namespace hamrsim
