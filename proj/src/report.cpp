#include "hamrsim/report.hpp"

#include <cmath>

namespace hamrsim {

std::vector<ScalingRow> scaling_report(const RobotSpec& base,
                                       const AllometricTransform& t,
                                       const MeasuredSet& measured,
                                       StiffnessFactorMode mode) {
  base.validate();
  t.validate();

  const ActuatorSpec& act = base.legs[0].lift.actuator;
  const FlexureSpec& flex = base.legs[0].lift.flexure;
  const TransmissionModel& lift = base.legs[0].lift.model;
  const TransmissionModel& swing = base.legs[0].swing.model;

  const double f_mass = mass_factor(t);
  const double f_act_k = actuator_stiffness_factor(t);
  const double f_flex_k = flexure_stiffness_factor(t);
  double f_total_k;
  if (mode == StiffnessFactorMode::FactorSum) {
    f_total_k = total_stiffness_factor(t);
  } else {
    // Parallel-spring route through the component stiffnesses. The flexure
    // bank contribution is the calibrated total minus the actuator.
    const double k_act = act.stiffness_n_m;
    const double k_flex = lift.k_total_n_m - k_act;
    f_total_k = scaled_total_stiffness(k_act, k_flex, t) / lift.k_total_n_m;
  }
  const double f_deflection = t.s_length * t.s_length;
  const double f_resonance = resonance_factor(f_total_k, f_mass);
  const double f_speed = speed_factor(f_deflection, f_resonance);

  std::vector<ScalingRow> rows;
  auto add = [&](const std::string& quantity, double base_value, double factor) {
    ScalingRow row;
    row.quantity = quantity;
    row.base_value = base_value;
    row.scaled_value = base_value * factor;
    row.factor_theoretical = factor;
    auto it = measured.find(quantity);
    if (it != measured.end() && it->second.second != 0) {
      row.factor_experimental = it->second.first / it->second.second;
    }
    rows.push_back(row);
  };

  add("body_length", base.body.body_length_mm, t.s_length);
  add("body_mass", base.body.body_mass_g, f_mass);
  add("actuator_free_deflection", act.free_deflection_um, f_deflection);
  add("actuator_blocked_force", act.blocked_force_mn, t.s_width / t.s_length);
  add("actuator_stiffness", act.stiffness_n_m, f_act_k);
  add("actuator_capacitance", act.capacitance_nf, t.s_length * t.s_width);
  add("actuator_resistance", act.resistance_mohm, 1.0 / (t.s_length * t.s_width));
  add("flexure_stiffness", flex.stiffness_n_mm_rad, f_flex_k);
  add("vertical_stiffness", base.table_vertical_stiffness_n_m, f_total_k);
  add("lift_resonance", natural_frequency(lift), f_resonance);
  add("swing_resonance", natural_frequency(swing), f_resonance);
  add("stride_frequency", base.measured_max_stride_frequency_hz, f_resonance);
  add("stride_length_quasistatic", base.quasistatic_stride_200v_mm, f_deflection);
  add("stride_length_measured", base.measured_max_stride_mm, f_deflection);
  add("speed", base.measured_max_speed_mm_s, f_speed);
  add("speed_bl", base.measured_max_speed_bl_s, f_speed / t.s_length);
  return rows;
}

MeasuredSet measured_set_from(const RobotSpec& scaled_robot,
                              const RobotSpec& base_robot) {
  MeasuredSet m;
  auto put = [&](const std::string& key, double small_v, double large_v) {
    if (small_v > 0 && large_v > 0) m[key] = {small_v, large_v};
  };
  put("body_length", scaled_robot.body.body_length_mm, base_robot.body.body_length_mm);
  put("body_mass", scaled_robot.body.body_mass_g, base_robot.body.body_mass_g);
  put("vertical_stiffness", scaled_robot.table_vertical_stiffness_n_m,
      base_robot.table_vertical_stiffness_n_m);
  put("lift_resonance", natural_frequency(scaled_robot.legs[0].lift.model),
      natural_frequency(base_robot.legs[0].lift.model));
  put("swing_resonance", natural_frequency(scaled_robot.legs[0].swing.model),
      natural_frequency(base_robot.legs[0].swing.model));
  put("stride_frequency", scaled_robot.measured_max_stride_frequency_hz,
      base_robot.measured_max_stride_frequency_hz);
  put("stride_length_quasistatic", scaled_robot.quasistatic_stride_200v_mm,
      base_robot.quasistatic_stride_200v_mm);
  put("stride_length_measured", scaled_robot.measured_max_stride_mm,
      base_robot.measured_max_stride_mm);
  put("speed", scaled_robot.measured_max_speed_mm_s, base_robot.measured_max_speed_mm_s);
  put("speed_bl", scaled_robot.measured_max_speed_bl_s, base_robot.measured_max_speed_bl_s);
  return m;
}

}  // namespace hamrsim
