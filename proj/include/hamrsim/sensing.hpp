#pragma once

#include <vector>

namespace hamrsim {

/// Electrical model of one actuator channel. Current has three terms:
/// capacitive charging, resistive leakage, and a motional component
/// proportional to actuator tip velocity.
struct ElectricalModel {
  double capacitance_nf = 0;
  double resistance_mohm = 0;
  double coupling_gain_ua_mm_s = 0;  // motional current per tip velocity

  void validate() const;
};

/// Uniformly sampled voltage/current record of one channel.
struct SenseRecord {
  double dt_s = 0;
  std::vector<double> voltage_v;
  std::vector<double> current_a;

  void validate() const;
};

/// i = C dV/dt + V/R + Gamma q_dot, in amps (voltage in volts, tip velocity
/// in mm/s).
double instantaneous_current(const ElectricalModel& e, double voltage_v,
                             double dvdt_v_s, double tip_velocity_mm_s);

/// Forward model over aligned series; dV/dt by central differences with
/// one-sided endpoints. Velocity in mm/s, output in amps.
std::vector<double> piezo_current(const ElectricalModel& e,
                                  const std::vector<double>& voltage_v,
                                  const std::vector<double>& velocity_mm_s,
                                  double dt_s);

/// Inverse of piezo_current: recovers tip velocity (mm/s) from a record.
std::vector<double> estimate_velocity(const ElectricalModel& e,
                                      const SenseRecord& rec);

/// Drift-free position from a velocity series via leaky integration with the
/// given high-pass corner. Output is velocity-units times seconds, scaled by
/// `ratio` (use the transmission ratio to land in foot coordinates).
std::vector<double> estimate_position(const std::vector<double>& velocity,
                                      double dt_s, double highpass_corner_hz,
                                      double ratio = 1.0);

}  // namespace hamrsim
