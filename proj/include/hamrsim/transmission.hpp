#pragma once

#include <utility>
#include <vector>

#include "hamrsim/scaling.hpp"

namespace hamrsim {

enum class DofKind { Lift, Swing };

/// Lumped second-order model of one actuated leg DOF, actuator side.
///
/// The damping coefficient is structural: b = sqrt(k_total * m_eff) / Q.
/// quasi_static_gain is the DC leg displacement per drive volt, so the drive
/// force per volt is k_total * quasi_static_gain / transmission_ratio.
struct TransmissionModel {
  DofKind dof_kind = DofKind::Lift;
  double k_total_n_m = 0;          // total stiffness, actuator side
  double effective_mass_mg = 0;    // actuator side, back-solved from resonance
  double quality_factor = 0;
  double transmission_ratio = 0;   // leg displacement per actuator displacement
  double quasi_static_gain_um_v = 0;  // at the leg

  void validate() const;

  double effective_mass_kg() const { return effective_mass_mg * 1e-6; }
  double damping_n_s_m() const;
  /// Drive force per volt at the actuator, N/V.
  double drive_force_n_v() const;
};

/// Vertical stiffness of one leg as a function of leg height (hip-to-foot
/// length). Softest at the highest (most extended) position.
struct VerticalStiffnessCurve {
  double leg_height_min_mm = 0;
  double leg_height_max_mm = 0;
  double k_at_lowest_n_m = 0;   // at leg_height_min (stiff end)
  double k_at_highest_n_m = 0;  // at leg_height_max (soft end)
  double shape_exponent = 1;

  void validate() const;
};

/// Peak-to-peak amplitude samples over frequency.
struct FrequencyResponse {
  std::vector<double> frequency_hz;
  std::vector<double> p2p_mm;

  void validate() const;
};

/// Linkage geometry reflecting joint flexures onto the actuator axis.
struct TransmissionGeometry {
  int flexure_count = 0;
  double flexure_moment_arm_mm = 0;
};

/// Total actuator-side stiffness: actuator stiffness plus every joint
/// flexure's rotational stiffness reflected through the squared moment arm.
double total_stiffness(const ActuatorSpec& actuator,
                       const std::vector<FlexureSpec>& flexures,
                       const TransmissionGeometry& kinematics);

/// (1/2pi) * sqrt(k_total / m_eff), Hz.
double natural_frequency(const TransmissionModel& m);

/// Monotone-decreasing interpolation between the curve endpoints.
/// Heights outside [min, max] are a domain error.
double vertical_leg_stiffness(const VerticalStiffnessCurve& curve,
                              double leg_height_mm);

/// As above but clamped to the curve endpoints; used inside the simulator
/// where transient leg heights can leave the characterized range.
double vertical_leg_stiffness_clamped(const VerticalStiffnessCurve& curve,
                                      double leg_height_mm);

/// Steady-state peak-to-peak leg amplitude of the second-order model over a
/// linearly spaced frequency grid at the given drive voltage.
FrequencyResponse frequency_response(const TransmissionModel& m, double f_lo_hz,
                                     double f_hi_hz, int n_points,
                                     double drive_voltage_v);

/// Analytic amplitude of the model at one frequency (peak-to-peak, mm).
double response_amplitude(const TransmissionModel& m, double frequency_hz,
                          double drive_voltage_v);

/// Recovers (f_n, Q) from response samples containing a resolved interior
/// peak. Throws FitError on monotone or flat samples.
std::pair<double, double> fit_second_order(const FrequencyResponse& samples);

/// Peak-to-peak leg displacement at the given drive voltage, mm.
/// Voltage must lie in [0, rated].
double quasi_static_leg_displacement(const TransmissionModel& m,
                                     double voltage_v, double rated_voltage_v);

}  // namespace hamrsim
