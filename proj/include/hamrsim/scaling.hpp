#pragma once

#include <string>

namespace hamrsim {

/// Chassis dimensions and mass of one robot.
struct BodyPlan {
  double body_length_mm = 0;
  double body_width_mm = 0;
  double body_mass_g = 0;
  double chassis_thickness_um = 0;

  void validate() const;
};

/// Lumped description of one piezoelectric bending actuator.
///
/// free_deflection and blocked_force are taken at rated_voltage; stiffness
/// must equal blocked_force / free_deflection (linear actuator consistency).
struct ActuatorSpec {
  double length_mm = 0;
  double width_mm = 0;
  double free_deflection_um = 0;
  double blocked_force_mn = 0;
  double stiffness_n_m = 0;
  double capacitance_nf = 0;
  double resistance_mohm = 0;
  double rated_voltage_v = 0;

  void validate() const;
};

/// One joint flexure of the leg linkage.
struct FlexureSpec {
  double length_um = 0;
  double width_um = 0;
  double thickness_um = 0;
  double max_angle_rad = 0;
  double stiffness_n_mm_rad = 0;  // rotational stiffness

  void validate() const;
};

/// Independent scale factors for length, width and thickness.
struct AllometricTransform {
  double s_length = 1;
  double s_width = 1;
  double s_thickness = 1;

  void validate() const;
  bool is_identity() const;

  /// Element-wise product: applying *this then t equals applying compose(t).
  AllometricTransform compose(const AllometricTransform& t) const;
};

/// How the total transmission stiffness factor is composed.
///
/// FactorSum adds the actuator and flexure stiffness scale factors directly
/// (the convention in which a half transform yields 4 + 1/2 = 4.5).
/// ComponentSum scales the two component stiffnesses and sums them, which is
/// the physically consistent parallel-spring rule; the two agree only when
/// actuator and flexure factors are equal.
enum class StiffnessFactorMode { FactorSum, ComponentSum };

BodyPlan scale_chassis(const BodyPlan& plan, const AllometricTransform& t);

ActuatorSpec scale_actuator(const ActuatorSpec& a, const AllometricTransform& t);

/// Flexure length is held fixed by default (same range of motion across
/// scales); pass scale_length = true for exploratory transforms, in which
/// case stiffness picks up the 1/s_length of the w*t^3/l beam rule and
/// max_angle scales with length.
FlexureSpec scale_flexure(const FlexureSpec& f, const AllometricTransform& t,
                          bool scale_length = false);

/// Scale factor of the actuator stiffness, s_width / s_length^3.
double actuator_stiffness_factor(const AllometricTransform& t);

/// Scale factor of the flexure stiffness, s_width * s_thickness^3 at fixed
/// length (divided by s_length when the length scales too).
double flexure_stiffness_factor(const AllometricTransform& t,
                                bool scale_length = false);

/// Factor-sum transmission-stiffness factor:
/// actuator_stiffness_factor + flexure_stiffness_factor. Reproduces the 4.5
/// of the half transform, and returns 2 (not 1) for the identity transform --
/// the convention is documented, not resolved.
double total_stiffness_factor(const AllometricTransform& t);

/// Physically consistent alternative: total stiffness of a scaled
/// actuator/flexure pair acting in parallel, from the component values.
double scaled_total_stiffness(double k_act, double k_flex,
                              const AllometricTransform& t);

/// sqrt(stiffness_factor / mass_factor).
double resonance_factor(double stiffness_factor, double mass_factor);

/// Running-speed factor deflection_factor * resonance_factor (v ~ d*w).
double speed_factor(double deflection_factor, double resonance_factor);

/// Mass always scales with volume: s_length * s_width * s_thickness.
double mass_factor(const AllometricTransform& t);

}  // namespace hamrsim
