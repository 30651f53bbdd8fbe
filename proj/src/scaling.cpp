#include "hamrsim/scaling.hpp"

#include <cmath>

#include "hamrsim/errors.hpp"

namespace hamrsim {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0) || !std::isfinite(v)) {
    throw DomainError(std::string(name) + " must be strictly positive");
  }
}

}  // namespace

void BodyPlan::validate() const {
  require_positive(body_length_mm, "body_length_mm");
  require_positive(body_width_mm, "body_width_mm");
  require_positive(body_mass_g, "body_mass_g");
  require_positive(chassis_thickness_um, "chassis_thickness_um");
}

void ActuatorSpec::validate() const {
  require_positive(length_mm, "length_mm");
  require_positive(width_mm, "width_mm");
  require_positive(free_deflection_um, "free_deflection_um");
  require_positive(blocked_force_mn, "blocked_force_mn");
  require_positive(stiffness_n_m, "stiffness_n_m");
  require_positive(capacitance_nf, "capacitance_nf");
  require_positive(resistance_mohm, "resistance_mohm");
  require_positive(rated_voltage_v, "rated_voltage_v");
  // blocked_force [mN] / free_deflection [um] = stiffness [N/m] numerically
  const double implied = blocked_force_mn / free_deflection_um * 1e3;
  if (std::abs(implied - stiffness_n_m) > 1e-9 * stiffness_n_m) {
    throw DomainError("actuator stiffness must equal blocked_force / free_deflection");
  }
}

void FlexureSpec::validate() const {
  require_positive(length_um, "length_um");
  require_positive(width_um, "width_um");
  require_positive(thickness_um, "thickness_um");
  require_positive(max_angle_rad, "max_angle_rad");
  require_positive(stiffness_n_mm_rad, "stiffness_n_mm_rad");
}

void AllometricTransform::validate() const {
  require_positive(s_length, "s_length");
  require_positive(s_width, "s_width");
  require_positive(s_thickness, "s_thickness");
}

bool AllometricTransform::is_identity() const {
  return s_length == 1 && s_width == 1 && s_thickness == 1;
}

AllometricTransform AllometricTransform::compose(const AllometricTransform& t) const {
  return {s_length * t.s_length, s_width * t.s_width, s_thickness * t.s_thickness};
}

BodyPlan scale_chassis(const BodyPlan& plan, const AllometricTransform& t) {
  plan.validate();
  t.validate();
  BodyPlan out = plan;
  out.body_length_mm = t.s_length * plan.body_length_mm;
  out.body_width_mm = t.s_width * plan.body_width_mm;
  out.body_mass_g = mass_factor(t) * plan.body_mass_g;
  out.chassis_thickness_um = t.s_thickness * plan.chassis_thickness_um;
  return out;
}

ActuatorSpec scale_actuator(const ActuatorSpec& a, const AllometricTransform& t) {
  a.validate();
  t.validate();
  ActuatorSpec out = a;
  out.length_mm = t.s_length * a.length_mm;
  out.width_mm = t.s_width * a.width_mm;
  out.free_deflection_um = t.s_length * t.s_length * a.free_deflection_um;
  out.blocked_force_mn = (t.s_width / t.s_length) * a.blocked_force_mn;
  out.stiffness_n_m = actuator_stiffness_factor(t) * a.stiffness_n_m;
  out.capacitance_nf = t.s_length * t.s_width * a.capacitance_nf;
  out.resistance_mohm = a.resistance_mohm / (t.s_length * t.s_width);
  // rated voltage is transform-invariant: both scales drive at the same field
  return out;
}

FlexureSpec scale_flexure(const FlexureSpec& f, const AllometricTransform& t,
                          bool scale_length) {
  f.validate();
  t.validate();
  FlexureSpec out = f;
  out.width_um = t.s_width * f.width_um;
  out.thickness_um = t.s_thickness * f.thickness_um;
  out.stiffness_n_mm_rad = flexure_stiffness_factor(t, scale_length) * f.stiffness_n_mm_rad;
  if (scale_length) {
    out.length_um = t.s_length * f.length_um;
    out.max_angle_rad = t.s_length * f.max_angle_rad;
  }
  return out;
}

double actuator_stiffness_factor(const AllometricTransform& t) {
  t.validate();
  return t.s_width / (t.s_length * t.s_length * t.s_length);
}

double flexure_stiffness_factor(const AllometricTransform& t, bool scale_length) {
  t.validate();
  double factor = t.s_width * t.s_thickness * t.s_thickness * t.s_thickness;
  if (scale_length) factor /= t.s_length;
  return factor;
}

double total_stiffness_factor(const AllometricTransform& t) {
  t.validate();
  return actuator_stiffness_factor(t) + flexure_stiffness_factor(t);
}

double scaled_total_stiffness(double k_act, double k_flex, const AllometricTransform& t) {
  if (!(k_act > 0) || !(k_flex > 0)) {
    throw DomainError("component stiffnesses must be strictly positive");
  }
  return actuator_stiffness_factor(t) * k_act + flexure_stiffness_factor(t) * k_flex;
}

double resonance_factor(double stiffness_factor, double mass_factor) {
  if (!(stiffness_factor > 0) || !(mass_factor > 0)) {
    throw DomainError("resonance_factor requires positive stiffness and mass factors");
  }
  return std::sqrt(stiffness_factor / mass_factor);
}

double speed_factor(double deflection_factor, double resonance_factor) {
  if (!(deflection_factor > 0) || !(resonance_factor > 0)) {
    throw DomainError("speed_factor requires positive inputs");
  }
  return deflection_factor * resonance_factor;
}

double mass_factor(const AllometricTransform& t) {
  t.validate();
  return t.s_length * t.s_width * t.s_thickness;
}

}  // namespace hamrsim
