#include "hamrsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hamrsim/errors.hpp"
#include "hamrsim/sensing.hpp"

namespace hamrsim {

void SimConfig::validate() const {
  if (timestep_s < 0) throw DomainError("timestep_s must be non-negative");
  if (!(settle_s >= 0)) throw DomainError("settle_s must be non-negative");
  if (!(duration_s > settle_s)) throw DomainError("duration_s must exceed settle_s");
  if (!(gravity_m_s2 > 0)) throw DomainError("gravity_m_s2 must be strictly positive");
  if (record_hz < 0) throw DomainError("record_hz must be non-negative");
  if (!(anchor_stiffness_factor > 0)) {
    throw DomainError("anchor_stiffness_factor must be strictly positive");
  }
  if (anchor_damping_ratio < 0) throw DomainError("anchor_damping_ratio must be non-negative");
  if (!(stick_velocity_mm_s > 0)) throw DomainError("stick_velocity_mm_s must be strictly positive");
  if (contact_normal_damping_ratio < 0) {
    throw DomainError("contact_normal_damping_ratio must be non-negative");
  }
}

std::pair<double, double> actuator_step(const TransmissionModel& m, double q_m,
                                        double qdot_m_s, double voltage_v,
                                        double external_force_n, double dt_s) {
  if (!(dt_s > 0)) throw DomainError("dt_s must be strictly positive");
  const double mass = m.effective_mass_kg();
  const double b = m.damping_n_s_m();
  const double force = m.drive_force_n_v() * voltage_v + external_force_n -
                       m.k_total_n_m * q_m;
  const double v_next = (qdot_m_s + dt_s * force / mass) / (1.0 + dt_s * b / mass);
  const double q_next = q_m + dt_s * v_next;
  if (!std::isfinite(q_next) || !std::isfinite(v_next)) {
    throw SimulationError("actuator state diverged", 0);
  }
  return {q_next, v_next};
}

ContactResult foot_contact_force(const FootState& leg_state,
                                 const LegContactParams& params) {
  ContactResult out;
  const double pen_m = -leg_state.foot_z_m;
  if (pen_m <= 0) {
    return out;  // airborne: zero force, anchor released
  }
  out.in_contact = true;

  // Leg spring stiffness at the current compressed leg height. Transients can
  // leave the characterized range, so clamp to the curve endpoints here.
  const double height_mm = (leg_state.natural_length_m - pen_m) * 1e3;
  double k = vertical_leg_stiffness_clamped(params.curve, height_mm);
  if (params.serial_compliance < 1.0) {
    // Off-axis compliance acts as a spring in series with the leg spring,
    // sized so the effective stiffness at the soft reference point is
    // serial_compliance times the nominal value.
    const double s = params.serial_compliance;
    const double k_off = params.curve.k_at_highest_n_m * s / (1.0 - s);
    k = k * k_off / (k + k_off);
  }
  out.effective_stiffness_n_m = k;
  const double n_elastic = k * pen_m;
  out.normal_n = std::max(
      0.0, n_elastic - params.normal_damping_n_s_m * leg_state.foot_vz_m_s);
  if (out.normal_n == 0.0) {
    return ContactResult{};
  }

  double anchor = leg_state.has_anchor ? leg_state.anchor_x_m : leg_state.foot_x_m;
  const double f_elastic = -params.anchor_stiffness_n_m * (leg_state.foot_x_m - anchor) -
                           params.anchor_damping_n_s_m * leg_state.foot_vx_m_s;
  // The cone rides on the elastic contact pressure; the impact-damping part
  // of the normal force carries no extra traction.
  const double f_max = params.friction_mu * n_elastic;
  if (std::abs(f_elastic) <= f_max) {
    out.tangential_n = f_elastic;
  } else {
    out.slip = true;
    if (std::abs(leg_state.foot_vx_m_s) > params.stick_velocity_m_s) {
      out.tangential_n = -f_max * (leg_state.foot_vx_m_s > 0 ? 1.0 : -1.0);
    } else {
      out.tangential_n = f_max * (f_elastic > 0 ? 1.0 : -1.0);
    }
    // Drag the anchor so the elastic force sits on the cone edge.
    anchor = leg_state.foot_x_m + out.tangential_n / params.anchor_stiffness_n_m;
  }
  out.has_anchor = true;
  out.anchor_x_m = anchor;
  return out;
}

namespace {

struct DofRuntime {
  double k_n_m = 0, mass_kg = 0, damping = 0, alpha_n_v = 0;
  double q = 0, v = 0;
};

struct LegRuntime {
  double hip_x_m = 0;
  double t_lift = 0, t_swing = 0;
  double q_swing_ref_m = 0;
  DofRuntime lift, swing;
  LegContactParams contact;
  bool has_anchor = false;
  double anchor_x_m = 0;
  ElectricalModel elec_lift, elec_swing;
};

DofRuntime make_dof_runtime(const TransmissionModel& m) {
  DofRuntime d;
  d.k_n_m = m.k_total_n_m;
  d.mass_kg = m.effective_mass_kg();
  d.damping = m.damping_n_s_m();
  d.alpha_n_v = m.drive_force_n_v();
  return d;
}

}  // namespace

Trajectory simulate(const RobotSpec& robot, const GaitProgram& program,
                    const SimConfig& cfg) {
  robot.validate();
  cfg.validate();
  {
    const auto violations = validate_gait(program, robot.rated_voltage_v);
    if (!violations.empty()) {
      std::string msg = "invalid gait program:";
      for (const auto& v : violations) msg += " " + v + ";";
      throw DomainError(msg);
    }
  }

  const double f_drive = program.frequency_hz;
  double f_n_max = 0;
  for (const auto& leg : robot.legs) {
    f_n_max = std::max({f_n_max, natural_frequency(leg.lift.model),
                        natural_frequency(leg.swing.model)});
  }
  const double dt = cfg.timestep_s > 0
                        ? cfg.timestep_s
                        : std::min(1e-5, 1.0 / (200.0 * f_drive));
  const double dt_bound = 1.0 / (50.0 * std::max(f_drive, f_n_max));
  if (dt > dt_bound) {
    throw DomainError("timestep too coarse: must not exceed 1/(50 max(f_drive, f_n))");
  }

  const double record_hz = cfg.record_hz > 0
                               ? cfg.record_hz
                               : std::clamp(64.0 * f_drive, 2000.0, 40000.0);
  const long record_every = std::max(1L, std::lround(1.0 / (record_hz * dt)));

  const double mass_kg = robot.total_mass_g() * 1e-3;
  const double body_len_m = robot.body.body_length_mm * 1e-3;
  const double inertia = mass_kg * body_len_m * body_len_m / 12.0;
  const double rest_m = robot.rest_length_mm * 1e-3;
  const double g = cfg.gravity_m_s2;
  const double drag = robot.body_drag_n_s_m;

  std::array<LegRuntime, 4> legs;
  for (int i = 0; i < 4; ++i) {
    const LegSpec& spec = robot.legs[i];
    LegRuntime& rt = legs[i];
    rt.hip_x_m = spec.hip_x_mm * 1e-3;
    rt.t_lift = spec.lift.model.transmission_ratio;
    rt.t_swing = spec.swing.model.transmission_ratio;
    rt.lift = make_dof_runtime(spec.lift.model);
    rt.swing = make_dof_runtime(spec.swing.model);
    rt.q_swing_ref_m = rt.swing.alpha_n_v * (robot.rated_voltage_v / 2.0) / rt.swing.k_n_m;
    rt.contact.curve = spec.vertical_stiffness;
    rt.contact.serial_compliance = robot.serial_compliance;
    rt.contact.friction_mu = robot.friction_mu;
    const double k_leg_side = rt.swing.k_n_m / (rt.t_swing * rt.t_swing);
    rt.contact.anchor_stiffness_n_m = cfg.anchor_stiffness_factor * k_leg_side;
    const double m_leg_side = rt.swing.mass_kg / (rt.t_swing * rt.t_swing);
    rt.contact.anchor_damping_n_s_m =
        2.0 * cfg.anchor_damping_ratio *
        std::sqrt(rt.contact.anchor_stiffness_n_m * m_leg_side);
    rt.contact.stick_velocity_m_s = cfg.stick_velocity_mm_s * 1e-3;
    // Impact loss referenced to the soft end of the stiffness curve and a
    // quarter of the body mass.
    const double k_soft =
        spec.vertical_stiffness.k_at_highest_n_m * robot.serial_compliance;
    rt.contact.normal_damping_n_s_m = 2.0 * cfg.contact_normal_damping_ratio *
                                      std::sqrt(k_soft * mass_kg / 4.0);
    rt.elec_lift = spec.lift.electrical;
    rt.elec_swing = spec.swing.electrical;
  }

  double x = 0;
  double z = (cfg.initial_body_height_mm > 0 ? cfg.initial_body_height_mm
                                             : robot.rest_length_mm) * 1e-3;
  double th = 0, vx = 0, vz = 0, w = 0;

  const long n_steps = std::lround(std::ceil(cfg.duration_s / dt));

  Trajectory traj;
  traj.dt_s = dt;
  traj.sample_dt_s = record_every * dt;
  traj.settle_s = cfg.settle_s;
  traj.gravity_m_s2 = g;
  traj.body_length_mm = robot.body.body_length_mm;
  traj.total_mass_g = robot.total_mass_g();
  traj.frequency_hz = f_drive;
  traj.samples.reserve(static_cast<size_t>(n_steps / record_every) + 2);

  for (long step = 0; step <= n_steps; ++step) {
    const double t = step * dt;
    const double c = std::cos(th), s = std::sin(th);

    double fx = 0, fz = 0, tau = 0;
    std::array<double, 4> foot_x{}, foot_z{};
    std::array<bool, 4> in_contact{}, slipping{};
    std::array<double, 4> ext_lift{}, ext_swing{};
    std::array<double, 8> volts{}, currents{}, act_um{}, act_mm_s{};

    for (int i = 0; i < 4; ++i) {
      LegRuntime& rt = legs[i];
      const Leg leg = static_cast<Leg>(i);
      const double v_lift = drive_voltage(program, leg, true, t);
      const double v_swing = drive_voltage(program, leg, false, t);
      volts[channel_index(leg, true)] = v_lift;
      volts[channel_index(leg, false)] = v_swing;

      const double leg_len = rest_m + rt.t_lift * rt.lift.q;
      const double o_x = -rt.t_swing * (rt.swing.q - rt.q_swing_ref_m);
      const double a = rt.hip_x_m + o_x;
      const double fx_nat = x + c * a + s * leg_len;
      const double fz_nat = z + s * a - c * leg_len;
      const double o_x_dot = -rt.t_swing * rt.swing.v;
      const double len_dot = rt.t_lift * rt.lift.v;
      const double foot_vx = vx + w * (-s * a + c * leg_len) + c * o_x_dot + s * len_dot;
      const double foot_vz = vz + w * (c * a + s * leg_len) + s * o_x_dot - c * len_dot;

      FootState fs;
      fs.natural_length_m = leg_len;
      fs.foot_x_m = fx_nat;
      fs.foot_z_m = fz_nat;
      fs.foot_vx_m_s = foot_vx;
      fs.foot_vz_m_s = foot_vz;
      fs.has_anchor = rt.has_anchor;
      fs.anchor_x_m = rt.anchor_x_m;

      const ContactResult cr = foot_contact_force(fs, rt.contact);
      rt.has_anchor = cr.has_anchor;
      rt.anchor_x_m = cr.anchor_x_m;

      const double n_f = cr.normal_n, t_f = cr.tangential_n;
      fx += t_f;
      fz += n_f;
      tau += (fx_nat - x) * n_f - (fz_nat - z) * t_f;
      ext_lift[i] = rt.t_lift * (-n_f * c + t_f * s);
      ext_swing[i] = -rt.t_swing * (n_f * s + t_f * c);

      foot_x[i] = fx_nat;
      foot_z[i] = fz_nat;
      in_contact[i] = cr.in_contact;
      slipping[i] = cr.slip;

      act_um[channel_index(leg, true)] = rt.lift.q * 1e6;
      act_um[channel_index(leg, false)] = rt.swing.q * 1e6;
      act_mm_s[channel_index(leg, true)] = rt.lift.v * 1e3;
      act_mm_s[channel_index(leg, false)] = rt.swing.v * 1e3;
      currents[channel_index(leg, true)] = instantaneous_current(
          rt.elec_lift, v_lift, drive_voltage_rate(program, leg, true, t),
          rt.lift.v * 1e3);
      currents[channel_index(leg, false)] = instantaneous_current(
          rt.elec_swing, v_swing, drive_voltage_rate(program, leg, false, t),
          rt.swing.v * 1e3);
    }

    if (step % record_every == 0) {
      TrajectorySample sample;
      sample.t_s = t;
      sample.body = {x * 1e3, z * 1e3, th, vx * 1e3, vz * 1e3, w};
      for (int i = 0; i < 4; ++i) {
        sample.foot_x_mm[i] = foot_x[i] * 1e3;
        sample.foot_z_mm[i] = foot_z[i] * 1e3;
        sample.contact[i] = in_contact[i];
        sample.slip[i] = slipping[i];
      }
      sample.actuator_um = act_um;
      sample.actuator_mm_s = act_mm_s;
      sample.v_volts = volts;
      sample.i_amps = currents;
      traj.samples.push_back(sample);
    }
    if (step == n_steps) break;

    for (int i = 0; i < 4; ++i) {
      LegRuntime& rt = legs[i];
      const Leg leg = static_cast<Leg>(i);
      auto integrate = [&](DofRuntime& d, double voltage, double f_ext) {
        const double force = d.alpha_n_v * voltage + f_ext - d.k_n_m * d.q;
        d.v = (d.v + dt * force / d.mass_kg) / (1.0 + dt * d.damping / d.mass_kg);
        d.q += dt * d.v;
      };
      integrate(rt.lift, volts[channel_index(leg, true)], ext_lift[i]);
      integrate(rt.swing, volts[channel_index(leg, false)], ext_swing[i]);
    }
    fx -= drag * vx;
    fz -= drag * vz;
    vx += dt * fx / mass_kg;
    vz += dt * (fz / mass_kg - g);
    w += dt * tau / inertia;
    x += dt * vx;
    z += dt * vz;
    th += dt * w;

    if (!(z > -1.0 && z < 1.0)) {
      throw SimulationError("body left the simulation domain", step);
    }
    if ((step & 0xFF) == 0) {
      if (!std::isfinite(x) || !std::isfinite(vx) || !std::isfinite(w) ||
          !std::isfinite(legs[0].lift.q) || !std::isfinite(legs[0].swing.q)) {
        throw SimulationError("non-finite state", step);
      }
    }
  }
  return traj;
}

}  // namespace hamrsim
