#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "hamrsim/gait.hpp"
#include "hamrsim/robot.hpp"

namespace hamrsim {

/// Fixed-step integration settings. Zero-valued fields marked "auto" are
/// resolved from the drive program when the simulation starts.
struct SimConfig {
  double timestep_s = 0;        // auto: min(10 us, 1/(200 f_drive))
  double duration_s = 2.0;
  double settle_s = 0.5;        // excluded from metrics
  double gravity_m_s2 = 9.81;
  double initial_body_height_mm = 0;  // auto: leg rest length
  double record_hz = 0;         // auto: 64 samples per drive cycle

  // Contact regularization. The tangential anchor spring is this factor
  // times the leg-side swing stiffness; sticking is enforced below the
  // stick velocity. Normal damping models impact losses in the foot and
  // linkage; it vanishes at zero approach velocity, so static compression
  // still obeys the measured stiffness curve exactly.
  double anchor_stiffness_factor = 25.0;
  double anchor_damping_ratio = 0.5;
  double stick_velocity_mm_s = 0.1;
  double contact_normal_damping_ratio = 0.1;

  void validate() const;
};

struct BodyState {
  double x_mm = 0, z_mm = 0, pitch_rad = 0;
  double vx_mm_s = 0, vz_mm_s = 0, pitch_rate_rad_s = 0;
};

struct TrajectorySample {
  double t_s = 0;
  BodyState body;
  std::array<double, 4> foot_x_mm{}, foot_z_mm{};
  std::array<bool, 4> contact{}, slip{};
  std::array<double, 8> actuator_um{};     // displacement, channel order
  std::array<double, 8> actuator_mm_s{};   // velocity
  std::array<double, 8> v_volts{};
  std::array<double, 8> i_amps{};
};

struct Trajectory {
  double dt_s = 0;         // integrator step
  double sample_dt_s = 0;  // recording period, integer multiple of dt_s
  double settle_s = 0;
  double gravity_m_s2 = 9.81;
  double body_length_mm = 0;
  double total_mass_g = 0;
  double frequency_hz = 0;
  std::vector<TrajectorySample> samples;
};

/// One semi-implicit step of a driven DOF:
/// m_eff q'' + b q' + k q = (drive force per volt) * V + F_ext.
/// q in meters, F_ext in newtons. Damping is handled implicitly.
std::pair<double, double> actuator_step(const TransmissionModel& m, double q_m,
                                        double qdot_m_s, double voltage_v,
                                        double external_force_n, double dt_s);

/// World-frame state of one foot at its natural (uncompressed) position.
struct FootState {
  double natural_length_m = 0;  // hip-to-foot length commanded by the lift DOF
  double foot_x_m = 0;
  double foot_z_m = 0;          // negative means the spring is compressed
  double foot_vx_m_s = 0;
  double foot_vz_m_s = 0;
  bool has_anchor = false;
  double anchor_x_m = 0;
};

struct LegContactParams {
  VerticalStiffnessCurve curve;
  double serial_compliance = 1.0;
  double friction_mu = 0.3;
  double anchor_stiffness_n_m = 0;
  double anchor_damping_n_s_m = 0;
  double stick_velocity_m_s = 1e-4;
  double normal_damping_n_s_m = 0;
};

struct ContactResult {
  bool in_contact = false;
  bool slip = false;
  double normal_n = 0;
  double tangential_n = 0;
  bool has_anchor = false;
  double anchor_x_m = 0;
  double effective_stiffness_n_m = 0;
};

/// Compliant-normal, stick/slip Coulomb contact of one foot. The normal
/// force is the leg-height-dependent spring compression force; the
/// tangential force is an anchored elastic force clamped to the friction
/// cone, sliding kinetically when clamped.
ContactResult foot_contact_force(const FootState& leg_state,
                                 const LegContactParams& params);

/// Deterministic fixed-step run. Throws DomainError on invalid inputs or a
/// too-coarse timestep, SimulationError (naming the step) on divergence.
Trajectory simulate(const RobotSpec& robot, const GaitProgram& program,
                    const SimConfig& cfg);

}  // namespace hamrsim
