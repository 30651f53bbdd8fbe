#pragma once

#include <string>
#include <vector>

#include "hamrsim/dynamics.hpp"

namespace hamrsim {

/// Performance summary of one locomotion run.
struct RunSummary {
  std::string gait;
  double frequency_hz = 0;
  double voltage_v = 0;
  int repetition = 0;
  double mean_speed_mm_s = 0;
  double speed_bl_s = 0;
  double stride_length_mm = 0;
  double cot = 0;
  double aerial_fraction = 0;
  double slip_fraction = 0;
  std::string status = "ok";  // "ok" or a divergence note
};

/// Net x displacement over the post-settle window divided by its length.
double mean_speed(const Trajectory& traj, double settle_s);

/// mean_speed / frequency.
double effective_stride_length(double mean_speed_mm_s, double frequency_hz);

/// Dimensionless electrical cost of transport: the summed per-channel time
/// average of max(0, i*V) over the post-settle window divided by m g v.
/// Negative instantaneous power is clamped (the drive electronics are
/// non-regenerative). Throws on non-positive speed.
double cost_of_transport(const Trajectory& traj, double body_mass_total_g,
                         double gravity_m_s2, double mean_speed_mm_s);

/// k l / (m g), the dimensionless leg stiffness used to compare locomotors
/// across scales.
double relative_leg_stiffness(double stiffness_n_m, double leg_length_mm,
                              double mass_g, double gravity_m_s2);

/// Fraction of post-settle samples with no foot in contact.
double aerial_fraction(const Trajectory& traj, double settle_s);

/// Fraction of post-settle (sample, foot) contact pairs flagged slipping.
double slip_fraction(const Trajectory& traj, double settle_s);

/// Full summary of one trajectory under the program that produced it.
RunSummary summarize(const Trajectory& traj, const GaitProgram& program,
                     int repetition = 0);

/// Runs every (gait, frequency, repetition) combination; per-run divergence
/// is recorded in the status column and the sweep continues. Results are
/// ordered by (gait, frequency, repetition) regardless of execution order.
/// threads <= 1 runs sequentially.
std::vector<RunSummary> run_sweep(const RobotSpec& robot,
                                  const std::vector<GaitName>& gaits,
                                  const std::vector<double>& frequencies_hz,
                                  double voltage_v, const SimConfig& cfg,
                                  int repetitions, int threads = 1);

/// One run per payload at a fixed operating point (10 Hz by default).
std::vector<RunSummary> payload_sweep(const RobotSpec& robot,
                                      const GaitProgram& program,
                                      const SimConfig& cfg,
                                      const std::vector<double>& payloads_g);

}  // namespace hamrsim
