#pragma once

#include <string>
#include <vector>

#include "hamrsim/dynamics.hpp"
#include "hamrsim/metrics.hpp"
#include "hamrsim/report.hpp"
#include "hamrsim/sensing.hpp"
#include "hamrsim/transmission.hpp"

namespace hamrsim {

/// Deterministic, locale-independent number formatting shared by every CSV
/// emitter. Column names carry units where the quantity is dimensional.
std::string format_number(double value);

std::string trajectory_csv(const Trajectory& traj);
std::string summary_csv(const std::vector<RunSummary>& rows);
std::string scaling_csv(const std::vector<ScalingRow>& rows);
std::string stiffness_curve_csv(const VerticalStiffnessCurve& curve, int n_samples);
std::string frequency_response_csv(const FrequencyResponse& lift,
                                   const FrequencyResponse& swing);
std::string sense_record_csv(const std::vector<double>& t_s,
                             const std::vector<double>& v_volts,
                             const std::vector<double>& i_amps);

void write_file(const std::string& path, const std::string& contents);

}  // namespace hamrsim
