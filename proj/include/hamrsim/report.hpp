#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hamrsim/robot.hpp"

namespace hamrsim {

/// One row of the scaling factor report.
struct ScalingRow {
  std::string quantity;
  double base_value = 0;
  double scaled_value = 0;
  double factor_theoretical = 0;
  std::optional<double> factor_experimental;
};

/// Measured (scaled robot, base robot) value pairs keyed by row name.
using MeasuredSet = std::map<std::string, std::pair<double, double>>;

/// Predicted scaling of every characterized quantity of `base` under `t`:
/// dimensions, actuator mechanics and electrics, flexure stiffness, total
/// transmission stiffness, resonances, stride and speed. When a measured
/// pair exists for a row, the experimental ratio is filled in; missing
/// pairs leave the column empty.
std::vector<ScalingRow> scaling_report(
    const RobotSpec& base, const AllometricTransform& t,
    const MeasuredSet& measured = {},
    StiffnessFactorMode mode = StiffnessFactorMode::FactorSum);

/// Measured pairs for every quantity both presets carry.
MeasuredSet measured_set_from(const RobotSpec& scaled_robot,
                              const RobotSpec& base_robot);

}  // namespace hamrsim
