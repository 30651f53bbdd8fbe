#pragma once

#include <string>
#include <vector>

#include "hamrsim/robot.hpp"

namespace hamrsim {

/// Calibrated description of the 22.5 mm / 0.32 g prototype.
RobotSpec hamr_jr();

/// Calibrated description of the 45.1 mm / 1.41 g prototype.
RobotSpec hamr_vi();

/// Lookup by name ("hamr-jr" or "hamr-vi"); throws DomainError otherwise.
RobotSpec preset_by_name(const std::string& name);

std::vector<std::string> preset_names();

}  // namespace hamrsim
