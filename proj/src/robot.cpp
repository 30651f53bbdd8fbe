#include "hamrsim/robot.hpp"

#include <cmath>

#include "hamrsim/errors.hpp"

namespace hamrsim {

void RobotSpec::validate() const {
  body.validate();
  for (const auto& l : legs) {
    l.lift.model.validate();
    l.swing.model.validate();
    l.lift.electrical.validate();
    l.swing.electrical.validate();
    l.vertical_stiffness.validate();
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (legs[i].hip_x_mm == legs[j].hip_x_mm &&
          legs[i].hip_y_mm == legs[j].hip_y_mm) {
        throw DomainError("legs must have distinct hip positions");
      }
    }
  }
  if (!(friction_mu > 0)) throw DomainError("friction_mu must be strictly positive");
  if (!(rest_length_mm > 0)) throw DomainError("rest_length_mm must be strictly positive");
  if (payload_g < 0) throw DomainError("payload_g must be non-negative");
  if (body_drag_n_s_m < 0) throw DomainError("body_drag_n_s_m must be non-negative");
  if (!(serial_compliance > 0) || serial_compliance > 1) {
    throw DomainError("serial_compliance must lie in (0, 1]");
  }
  if (!(rated_voltage_v > 0)) throw DomainError("rated_voltage_v must be strictly positive");
}

}  // namespace hamrsim
