#include "hamrsim/csv.hpp"

#include <cstdio>
#include <fstream>

#include "hamrsim/errors.hpp"

namespace hamrsim {

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

namespace {

class Rows {
 public:
  explicit Rows(std::vector<std::string> header) {
    for (size_t i = 0; i < header.size(); ++i) {
      if (i) out_ += ',';
      out_ += header[i];
    }
    out_ += '\n';
    first_in_row_ = true;
  }
  Rows& add(double v) { return add(format_number(v)); }
  Rows& add(bool v) { return add(std::string(v ? "1" : "0")); }
  Rows& add(const std::string& v) {
    if (!first_in_row_) out_ += ',';
    out_ += v;
    first_in_row_ = false;
    return *this;
  }
  void end_row() {
    out_ += '\n';
    first_in_row_ = true;
  }
  std::string str() && { return std::move(out_); }

 private:
  std::string out_;
  bool first_in_row_;
};

}  // namespace

std::string trajectory_csv(const Trajectory& traj) {
  std::vector<std::string> header = {"t_s", "x_mm", "z_mm", "pitch_rad"};
  for (const char* leg : kLegNames) {
    const std::string p(leg);
    header.push_back(p + "_foot_x_mm");
    header.push_back(p + "_foot_z_mm");
    header.push_back(p + "_contact");
    header.push_back(p + "_slip");
  }
  for (const char* leg : kLegNames) {
    const std::string p(leg);
    for (const char* dof : {"lift", "swing"}) {
      header.push_back("v_" + p + "_" + dof + "_volts");
      header.push_back("i_" + p + "_" + dof + "_amps");
    }
  }
  Rows rows(header);
  for (const auto& s : traj.samples) {
    rows.add(s.t_s).add(s.body.x_mm).add(s.body.z_mm).add(s.body.pitch_rad);
    for (int i = 0; i < 4; ++i) {
      rows.add(s.foot_x_mm[i]).add(s.foot_z_mm[i]).add(s.contact[i]).add(s.slip[i]);
    }
    for (int leg = 0; leg < 4; ++leg) {
      for (int dof = 0; dof < 2; ++dof) {
        const int ch = 2 * leg + dof;
        rows.add(s.v_volts[ch]).add(s.i_amps[ch]);
      }
    }
    rows.end_row();
  }
  return std::move(rows).str();
}

std::string summary_csv(const std::vector<RunSummary>& rows_in) {
  Rows rows({"gait", "freq_hz", "voltage_v", "rep", "speed_mm_s", "speed_bl_s",
             "stride_mm", "cot", "aerial_frac", "slip_frac", "status"});
  for (const auto& r : rows_in) {
    rows.add(r.gait)
        .add(r.frequency_hz)
        .add(r.voltage_v)
        .add(static_cast<double>(r.repetition))
        .add(r.mean_speed_mm_s)
        .add(r.speed_bl_s)
        .add(r.stride_length_mm)
        .add(r.cot)
        .add(r.aerial_fraction)
        .add(r.slip_fraction)
        .add(r.status);
    rows.end_row();
  }
  return std::move(rows).str();
}

std::string scaling_csv(const std::vector<ScalingRow>& rows_in) {
  Rows rows({"quantity", "base", "scaled", "factor_theoretical", "factor_experimental"});
  for (const auto& r : rows_in) {
    rows.add(r.quantity).add(r.base_value).add(r.scaled_value).add(r.factor_theoretical);
    rows.add(r.factor_experimental ? format_number(*r.factor_experimental) : std::string());
    rows.end_row();
  }
  return std::move(rows).str();
}

std::string stiffness_curve_csv(const VerticalStiffnessCurve& curve, int n_samples) {
  curve.validate();
  if (n_samples < 2) throw DomainError("need at least two curve samples");
  Rows rows({"leg_height_mm", "stiffness_n_m"});
  for (int i = 0; i < n_samples; ++i) {
    const double z = curve.leg_height_min_mm +
                     (curve.leg_height_max_mm - curve.leg_height_min_mm) * i / (n_samples - 1);
    rows.add(z).add(vertical_leg_stiffness(curve, z));
    rows.end_row();
  }
  return std::move(rows).str();
}

std::string frequency_response_csv(const FrequencyResponse& lift,
                                   const FrequencyResponse& swing) {
  lift.validate();
  swing.validate();
  if (lift.frequency_hz != swing.frequency_hz) {
    throw DomainError("lift and swing responses must share a frequency grid");
  }
  Rows rows({"frequency_hz", "lift_p2p_mm", "swing_p2p_mm"});
  for (size_t i = 0; i < lift.frequency_hz.size(); ++i) {
    rows.add(lift.frequency_hz[i]).add(lift.p2p_mm[i]).add(swing.p2p_mm[i]);
    rows.end_row();
  }
  return std::move(rows).str();
}

std::string sense_record_csv(const std::vector<double>& t_s,
                             const std::vector<double>& v_volts,
                             const std::vector<double>& i_amps) {
  if (t_s.size() != v_volts.size() || t_s.size() != i_amps.size()) {
    throw DomainError("sense record series must be the same length");
  }
  Rows rows({"t_s", "v_volts", "i_amps"});
  for (size_t i = 0; i < t_s.size(); ++i) {
    rows.add(t_s[i]).add(v_volts[i]).add(i_amps[i]);
    rows.end_row();
  }
  return std::move(rows).str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path);
  f << contents;
  if (!f) throw IoError("write failed: " + path);
}

}  // namespace hamrsim
