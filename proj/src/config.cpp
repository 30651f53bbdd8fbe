#include "hamrsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hamrsim/errors.hpp"
#include "hamrsim/csv.hpp"
#include "hamrsim/presets.hpp"

namespace hamrsim {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

IniFile IniFile::parse(const std::string& text) {
  IniFile ini;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t comment = line.find_first_of("#;");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("unterminated section header", line_no, line, "");
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw ConfigError("empty section name", line_no, "", "");
      ini.section_lines_.emplace(section, line_no);
      ini.sections_[section];
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("expected key = value", line_no, section, line);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key", line_no, section, "");
    if (section.empty()) {
      throw ConfigError("key outside any section", line_no, "", key);
    }
    auto [it, inserted] = ini.sections_[section].emplace(key, Entry{value, line_no});
    if (!inserted) throw ConfigError("duplicate key", line_no, section, key);
  }
  return ini;
}

IniFile IniFile::load(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

bool IniFile::has_section(const std::string& section) const {
  return sections_.count(section) > 0;
}

bool IniFile::has(const std::string& section, const std::string& key) const {
  auto it = sections_.find(section);
  return it != sections_.end() && it->second.count(key) > 0;
}

const IniFile::Entry& IniFile::entry(const std::string& section,
                                     const std::string& key) const {
  auto it = sections_.find(section);
  if (it == sections_.end()) {
    throw ConfigError("missing section", 0, section, key);
  }
  auto kt = it->second.find(key);
  if (kt == it->second.end()) {
    throw ConfigError("missing key", section_lines_.count(section)
                                         ? section_lines_.at(section)
                                         : 0,
                      section, key);
  }
  kt->second.used = true;
  return kt->second;
}

std::string IniFile::get_string(const std::string& section, const std::string& key) const {
  return entry(section, key).value;
}

double IniFile::get_double(const std::string& section, const std::string& key) const {
  const Entry& e = entry(section, key);
  char* end = nullptr;
  const double v = std::strtod(e.value.c_str(), &end);
  if (end == e.value.c_str() || *end != '\0') {
    throw ConfigError("expected a number, got '" + e.value + "'", e.line, section, key);
  }
  return v;
}

int IniFile::get_int(const std::string& section, const std::string& key) const {
  const Entry& e = entry(section, key);
  char* end = nullptr;
  const long v = std::strtol(e.value.c_str(), &end, 10);
  if (end == e.value.c_str() || *end != '\0') {
    throw ConfigError("expected an integer, got '" + e.value + "'", e.line, section, key);
  }
  return static_cast<int>(v);
}

bool IniFile::get_bool(const std::string& section, const std::string& key) const {
  const Entry& e = entry(section, key);
  std::string v = e.value;
  std::transform(v.begin(), v.end(), v.begin(), ::tolower);
  if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
  if (v == "false" || v == "no" || v == "0" || v == "off") return false;
  throw ConfigError("expected a boolean, got '" + e.value + "'", e.line, section, key);
}

std::vector<std::string> IniFile::get_string_list(const std::string& section,
                                                  const std::string& key) const {
  const Entry& e = entry(section, key);
  std::vector<std::string> items;
  std::string item;
  std::istringstream in(e.value);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

std::vector<double> IniFile::get_double_list(const std::string& section,
                                             const std::string& key) const {
  const Entry& e = entry(section, key);
  std::vector<double> items;
  for (const auto& s : get_string_list(section, key)) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') {
      throw ConfigError("expected a number list, got '" + s + "'", e.line, section, key);
    }
    items.push_back(v);
  }
  return items;
}

int IniFile::line_of(const std::string& section, const std::string& key) const {
  auto it = sections_.find(section);
  if (it == sections_.end()) return 0;
  auto kt = it->second.find(key);
  return kt == it->second.end() ? 0 : kt->second.line;
}

int IniFile::section_line(const std::string& section) const {
  auto it = section_lines_.find(section);
  return it == section_lines_.end() ? 0 : it->second;
}

void IniFile::reject_unused() const {
  for (const auto& [section, keys] : sections_) {
    for (const auto& [key, e] : keys) {
      if (!e.used) throw ConfigError("unknown key", e.line, section, key);
    }
  }
}

namespace {

GaitName gait_from_string(const std::string& s, int line, const std::string& section) {
  if (s == "trot") return GaitName::Trot;
  if (s == "pronk") return GaitName::Pronk;
  if (s == "bound") return GaitName::Bound;
  if (s == "custom") return GaitName::Custom;
  if (s == "jump") {
    throw ConfigError("jump is not supported: its footfall pattern is not defined here",
                      line, section, "gait");
  }
  throw ConfigError("unsupported gait '" + s + "'", line, section, "gait");
}

// Shared-leg robot definition keys. Legs are identical; hips are placed
// symmetrically at (+-hip_x, +-hip_y).
RobotSpec robot_from_keys(const IniFile& ini) {
  const std::string s = "robot";
  RobotSpec r;
  r.name = ini.has(s, "name") ? ini.get_string(s, "name") : "custom";
  r.body.body_length_mm = ini.get_double(s, "body_length_mm");
  r.body.body_width_mm = ini.get_double(s, "body_width_mm");
  r.body.body_mass_g = ini.get_double(s, "body_mass_g");
  r.body.chassis_thickness_um = ini.get_double(s, "chassis_thickness_um");
  r.rest_length_mm = ini.get_double(s, "rest_length_mm");

  ActuatorSpec act;
  act.length_mm = ini.get_double(s, "actuator_length_mm");
  act.width_mm = ini.get_double(s, "actuator_width_mm");
  act.free_deflection_um = ini.get_double(s, "actuator_free_deflection_um");
  act.blocked_force_mn = ini.get_double(s, "actuator_blocked_force_mn");
  act.stiffness_n_m = act.blocked_force_mn / act.free_deflection_um * 1e3;
  act.capacitance_nf = ini.get_double(s, "actuator_capacitance_nf");
  act.resistance_mohm = ini.get_double(s, "actuator_resistance_mohm");
  act.rated_voltage_v = ini.get_double(s, "rated_voltage_v");

  FlexureSpec flex;
  flex.length_um = ini.get_double(s, "flexure_length_um");
  flex.width_um = ini.get_double(s, "flexure_width_um");
  flex.thickness_um = ini.get_double(s, "flexure_thickness_um");
  flex.max_angle_rad = ini.get_double(s, "flexure_max_angle_rad");
  flex.stiffness_n_mm_rad = ini.get_double(s, "flexure_stiffness_n_mm_rad");

  const int flex_count = ini.get_int(s, "flexures_per_dof");

  auto dof = [&](const std::string& prefix, DofKind kind) {
    TransmissionModel m;
    m.dof_kind = kind;
    m.k_total_n_m = ini.get_double(s, prefix + "_k_total_n_m");
    m.effective_mass_mg = ini.get_double(s, prefix + "_effective_mass_mg");
    m.quality_factor = ini.get_double(s, prefix + "_quality_factor");
    m.transmission_ratio = ini.get_double(s, prefix + "_transmission_ratio");
    m.quasi_static_gain_um_v = ini.get_double(s, prefix + "_qs_gain_um_v");
    DofSpec d;
    d.actuator = act;
    d.flexure = flex;
    d.geometry.flexure_count = flex_count;
    d.geometry.flexure_moment_arm_mm = ini.get_double(s, prefix + "_flexure_moment_arm_mm");
    d.model = m;
    d.electrical.capacitance_nf = act.capacitance_nf;
    d.electrical.resistance_mohm = act.resistance_mohm;
    d.electrical.coupling_gain_ua_mm_s = ini.get_double(s, prefix + "_coupling_ua_mm_s");
    return d;
  };
  const DofSpec lift = dof("lift", DofKind::Lift);
  const DofSpec swing = dof("swing", DofKind::Swing);

  VerticalStiffnessCurve curve;
  curve.leg_height_min_mm = ini.get_double(s, "leg_height_min_mm");
  curve.leg_height_max_mm = ini.get_double(s, "leg_height_max_mm");
  curve.k_at_lowest_n_m = ini.get_double(s, "k_at_lowest_n_m");
  curve.k_at_highest_n_m = ini.get_double(s, "k_at_highest_n_m");
  curve.shape_exponent = ini.get_double(s, "shape_exponent");

  const double hip_x = ini.get_double(s, "hip_x_mm");
  const double hip_y = ini.get_double(s, "hip_y_mm");
  for (int i = 0; i < 4; ++i) {
    r.legs[i].lift = lift;
    r.legs[i].swing = swing;
    r.legs[i].vertical_stiffness = curve;
    r.legs[i].hip_x_mm = (i < 2) ? hip_x : -hip_x;
    r.legs[i].hip_y_mm = (i % 2 == 0) ? hip_y : -hip_y;
  }
  r.rated_voltage_v = act.rated_voltage_v;
  return r;
}

void apply_robot_overrides(const IniFile& ini, RobotSpec& r) {
  const std::string s = "robot";
  if (ini.has(s, "friction_mu")) r.friction_mu = ini.get_double(s, "friction_mu");
  if (ini.has(s, "payload_g")) r.payload_g = ini.get_double(s, "payload_g");
  if (ini.has(s, "serial_compliance")) {
    r.serial_compliance = ini.get_double(s, "serial_compliance");
  }
  if (ini.has(s, "body_drag_n_s_m")) {
    r.body_drag_n_s_m = ini.get_double(s, "body_drag_n_s_m");
  }
  if (ini.has(s, "table_vertical_stiffness_n_m")) {
    r.table_vertical_stiffness_n_m = ini.get_double(s, "table_vertical_stiffness_n_m");
  }
  if (ini.has(s, "k_rel_leg_length_mm")) {
    r.k_rel_leg_length_mm = ini.get_double(s, "k_rel_leg_length_mm");
  }
  if (ini.has(s, "quasistatic_stride_200v_mm")) {
    r.quasistatic_stride_200v_mm = ini.get_double(s, "quasistatic_stride_200v_mm");
  }
  if (ini.has(s, "measured_max_stride_mm")) {
    r.measured_max_stride_mm = ini.get_double(s, "measured_max_stride_mm");
  }
  if (ini.has(s, "measured_max_speed_mm_s")) {
    r.measured_max_speed_mm_s = ini.get_double(s, "measured_max_speed_mm_s");
  }
  if (ini.has(s, "measured_max_speed_bl_s")) {
    r.measured_max_speed_bl_s = ini.get_double(s, "measured_max_speed_bl_s");
  }
  if (ini.has(s, "measured_max_stride_frequency_hz")) {
    r.measured_max_stride_frequency_hz =
        ini.get_double(s, "measured_max_stride_frequency_hz");
  }
}

}  // namespace

RobotSpec robot_from_ini(const IniFile& ini) {
  const std::string s = "robot";
  if (!ini.has_section(s)) throw ConfigError("missing section", 0, s, "");
  RobotSpec r;
  if (ini.has(s, "preset")) {
    r = preset_by_name(ini.get_string(s, "preset"));
  } else {
    r = robot_from_keys(ini);
  }
  apply_robot_overrides(ini, r);
  try {
    r.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what(), ini.section_line(s), s, "");
  }
  return r;
}

ExperimentConfig parse_experiment_config(const std::string& text) {
  const IniFile ini = IniFile::parse(text);
  ExperimentConfig cfg;

  if (ini.has_section("robot")) cfg.robot = robot_from_ini(ini);

  if (ini.has_section("transform")) {
    TransformConfig tc;
    tc.transform.s_length = ini.get_double("transform", "s_length");
    tc.transform.s_width = ini.get_double("transform", "s_width");
    tc.transform.s_thickness = ini.get_double("transform", "s_thickness");
    if (ini.has("transform", "scale_flexure_length")) {
      tc.scale_flexure_length = ini.get_bool("transform", "scale_flexure_length");
    }
    if (ini.has("transform", "stiffness_mode")) {
      const std::string m = ini.get_string("transform", "stiffness_mode");
      if (m == "factor-sum") {
        tc.stiffness_mode = StiffnessFactorMode::FactorSum;
      } else if (m == "component-sum") {
        tc.stiffness_mode = StiffnessFactorMode::ComponentSum;
      } else {
        throw ConfigError("expected factor-sum or component-sum",
                          ini.line_of("transform", "stiffness_mode"), "transform",
                          "stiffness_mode");
      }
    }
    try {
      tc.transform.validate();
    } catch (const DomainError& e) {
      throw ConfigError(e.what(), ini.line_of("transform", "s_length"), "transform", "");
    }
    cfg.transform = tc;
  }

  if (ini.has_section("gait")) {
    GaitProgram p;
    const std::string name = ini.get_string("gait", "gait");
    p.name = gait_from_string(name, ini.line_of("gait", "gait"), "gait");
    if (p.name == GaitName::Custom) {
      p.leg_phase[0] = ini.get_double("gait", "phase_fl");
      p.leg_phase[1] = ini.get_double("gait", "phase_fr");
      p.leg_phase[2] = ini.get_double("gait", "phase_rl");
      p.leg_phase[3] = ini.get_double("gait", "phase_rr");
    } else {
      p.leg_phase = gait_phase_table(p.name);
    }
    p.frequency_hz = ini.get_double("gait", "frequency_hz");
    p.voltage_v = ini.get_double("gait", "voltage_v");
    if (ini.has("gait", "lift_swing_phase_lead")) {
      p.lift_swing_phase_lead = ini.get_double("gait", "lift_swing_phase_lead");
    }
    cfg.gait = p;
  }

  if (ini.has_section("sim")) {
    SimConfig& sc = cfg.sim;
    if (ini.has("sim", "timestep_s")) sc.timestep_s = ini.get_double("sim", "timestep_s");
    if (ini.has("sim", "duration_s")) sc.duration_s = ini.get_double("sim", "duration_s");
    if (ini.has("sim", "settle_s")) sc.settle_s = ini.get_double("sim", "settle_s");
    if (ini.has("sim", "gravity_m_s2")) sc.gravity_m_s2 = ini.get_double("sim", "gravity_m_s2");
    if (ini.has("sim", "initial_body_height_mm")) {
      sc.initial_body_height_mm = ini.get_double("sim", "initial_body_height_mm");
    }
    if (ini.has("sim", "record_hz")) sc.record_hz = ini.get_double("sim", "record_hz");
    if (ini.has("sim", "anchor_stiffness_factor")) {
      sc.anchor_stiffness_factor = ini.get_double("sim", "anchor_stiffness_factor");
    }
    if (ini.has("sim", "anchor_damping_ratio")) {
      sc.anchor_damping_ratio = ini.get_double("sim", "anchor_damping_ratio");
    }
    if (ini.has("sim", "stick_velocity_mm_s")) {
      sc.stick_velocity_mm_s = ini.get_double("sim", "stick_velocity_mm_s");
    }
    if (ini.has("sim", "contact_normal_damping_ratio")) {
      sc.contact_normal_damping_ratio = ini.get_double("sim", "contact_normal_damping_ratio");
    }
    try {
      sc.validate();
    } catch (const DomainError& e) {
      throw ConfigError(e.what(), 0, "sim", "");
    }
  }

  if (ini.has_section("sweep")) {
    SweepConfig& sw = cfg.sweep;
    if (ini.has("sweep", "gaits")) {
      sw.gaits.clear();
      for (const auto& g : ini.get_string_list("sweep", "gaits")) {
        sw.gaits.push_back(gait_from_string(g, ini.line_of("sweep", "gaits"), "sweep"));
      }
    }
    if (ini.has("sweep", "frequencies_hz")) {
      sw.frequencies_hz = ini.get_double_list("sweep", "frequencies_hz");
      if (sw.frequencies_hz.empty()) {
        throw ConfigError("frequency list must not be empty",
                          ini.line_of("sweep", "frequencies_hz"), "sweep",
                          "frequencies_hz");
      }
    }
    if (ini.has("sweep", "repetitions")) sw.repetitions = ini.get_int("sweep", "repetitions");
    if (ini.has("sweep", "voltage_v")) sw.voltage_v = ini.get_double("sweep", "voltage_v");
  }

  if (ini.has_section("payload")) {
    PayloadConfig& pc = cfg.payload;
    pc.payloads_g = ini.get_double_list("payload", "payloads_g");
    if (ini.has("payload", "frequency_hz")) pc.frequency_hz = ini.get_double("payload", "frequency_hz");
    if (ini.has("payload", "voltage_v")) pc.voltage_v = ini.get_double("payload", "voltage_v");
    if (ini.has("payload", "gait")) {
      pc.gait = gait_from_string(ini.get_string("payload", "gait"),
                                 ini.line_of("payload", "gait"), "payload");
    }
  }

  if (ini.has_section("output")) {
    if (ini.has("output", "directory")) {
      cfg.output.directory = ini.get_string("output", "directory");
    }
    if (ini.has("output", "plots")) cfg.output.plots = ini.get_bool("output", "plots");
  }

  ini.reject_unused();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_experiment_config(ss.str());
}

std::string dump_robot_config(const RobotSpec& robot) {
  const LegSpec& leg = robot.legs[0];
  std::string out = "[robot]\n";
  auto put = [&](const std::string& key, double v) {
    // full precision so a dumped preset round-trips bit-exactly
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += key + " = " + buf + "\n";
  };
  out += "name = " + robot.name + "\n";
  put("body_length_mm", robot.body.body_length_mm);
  put("body_width_mm", robot.body.body_width_mm);
  put("body_mass_g", robot.body.body_mass_g);
  put("chassis_thickness_um", robot.body.chassis_thickness_um);
  put("rest_length_mm", robot.rest_length_mm);
  put("hip_x_mm", leg.hip_x_mm);
  put("hip_y_mm", leg.hip_y_mm);
  put("friction_mu", robot.friction_mu);
  put("payload_g", robot.payload_g);
  put("serial_compliance", robot.serial_compliance);
  put("body_drag_n_s_m", robot.body_drag_n_s_m);
  put("rated_voltage_v", robot.rated_voltage_v);
  put("actuator_length_mm", leg.lift.actuator.length_mm);
  put("actuator_width_mm", leg.lift.actuator.width_mm);
  put("actuator_free_deflection_um", leg.lift.actuator.free_deflection_um);
  put("actuator_blocked_force_mn", leg.lift.actuator.blocked_force_mn);
  put("actuator_capacitance_nf", leg.lift.actuator.capacitance_nf);
  put("actuator_resistance_mohm", leg.lift.actuator.resistance_mohm);
  put("flexure_length_um", leg.lift.flexure.length_um);
  put("flexure_width_um", leg.lift.flexure.width_um);
  put("flexure_thickness_um", leg.lift.flexure.thickness_um);
  put("flexure_max_angle_rad", leg.lift.flexure.max_angle_rad);
  put("flexure_stiffness_n_mm_rad", leg.lift.flexure.stiffness_n_mm_rad);
  put("flexures_per_dof", leg.lift.geometry.flexure_count);
  for (const char* prefix : {"lift", "swing"}) {
    const DofSpec& d = std::string(prefix) == "lift" ? leg.lift : leg.swing;
    const std::string p(prefix);
    put(p + "_k_total_n_m", d.model.k_total_n_m);
    put(p + "_effective_mass_mg", d.model.effective_mass_mg);
    put(p + "_quality_factor", d.model.quality_factor);
    put(p + "_transmission_ratio", d.model.transmission_ratio);
    put(p + "_qs_gain_um_v", d.model.quasi_static_gain_um_v);
    put(p + "_flexure_moment_arm_mm", d.geometry.flexure_moment_arm_mm);
    put(p + "_coupling_ua_mm_s", d.electrical.coupling_gain_ua_mm_s);
  }
  put("leg_height_min_mm", leg.vertical_stiffness.leg_height_min_mm);
  put("leg_height_max_mm", leg.vertical_stiffness.leg_height_max_mm);
  put("k_at_lowest_n_m", leg.vertical_stiffness.k_at_lowest_n_m);
  put("k_at_highest_n_m", leg.vertical_stiffness.k_at_highest_n_m);
  put("shape_exponent", leg.vertical_stiffness.shape_exponent);
  if (robot.table_vertical_stiffness_n_m > 0) {
    put("table_vertical_stiffness_n_m", robot.table_vertical_stiffness_n_m);
  }
  if (robot.k_rel_leg_length_mm > 0) put("k_rel_leg_length_mm", robot.k_rel_leg_length_mm);
  if (robot.quasistatic_stride_200v_mm > 0) {
    put("quasistatic_stride_200v_mm", robot.quasistatic_stride_200v_mm);
  }
  if (robot.measured_max_stride_mm > 0) put("measured_max_stride_mm", robot.measured_max_stride_mm);
  if (robot.measured_max_speed_mm_s > 0) put("measured_max_speed_mm_s", robot.measured_max_speed_mm_s);
  if (robot.measured_max_speed_bl_s > 0) put("measured_max_speed_bl_s", robot.measured_max_speed_bl_s);
  if (robot.measured_max_stride_frequency_hz > 0) {
    put("measured_max_stride_frequency_hz", robot.measured_max_stride_frequency_hz);
  }
  return out;
}

}  // namespace hamrsim
