#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hamrsim/dynamics.hpp"
#include "hamrsim/report.hpp"
#include "hamrsim/robot.hpp"

namespace hamrsim {

/// Parsed `[section]` / `key = value` text with source lines retained so
/// errors can point at the offending entry.
class IniFile {
 public:
  static IniFile parse(const std::string& text);
  static IniFile load(const std::string& path);

  bool has_section(const std::string& section) const;
  bool has(const std::string& section, const std::string& key) const;

  std::string get_string(const std::string& section, const std::string& key) const;
  double get_double(const std::string& section, const std::string& key) const;
  int get_int(const std::string& section, const std::string& key) const;
  bool get_bool(const std::string& section, const std::string& key) const;
  std::vector<double> get_double_list(const std::string& section,
                                      const std::string& key) const;
  std::vector<std::string> get_string_list(const std::string& section,
                                           const std::string& key) const;

  int line_of(const std::string& section, const std::string& key) const;
  int section_line(const std::string& section) const;

  /// Throws ConfigError for any key never read through the getters above.
  void reject_unused() const;

 private:
  struct Entry {
    std::string value;
    int line = 0;
    mutable bool used = false;
  };
  std::map<std::string, std::map<std::string, Entry>> sections_;
  std::map<std::string, int> section_lines_;

  const Entry& entry(const std::string& section, const std::string& key) const;
};

struct TransformConfig {
  AllometricTransform transform;
  bool scale_flexure_length = false;
  StiffnessFactorMode stiffness_mode = StiffnessFactorMode::FactorSum;
};

struct SweepConfig {
  std::vector<GaitName> gaits = {GaitName::Trot, GaitName::Pronk};
  std::vector<double> frequencies_hz = {1, 10, 20, 40, 80, 120, 160, 200, 240, 280};
  int repetitions = 1;
  double voltage_v = 200;
};

struct PayloadConfig {
  std::vector<double> payloads_g;
  double frequency_hz = 10;
  double voltage_v = 200;
  GaitName gait = GaitName::Trot;
};

struct OutputConfig {
  std::string directory = "out";
  bool plots = false;
};

/// Everything a command needs, assembled from one config file. Sections are
/// optional; commands check for what they require.
struct ExperimentConfig {
  std::optional<RobotSpec> robot;
  std::optional<TransformConfig> transform;
  std::optional<GaitProgram> gait;
  SimConfig sim;
  SweepConfig sweep;
  PayloadConfig payload;
  OutputConfig output;
};

ExperimentConfig parse_experiment_config(const std::string& text);
ExperimentConfig load_experiment_config(const std::string& path);

/// Robot from a config section: either `preset = <name>` plus optional
/// overrides, or a full symmetric-leg definition.
RobotSpec robot_from_ini(const IniFile& ini);

/// Config-format dump of a robot, loadable as a `[robot]` section.
std::string dump_robot_config(const RobotSpec& robot);

}  // namespace hamrsim
