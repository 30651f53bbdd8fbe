#pragma once

#include <string>

namespace hamrsim {

/// Exit codes shared by every subcommand.
enum ExitCode {
  kExitOk = 0,
  kExitConfig = 2,
  kExitIo = 3,
  kExitDivergence = 4,
};

struct CommandOptions {
  std::string config_path;  // empty: command defaults where they exist
  std::string out_dir;      // overrides [output] directory
  std::string preset;       // overrides [robot]
  bool plots = false;       // enables plots in addition to [output] plots
  int parallel = 1;
};

int cmd_scale(const CommandOptions& opt);
int cmd_characterize(const CommandOptions& opt);
int cmd_run(const CommandOptions& opt);
int cmd_sweep(const CommandOptions& opt);
int cmd_payload(const CommandOptions& opt);
int cmd_sense(const CommandOptions& opt);
int cmd_report(const CommandOptions& opt);
int cmd_preset_show(const CommandOptions& opt);

}  // namespace hamrsim
