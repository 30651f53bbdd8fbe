#include <CLI11.hpp>

#include "hamrsim/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"hamrsim: design and simulation toolkit for piezo-driven legged microrobots"};
  app.require_subcommand(1);

  hamrsim::CommandOptions opt;
  auto add_common = [&](CLI::App* cmd, bool with_parallel = false) {
    cmd->add_option("--config", opt.config_path, "experiment config file");
    cmd->add_option("--out", opt.out_dir, "output directory");
    cmd->add_option("--preset", opt.preset, "robot preset (hamr-jr or hamr-vi)");
    cmd->add_flag("--plots", opt.plots, "also emit SVG plots");
    if (with_parallel) {
      cmd->add_option("--parallel", opt.parallel, "worker threads for sweeps");
    }
  };

  auto* scale = app.add_subcommand("scale", "scaling factor report for a transform");
  add_common(scale);
  auto* characterize =
      app.add_subcommand("characterize", "stiffness curve and frequency response");
  add_common(characterize);
  auto* run = app.add_subcommand("run", "single locomotion simulation");
  add_common(run);
  auto* sweep = app.add_subcommand("sweep", "gait x frequency sweep");
  add_common(sweep, true);
  auto* payload = app.add_subcommand("payload", "payload study at a fixed operating point");
  add_common(payload);
  auto* sense = app.add_subcommand("sense", "proprioceptive sensing round trip");
  add_common(sense);
  auto* report = app.add_subcommand("report", "two-preset comparison table");
  add_common(report);
  auto* preset = app.add_subcommand("preset", "show a preset as a config section");
  add_common(preset);

  CLI11_PARSE(app, argc, argv);

  if (scale->parsed()) return hamrsim::cmd_scale(opt);
  if (characterize->parsed()) return hamrsim::cmd_characterize(opt);
  if (run->parsed()) return hamrsim::cmd_run(opt);
  if (sweep->parsed()) return hamrsim::cmd_sweep(opt);
  if (payload->parsed()) return hamrsim::cmd_payload(opt);
  if (sense->parsed()) return hamrsim::cmd_sense(opt);
  if (report->parsed()) return hamrsim::cmd_report(opt);
  if (preset->parsed()) return hamrsim::cmd_preset_show(opt);
  return hamrsim::kExitConfig;
}
