#include "hamrsim/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>

#include "hamrsim/config.hpp"
#include "hamrsim/csv.hpp"
#include "hamrsim/errors.hpp"
#include "hamrsim/metrics.hpp"
#include "hamrsim/presets.hpp"
#include "hamrsim/sensing.hpp"
#include "hamrsim/svg.hpp"

namespace hamrsim {

namespace {

namespace fs = std::filesystem;

struct Context {
  ExperimentConfig cfg;
  std::string out_dir;
  bool plots = false;
  int parallel = 1;
};

Context make_context(const CommandOptions& opt) {
  Context ctx;
  if (!opt.config_path.empty()) {
    ctx.cfg = load_experiment_config(opt.config_path);
  }
  if (!opt.preset.empty()) {
    ctx.cfg.robot = preset_by_name(opt.preset);
  }
  ctx.out_dir = !opt.out_dir.empty() ? opt.out_dir : ctx.cfg.output.directory;
  ctx.plots = opt.plots || ctx.cfg.output.plots;
  ctx.parallel = std::max(1, opt.parallel);
  return ctx;
}

const RobotSpec& require_robot(const Context& ctx) {
  if (!ctx.cfg.robot) {
    throw ConfigError("a robot is required: give --preset or a [robot] section", 0,
                      "robot", "");
  }
  return *ctx.cfg.robot;
}

void emit(const Context& ctx, const std::string& name, const std::string& contents) {
  fs::create_directories(ctx.out_dir);
  const std::string path = (fs::path(ctx.out_dir) / name).string();
  write_file(path, contents);
  std::cout << "wrote " << path << "\n";
}

// Exit-code policy shared by every command body.
int guarded(const std::string& command, const CommandOptions& opt,
            int (*body)(const Context&)) {
  try {
    const Context ctx = make_context(opt);
    return body(ctx);
  } catch (const ConfigError& e) {
    std::cerr << command << ": config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << command << ": config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const SimulationError& e) {
    std::cerr << command << ": simulation diverged: " << e.what() << "\n";
    return kExitDivergence;
  } catch (const IoError& e) {
    std::cerr << command << ": io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << command << ": error: " << e.what() << "\n";
    return kExitIo;
  }
}

PlotSeries series_from_summaries(const std::vector<RunSummary>& rows,
                                 const std::string& gait, double RunSummary::*field) {
  PlotSeries s;
  s.name = gait;
  for (const auto& r : rows) {
    if (r.gait == gait && r.status == "ok" && r.repetition == 0) {
      s.x.push_back(r.frequency_hz);
      s.y.push_back(r.*field);
    }
  }
  return s;
}

void sweep_plots(const Context& ctx, const std::vector<RunSummary>& rows) {
  std::vector<std::string> gaits;
  for (const auto& r : rows) {
    if (std::find(gaits.begin(), gaits.end(), r.gait) == gaits.end()) {
      gaits.push_back(r.gait);
    }
  }
  auto plot = [&](const std::string& file, const std::string& title,
                  const std::string& ylabel, double RunSummary::*field) {
    std::vector<PlotSeries> series;
    for (const auto& g : gaits) series.push_back(series_from_summaries(rows, g, field));
    emit(ctx, file, line_plot_svg(title, "drive frequency (Hz)", ylabel, series));
  };
  plot("speed_vs_frequency.svg", "Running speed", "speed (mm/s)",
       &RunSummary::mean_speed_mm_s);
  plot("stride_vs_frequency.svg", "Effective stride length", "stride (mm)",
       &RunSummary::stride_length_mm);
  plot("cot_vs_frequency.svg", "Cost of transport", "CoT (-)", &RunSummary::cot);
}

int scale_body(const Context& ctx) {
  const RobotSpec& robot = require_robot(ctx);
  AllometricTransform t{0.5, 0.5, 1.0};
  StiffnessFactorMode mode = StiffnessFactorMode::FactorSum;
  if (ctx.cfg.transform) {
    t = ctx.cfg.transform->transform;
    mode = ctx.cfg.transform->stiffness_mode;
  }
  const auto rows = scaling_report(robot, t, {}, mode);
  emit(ctx, "scale_report.csv", scaling_csv(rows));
  return kExitOk;
}

int report_body(const Context& ctx) {
  // Fixed two-preset comparison: the half-scale robot against its parent.
  const RobotSpec small = hamr_jr();
  const RobotSpec large = hamr_vi();
  const AllometricTransform half{0.5, 0.5, 1.0};
  const auto rows = scaling_report(large, half, measured_set_from(small, large));
  emit(ctx, "report.csv", scaling_csv(rows));

  const double k_rel_small =
      relative_leg_stiffness(small.table_vertical_stiffness_n_m,
                             small.k_rel_leg_length_mm, small.body.body_mass_g, 9.81);
  const double k_rel_large =
      relative_leg_stiffness(large.table_vertical_stiffness_n_m,
                             large.k_rel_leg_length_mm, large.body.body_mass_g, 9.81);
  std::cout << "relative leg stiffness: " << small.name << " "
            << format_number(k_rel_small) << ", " << large.name << " "
            << format_number(k_rel_large) << "\n";
  return kExitOk;
}

int characterize_body(const Context& ctx) {
  const RobotSpec& robot = require_robot(ctx);
  const LegSpec& leg = robot.legs[0];

  emit(ctx, "stiffness_curve.csv", stiffness_curve_csv(leg.vertical_stiffness, 101));

  const double drive_v = 40.0;  // chirp characterization amplitude
  const FrequencyResponse lift = frequency_response(leg.lift.model, 1, 400, 400, drive_v);
  const FrequencyResponse swing = frequency_response(leg.swing.model, 1, 400, 400, drive_v);
  emit(ctx, "frequency_response.csv", frequency_response_csv(lift, swing));

  const auto [f_lift, q_lift] = fit_second_order(lift);
  const auto [f_swing, q_swing] = fit_second_order(swing);
  std::cout << "lift resonance " << format_number(f_lift) << " Hz (Q "
            << format_number(q_lift) << "), swing resonance " << format_number(f_swing)
            << " Hz (Q " << format_number(q_swing) << ")\n";

  if (ctx.plots) {
    std::vector<double> z, k;
    const auto& c = leg.vertical_stiffness;
    for (int i = 0; i <= 100; ++i) {
      const double h = c.leg_height_min_mm +
                       (c.leg_height_max_mm - c.leg_height_min_mm) * i / 100.0;
      z.push_back(h);
      k.push_back(vertical_leg_stiffness(c, h));
    }
    emit(ctx, "stiffness_curve.svg",
         line_plot_svg("Vertical leg stiffness", "leg height (mm)", "stiffness (N/m)",
                       {{"lift", z, k}}));
    emit(ctx, "frequency_response.svg",
         line_plot_svg("Transmission frequency response (40 V)", "frequency (Hz)",
                       "peak-to-peak amplitude (mm)",
                       {{"lift", lift.frequency_hz, lift.p2p_mm},
                        {"swing", swing.frequency_hz, swing.p2p_mm}}));
  }
  return kExitOk;
}

int run_body(const Context& ctx) {
  const RobotSpec& robot = require_robot(ctx);
  if (!ctx.cfg.gait) {
    throw ConfigError("a [gait] section is required", 0, "gait", "");
  }
  const Trajectory traj = simulate(robot, *ctx.cfg.gait, ctx.cfg.sim);
  emit(ctx, "trajectory.csv", trajectory_csv(traj));
  const RunSummary summary = summarize(traj, *ctx.cfg.gait);
  emit(ctx, "run_summary.csv", summary_csv({summary}));
  std::cout << "mean speed " << format_number(summary.mean_speed_mm_s) << " mm/s ("
            << format_number(summary.speed_bl_s) << " BL/s), stride "
            << format_number(summary.stride_length_mm) << " mm\n";

  if (ctx.plots) {
    PlotSeries x{"x", {}, {}}, z{"z", {}, {}};
    for (const auto& s : traj.samples) {
      x.x.push_back(s.t_s);
      x.y.push_back(s.body.x_mm);
      z.x.push_back(s.t_s);
      z.y.push_back(s.body.z_mm);
    }
    emit(ctx, "body_motion.svg",
         line_plot_svg("Body motion", "time (s)", "position (mm)", {x, z}));
  }
  return kExitOk;
}

int sweep_body(const Context& ctx) {
  const RobotSpec& robot = require_robot(ctx);
  const SweepConfig& sw = ctx.cfg.sweep;
  const auto rows = run_sweep(robot, sw.gaits, sw.frequencies_hz, sw.voltage_v,
                              ctx.cfg.sim, sw.repetitions, ctx.parallel);
  emit(ctx, "sweep_summary.csv", summary_csv(rows));
  if (ctx.plots) sweep_plots(ctx, rows);
  return kExitOk;
}

int payload_body(const Context& ctx) {
  const RobotSpec& robot = require_robot(ctx);
  PayloadConfig pc = ctx.cfg.payload;
  if (pc.payloads_g.empty()) {
    const double m = robot.body.body_mass_g;
    pc.payloads_g = {0, m, 2 * m, 3 * m, 4 * m};
  }
  const GaitProgram program = make_gait_program(pc.gait, pc.frequency_hz, pc.voltage_v);
  const auto rows = payload_sweep(robot, program, ctx.cfg.sim, pc.payloads_g);

  // Payload replaces frequency as the independent variable in this summary.
  std::string csv = summary_csv(rows);
  emit(ctx, "payload_summary.csv", csv);
  PlotSeries s{"speed", {}, {}};
  for (size_t i = 0; i < rows.size(); ++i) {
    s.x.push_back(pc.payloads_g[i]);
    s.y.push_back(rows[i].mean_speed_mm_s);
  }
  std::cout << "payloads (g):";
  for (size_t i = 0; i < rows.size(); ++i) {
    std::cout << " " << format_number(pc.payloads_g[i]) << "->"
              << format_number(rows[i].mean_speed_mm_s) << "mm/s";
  }
  std::cout << "\n";
  if (ctx.plots) {
    emit(ctx, "payload_speed.svg",
         line_plot_svg("Speed under payload", "payload (g)", "speed (mm/s)", {s}));
  }
  return kExitOk;
}

int sense_body(const Context& ctx) {
  const RobotSpec& robot = require_robot(ctx);
  GaitProgram program = ctx.cfg.gait
                            ? *ctx.cfg.gait
                            : make_gait_program(GaitName::Trot, 160.0, 200.0);
  SimConfig sim = ctx.cfg.sim;
  if (ctx.cfg.sim.record_hz == 0) {
    sim.record_hz = std::max(20000.0, 128.0 * program.frequency_hz);
  }
  const Trajectory traj = simulate(robot, program, sim);

  const size_t n = traj.samples.size();
  std::vector<double> t(n);
  for (size_t k = 0; k < n; ++k) t[k] = traj.samples[k].t_s;
  size_t i0 = 0;
  while (i0 < n && t[i0] < sim.settle_s) ++i0;

  const double corner_hz = program.frequency_hz / 16.0;
  std::string summary = "channel,nrmse,current_rms_ua\n";
  double worst_nrmse = 0;
  std::vector<std::vector<double>> feet_cols;
  std::vector<std::string> feet_header = {"t_s"};
  feet_cols.push_back(t);

  for (Leg leg : kAllLegs) {
    for (bool lift : {true, false}) {
      const int ch = channel_index(leg, lift);
      const LegSpec& spec = robot.leg(leg);
      const DofSpec& dof = lift ? spec.lift : spec.swing;

      std::vector<double> volts(n), amps(n), truth_q_mm(n);
      for (size_t k = 0; k < n; ++k) {
        volts[k] = traj.samples[k].v_volts[ch];
        amps[k] = traj.samples[k].i_amps[ch];
        truth_q_mm[k] = traj.samples[k].actuator_um[ch] * 1e-3;
      }
      const std::string name = std::string(kLegNames[static_cast<int>(leg)]) +
                               (lift ? "_lift" : "_swing");
      emit(ctx, "sense_" + name + ".csv", sense_record_csv(t, volts, amps));

      SenseRecord rec{traj.sample_dt_s, volts, amps};
      const auto vel = estimate_velocity(dof.electrical, rec);
      // Foot coordinates: lift maps to vertical extension, swing (negated)
      // to the fore-aft offset.
      const double ratio = (lift ? 1.0 : -1.0) * dof.model.transmission_ratio;
      const auto est = estimate_position(vel, traj.sample_dt_s, corner_hz, ratio);

      double mean_est = 0, mean_truth = 0, rms_i = 0;
      size_t count = 0;
      for (size_t k = i0; k < n; ++k) {
        mean_est += est[k];
        mean_truth += (lift ? 1.0 : -1.0) * dof.model.transmission_ratio * truth_q_mm[k];
        rms_i += amps[k] * amps[k];
        ++count;
      }
      mean_est /= count;
      mean_truth /= count;
      rms_i = std::sqrt(rms_i / count) * 1e6;

      double err2 = 0, sig2 = 0;
      for (size_t k = i0; k < n; ++k) {
        const double truth =
            (lift ? 1.0 : -1.0) * dof.model.transmission_ratio * truth_q_mm[k] - mean_truth;
        const double e = (est[k] - mean_est) - truth;
        err2 += e * e;
        sig2 += truth * truth;
      }
      const double nrmse = std::sqrt(err2 / sig2);
      worst_nrmse = std::max(worst_nrmse, nrmse);
      summary += name + "," + format_number(nrmse) + "," + format_number(rms_i) + "\n";

      feet_header.push_back(name + "_est_mm");
      feet_header.push_back(name + "_true_mm");
      std::vector<double> est_col(n), true_col(n);
      for (size_t k = 0; k < n; ++k) {
        est_col[k] = est[k] - mean_est;
        true_col[k] = (lift ? 1.0 : -1.0) * dof.model.transmission_ratio * truth_q_mm[k] -
                      mean_truth;
      }
      feet_cols.push_back(est_col);
      feet_cols.push_back(true_col);
    }
  }
  {
    std::string csv;
    for (size_t c = 0; c < feet_header.size(); ++c) {
      if (c) csv += ',';
      csv += feet_header[c];
    }
    csv += '\n';
    for (size_t k = 0; k < n; ++k) {
      for (size_t c = 0; c < feet_cols.size(); ++c) {
        if (c) csv += ',';
        csv += format_number(feet_cols[c][k]);
      }
      csv += '\n';
    }
    emit(ctx, "estimated_feet.csv", csv);
  }
  emit(ctx, "sense_summary.csv", summary);
  std::cout << "foot position estimate NRMSE (worst channel): "
            << format_number(worst_nrmse) << "\n";
  return kExitOk;
}

int preset_show_body(const Context& ctx) {
  const RobotSpec& robot = require_robot(ctx);
  std::cout << dump_robot_config(robot);
  return kExitOk;
}

}  // namespace

int cmd_scale(const CommandOptions& opt) { return guarded("scale", opt, scale_body); }
int cmd_characterize(const CommandOptions& opt) {
  return guarded("characterize", opt, characterize_body);
}
int cmd_run(const CommandOptions& opt) { return guarded("run", opt, run_body); }
int cmd_sweep(const CommandOptions& opt) { return guarded("sweep", opt, sweep_body); }
int cmd_payload(const CommandOptions& opt) {
  return guarded("payload", opt, payload_body);
}
int cmd_sense(const CommandOptions& opt) { return guarded("sense", opt, sense_body); }
int cmd_report(const CommandOptions& opt) { return guarded("report", opt, report_body); }
int cmd_preset_show(const CommandOptions& opt) {
  return guarded("preset", opt, preset_show_body);
}

}  // namespace hamrsim
