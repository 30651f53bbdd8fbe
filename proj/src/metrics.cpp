#include "hamrsim/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "hamrsim/errors.hpp"

namespace hamrsim {

namespace {

// Index of the first sample at or after the settle time.
size_t window_start(const Trajectory& traj, double settle_s) {
  const auto& s = traj.samples;
  size_t i = 0;
  while (i < s.size() && s[i].t_s < settle_s - 1e-12) ++i;
  if (i + 1 >= s.size()) throw DomainError("empty post-settle window");
  return i;
}

}  // namespace

double mean_speed(const Trajectory& traj, double settle_s) {
  const size_t i0 = window_start(traj, settle_s);
  const auto& first = traj.samples[i0];
  const auto& last = traj.samples.back();
  const double window = last.t_s - first.t_s;
  if (!(window > 0)) throw DomainError("empty post-settle window");
  return (last.body.x_mm - first.body.x_mm) / window;
}

double effective_stride_length(double mean_speed_mm_s, double frequency_hz) {
  if (!(frequency_hz > 0)) throw DomainError("frequency must be strictly positive");
  return mean_speed_mm_s / frequency_hz;
}

double cost_of_transport(const Trajectory& traj, double body_mass_total_g,
                         double gravity_m_s2, double mean_speed_mm_s) {
  if (!(mean_speed_mm_s > 0)) {
    throw DomainError("cost of transport is undefined at non-positive speed");
  }
  if (!(body_mass_total_g > 0) || !(gravity_m_s2 > 0)) {
    throw DomainError("mass and gravity must be strictly positive");
  }
  const size_t i0 = window_start(traj, traj.settle_s);
  const auto& s = traj.samples;
  const double window = s.back().t_s - s[i0].t_s;
  if (!(window > 0)) throw DomainError("empty post-settle window");

  // Trapezoidal time average of the clamped per-channel electrical power.
  double energy_j = 0;
  for (size_t k = i0; k + 1 < s.size(); ++k) {
    double p0 = 0, p1 = 0;
    for (int ch = 0; ch < 8; ++ch) {
      p0 += std::max(0.0, s[k].i_amps[ch] * s[k].v_volts[ch]);
      p1 += std::max(0.0, s[k + 1].i_amps[ch] * s[k + 1].v_volts[ch]);
    }
    energy_j += 0.5 * (p0 + p1) * (s[k + 1].t_s - s[k].t_s);
  }
  const double mean_power_w = energy_j / window;
  const double mgv = body_mass_total_g * 1e-3 * gravity_m_s2 * mean_speed_mm_s * 1e-3;
  return mean_power_w / mgv;
}

double relative_leg_stiffness(double stiffness_n_m, double leg_length_mm,
                              double mass_g, double gravity_m_s2) {
  if (!(stiffness_n_m > 0) || !(leg_length_mm > 0) || !(mass_g > 0) ||
      !(gravity_m_s2 > 0)) {
    throw DomainError("relative leg stiffness requires positive inputs");
  }
  return stiffness_n_m * leg_length_mm * 1e-3 / (mass_g * 1e-3 * gravity_m_s2);
}

double aerial_fraction(const Trajectory& traj, double settle_s) {
  const size_t i0 = window_start(traj, settle_s);
  size_t aerial = 0, total = 0;
  for (size_t k = i0; k < traj.samples.size(); ++k) {
    const auto& c = traj.samples[k].contact;
    if (!c[0] && !c[1] && !c[2] && !c[3]) ++aerial;
    ++total;
  }
  return static_cast<double>(aerial) / total;
}

double slip_fraction(const Trajectory& traj, double settle_s) {
  const size_t i0 = window_start(traj, settle_s);
  size_t contacts = 0, slips = 0;
  for (size_t k = i0; k < traj.samples.size(); ++k) {
    for (int i = 0; i < 4; ++i) {
      if (traj.samples[k].contact[i]) {
        ++contacts;
        if (traj.samples[k].slip[i]) ++slips;
      }
    }
  }
  return contacts == 0 ? 0.0 : static_cast<double>(slips) / contacts;
}

RunSummary summarize(const Trajectory& traj, const GaitProgram& program,
                     int repetition) {
  RunSummary out;
  out.gait = to_string(program.name);
  out.frequency_hz = program.frequency_hz;
  out.voltage_v = program.voltage_v;
  out.repetition = repetition;
  out.mean_speed_mm_s = mean_speed(traj, traj.settle_s);
  out.speed_bl_s = out.mean_speed_mm_s / traj.body_length_mm;
  out.stride_length_mm = effective_stride_length(out.mean_speed_mm_s, program.frequency_hz);
  out.aerial_fraction = aerial_fraction(traj, traj.settle_s);
  out.slip_fraction = slip_fraction(traj, traj.settle_s);
  if (out.mean_speed_mm_s > 0) {
    out.cot = cost_of_transport(traj, traj.total_mass_g, traj.gravity_m_s2,
                                out.mean_speed_mm_s);
  } else {
    out.cot = std::numeric_limits<double>::infinity();
  }
  return out;
}

std::vector<RunSummary> run_sweep(const RobotSpec& robot,
                                  const std::vector<GaitName>& gaits,
                                  const std::vector<double>& frequencies_hz,
                                  double voltage_v, const SimConfig& cfg,
                                  int repetitions, int threads) {
  if (gaits.empty()) throw DomainError("gait list must not be empty");
  if (frequencies_hz.empty()) throw DomainError("frequency list must not be empty");
  if (repetitions < 1) throw DomainError("repetitions must be at least 1");

  struct Job {
    GaitName gait;
    double f;
    int rep;
  };
  std::vector<Job> jobs;
  for (GaitName g : gaits) {
    for (double f : frequencies_hz) {
      for (int r = 0; r < repetitions; ++r) jobs.push_back({g, f, r});
    }
  }

  std::vector<RunSummary> results(jobs.size());
  auto run_one = [&](size_t idx) {
    const Job& job = jobs[idx];
    GaitProgram program = make_gait_program(job.gait, job.f, voltage_v);
    try {
      const Trajectory traj = simulate(robot, program, cfg);
      results[idx] = summarize(traj, program, job.rep);
    } catch (const std::exception& e) {
      RunSummary failed;
      failed.gait = to_string(job.gait);
      failed.frequency_hz = job.f;
      failed.voltage_v = voltage_v;
      failed.repetition = job.rep;
      failed.status = std::string("error: ") + e.what();
      results[idx] = failed;
    }
  };

  if (threads <= 1) {
    for (size_t i = 0; i < jobs.size(); ++i) run_one(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    const int n = std::min<int>(threads, static_cast<int>(jobs.size()));
    pool.reserve(n);
    for (int t = 0; t < n; ++t) {
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1)) {
          run_one(i);
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  return results;
}

std::vector<RunSummary> payload_sweep(const RobotSpec& robot,
                                      const GaitProgram& program,
                                      const SimConfig& cfg,
                                      const std::vector<double>& payloads_g) {
  if (payloads_g.empty()) throw DomainError("payload list must not be empty");
  std::vector<RunSummary> results;
  results.reserve(payloads_g.size());
  for (double p : payloads_g) {
    if (p < 0) throw DomainError("payloads must be non-negative");
    RobotSpec loaded = robot;
    loaded.payload_g = p;
    try {
      const Trajectory traj = simulate(loaded, program, cfg);
      results.push_back(summarize(traj, program, 0));
    } catch (const std::exception& e) {
      RunSummary failed;
      failed.gait = to_string(program.name);
      failed.frequency_hz = program.frequency_hz;
      failed.voltage_v = program.voltage_v;
      failed.status = std::string("error: ") + e.what();
      results.push_back(failed);
    }
  }
  return results;
}

}  // namespace hamrsim
