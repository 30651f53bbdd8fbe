#include "hamrsim/sensing.hpp"

#include <cmath>
#include <numbers>

#include "hamrsim/errors.hpp"

namespace hamrsim {

void ElectricalModel::validate() const {
  if (!(capacitance_nf > 0) || !(resistance_mohm > 0) ||
      !(coupling_gain_ua_mm_s > 0)) {
    throw DomainError("electrical model fields must be strictly positive");
  }
}

void SenseRecord::validate() const {
  if (!(dt_s > 0)) throw DomainError("sample step must be strictly positive");
  if (voltage_v.size() != current_a.size()) {
    throw DomainError("voltage and current series must be the same length");
  }
  if (voltage_v.size() < 3) throw DomainError("record too short");
}

double instantaneous_current(const ElectricalModel& e, double voltage_v,
                             double dvdt_v_s, double tip_velocity_mm_s) {
  return e.capacitance_nf * 1e-9 * dvdt_v_s +
         voltage_v / (e.resistance_mohm * 1e6) +
         e.coupling_gain_ua_mm_s * 1e-6 * tip_velocity_mm_s;
}

namespace {

std::vector<double> derivative(const std::vector<double>& v, double dt) {
  const size_t n = v.size();
  std::vector<double> d(n);
  d[0] = (v[1] - v[0]) / dt;
  for (size_t i = 1; i + 1 < n; ++i) d[i] = (v[i + 1] - v[i - 1]) / (2 * dt);
  d[n - 1] = (v[n - 1] - v[n - 2]) / dt;
  return d;
}

}  // namespace

std::vector<double> piezo_current(const ElectricalModel& e,
                                  const std::vector<double>& voltage_v,
                                  const std::vector<double>& velocity_mm_s,
                                  double dt_s) {
  e.validate();
  if (voltage_v.size() != velocity_mm_s.size()) {
    throw DomainError("voltage and velocity series must be the same length");
  }
  if (voltage_v.size() < 3 || !(dt_s > 0)) {
    throw DomainError("series too short or bad sample step");
  }
  const auto dvdt = derivative(voltage_v, dt_s);
  std::vector<double> i(voltage_v.size());
  for (size_t k = 0; k < i.size(); ++k) {
    i[k] = instantaneous_current(e, voltage_v[k], dvdt[k], velocity_mm_s[k]);
  }
  return i;
}

std::vector<double> estimate_velocity(const ElectricalModel& e,
                                      const SenseRecord& rec) {
  e.validate();
  rec.validate();
  const auto dvdt = derivative(rec.voltage_v, rec.dt_s);
  std::vector<double> v(rec.voltage_v.size());
  for (size_t k = 0; k < v.size(); ++k) {
    const double motional = rec.current_a[k] -
                            e.capacitance_nf * 1e-9 * dvdt[k] -
                            rec.voltage_v[k] / (e.resistance_mohm * 1e6);
    v[k] = motional / (e.coupling_gain_ua_mm_s * 1e-6);
  }
  return v;
}

std::vector<double> estimate_position(const std::vector<double>& velocity,
                                      double dt_s, double highpass_corner_hz,
                                      double ratio) {
  if (!(dt_s > 0)) throw DomainError("sample step must be strictly positive");
  if (highpass_corner_hz < 0) throw DomainError("corner must be non-negative");
  const size_t n = velocity.size();
  std::vector<double> p(n);
  if (n == 0) return p;

  // Trapezoidal integration, then zero-phase drift removal: a one-pole
  // high-pass run forward and backward. Records are processed offline, so
  // the backward pass costs nothing and avoids the phase lag a causal
  // leaky integrator would put on the fundamental.
  p[0] = 0;
  for (size_t k = 1; k < n; ++k) {
    p[k] = p[k - 1] + 0.5 * dt_s * (velocity[k] + velocity[k - 1]);
  }
  if (highpass_corner_hz > 0) {
    const double omega_c = 2.0 * std::numbers::pi * highpass_corner_hz;
    const double a = std::exp(-omega_c * dt_s);
    // Each pass starts from the local mean near its end of the record, so a
    // record that stops mid-oscillation does not inject a step transient.
    const size_t span = std::min(n, static_cast<size_t>(2.0 / (omega_c * dt_s)) + 1);
    auto highpass = [&](bool reverse) {
      const size_t begin = reverse ? n - span : 0;
      double mean = 0;
      for (size_t k = begin; k < begin + span; ++k) mean += p[k];
      mean /= span;
      double prev_in = mean;
      double prev_out = 0;
      for (size_t i = 0; i < n; ++i) {
        const size_t k = reverse ? n - 1 - i : i;
        const double out = a * (prev_out + p[k] - prev_in);
        prev_in = p[k];
        p[k] = out;
        prev_out = out;
      }
    };
    highpass(false);
    highpass(true);
  }
  for (double& v : p) v *= ratio;
  return p;
}

}  // namespace hamrsim
