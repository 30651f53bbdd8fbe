#include "hamrsim/transmission.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "hamrsim/errors.hpp"

namespace hamrsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_positive(double v, const char* name) {
  if (!(v > 0) || !std::isfinite(v)) {
    throw DomainError(std::string(name) + " must be strictly positive");
  }
}

}  // namespace

void TransmissionModel::validate() const {
  require_positive(k_total_n_m, "k_total_n_m");
  require_positive(effective_mass_mg, "effective_mass_mg");
  require_positive(quality_factor, "quality_factor");
  require_positive(transmission_ratio, "transmission_ratio");
  require_positive(quasi_static_gain_um_v, "quasi_static_gain_um_v");
}

double TransmissionModel::damping_n_s_m() const {
  return std::sqrt(k_total_n_m * effective_mass_kg()) / quality_factor;
}

double TransmissionModel::drive_force_n_v() const {
  return k_total_n_m * (quasi_static_gain_um_v * 1e-6) / transmission_ratio;
}

void VerticalStiffnessCurve::validate() const {
  require_positive(k_at_lowest_n_m, "k_at_lowest_n_m");
  require_positive(k_at_highest_n_m, "k_at_highest_n_m");
  require_positive(shape_exponent, "shape_exponent");
  if (!(leg_height_min_mm < leg_height_max_mm)) {
    throw DomainError("leg height range must satisfy min < max");
  }
  if (!(k_at_lowest_n_m > k_at_highest_n_m)) {
    throw DomainError("leg must be softest at the highest position");
  }
}

void FrequencyResponse::validate() const {
  if (frequency_hz.size() != p2p_mm.size()) {
    throw DomainError("frequency and amplitude series must be the same length");
  }
  for (size_t i = 0; i < frequency_hz.size(); ++i) {
    if (i > 0 && !(frequency_hz[i] > frequency_hz[i - 1])) {
      throw DomainError("frequencies must be strictly increasing");
    }
    if (!(p2p_mm[i] > 0)) throw DomainError("amplitudes must be positive");
  }
}

double total_stiffness(const ActuatorSpec& actuator,
                       const std::vector<FlexureSpec>& flexures,
                       const TransmissionGeometry& kinematics) {
  actuator.validate();
  if (flexures.empty()) throw DomainError("at least one flexure required");
  if (!(kinematics.flexure_moment_arm_mm > 0)) {
    throw DomainError("flexure moment arm must be strictly positive");
  }
  if (kinematics.flexure_count < 1) {
    throw DomainError("flexure count must be at least 1");
  }
  const double arm_m = kinematics.flexure_moment_arm_mm * 1e-3;
  double k = actuator.stiffness_n_m;
  for (const auto& f : flexures) {
    f.validate();
    const double k_rot_n_m_rad = f.stiffness_n_mm_rad * 1e-3;
    k += kinematics.flexure_count * k_rot_n_m_rad / (arm_m * arm_m);
  }
  return k;
}

double natural_frequency(const TransmissionModel& m) {
  m.validate();
  return std::sqrt(m.k_total_n_m / m.effective_mass_kg()) / kTwoPi;
}

namespace {

double stiffness_at(const VerticalStiffnessCurve& curve, double leg_height_mm) {
  const double span = curve.leg_height_max_mm - curve.leg_height_min_mm;
  const double s = (leg_height_mm - curve.leg_height_min_mm) / span;
  return curve.k_at_lowest_n_m +
         (curve.k_at_highest_n_m - curve.k_at_lowest_n_m) *
             std::pow(s, curve.shape_exponent);
}

}  // namespace

double vertical_leg_stiffness(const VerticalStiffnessCurve& curve,
                              double leg_height_mm) {
  curve.validate();
  if (leg_height_mm < curve.leg_height_min_mm ||
      leg_height_mm > curve.leg_height_max_mm) {
    throw DomainError("leg height outside the characterized range");
  }
  return stiffness_at(curve, leg_height_mm);
}

double vertical_leg_stiffness_clamped(const VerticalStiffnessCurve& curve,
                                      double leg_height_mm) {
  const double z = std::clamp(leg_height_mm, curve.leg_height_min_mm,
                              curve.leg_height_max_mm);
  return stiffness_at(curve, z);
}

double response_amplitude(const TransmissionModel& m, double frequency_hz,
                          double drive_voltage_v) {
  const double f_n = natural_frequency(m);
  const double r = frequency_hz / f_n;
  const double a_qs = m.quasi_static_gain_um_v * 1e-3 * drive_voltage_v;  // mm p2p
  const double denom = std::sqrt((1 - r * r) * (1 - r * r) +
                                 (r / m.quality_factor) * (r / m.quality_factor));
  return a_qs / denom;
}

FrequencyResponse frequency_response(const TransmissionModel& m, double f_lo_hz,
                                     double f_hi_hz, int n_points,
                                     double drive_voltage_v) {
  m.validate();
  if (!(f_lo_hz > 0) || !(f_lo_hz < f_hi_hz)) {
    throw DomainError("frequency range must satisfy 0 < f_lo < f_hi");
  }
  if (n_points < 2) throw DomainError("n_points must be at least 2");
  if (!(drive_voltage_v > 0)) throw DomainError("drive voltage must be positive");

  FrequencyResponse out;
  out.frequency_hz.reserve(n_points);
  out.p2p_mm.reserve(n_points);
  for (int i = 0; i < n_points; ++i) {
    const double f = f_lo_hz + (f_hi_hz - f_lo_hz) * i / (n_points - 1);
    out.frequency_hz.push_back(f);
    out.p2p_mm.push_back(response_amplitude(m, f, drive_voltage_v));
  }
  return out;
}

namespace {

// Normalized second-order magnitude at frequency ratio r = f/f_n.
double gain(double r, double q) {
  return 1.0 / std::sqrt((1 - r * r) * (1 - r * r) + (r / q) * (r / q));
}

// For fixed (f_n, Q), the best-fit DC amplitude is linear least squares.
double best_dc_amplitude(const FrequencyResponse& s, double f_n, double q) {
  double num = 0, den = 0;
  for (size_t i = 0; i < s.frequency_hz.size(); ++i) {
    const double g = gain(s.frequency_hz[i] / f_n, q);
    num += s.p2p_mm[i] * g;
    den += g * g;
  }
  return num / den;
}

double sse(const FrequencyResponse& s, double f_n, double q) {
  const double a = best_dc_amplitude(s, f_n, q);
  double e = 0;
  for (size_t i = 0; i < s.frequency_hz.size(); ++i) {
    const double r = s.p2p_mm[i] - a * gain(s.frequency_hz[i] / f_n, q);
    e += r * r;
  }
  return e;
}

}  // namespace

std::pair<double, double> fit_second_order(const FrequencyResponse& samples) {
  samples.validate();
  const size_t n = samples.frequency_hz.size();
  if (n < 5) throw FitError("too few samples to fit a resonance");

  size_t i_pk = 0;
  for (size_t i = 1; i < n; ++i) {
    if (samples.p2p_mm[i] > samples.p2p_mm[i_pk]) i_pk = i;
  }
  if (i_pk == 0 || i_pk == n - 1) {
    throw FitError("samples contain no interior peak");
  }
  const double a_pk = samples.p2p_mm[i_pk];
  const double a_lo = samples.p2p_mm.front();
  if (!(a_pk > 1.05 * a_lo)) {
    throw FitError("response is too flat to resolve a resonance");
  }

  const double q0 = std::clamp(a_pk / a_lo, 1.0, 100.0);
  const double f0 =
      samples.frequency_hz[i_pk] / std::sqrt(std::max(0.25, 1 - 1 / (2 * q0 * q0)));

  // Nelder-Mead in log-parameter space; the surface is smooth and the start
  // is close, so a plain simplex converges tightly on noiseless data.
  auto eval = [&](double lf, double lq) {
    return sse(samples, std::exp(lf), std::exp(lq));
  };
  struct Vertex {
    double lf, lq, e;
  };
  std::array<Vertex, 3> v{{{std::log(f0), std::log(q0), 0},
                           {std::log(f0) + 0.05, std::log(q0), 0},
                           {std::log(f0), std::log(q0) + 0.05, 0}}};
  for (auto& p : v) p.e = eval(p.lf, p.lq);
  for (int iter = 0; iter < 400; ++iter) {
    std::sort(v.begin(), v.end(), [](const Vertex& a, const Vertex& b) { return a.e < b.e; });
    if (std::abs(v[2].lf - v[0].lf) + std::abs(v[2].lq - v[0].lq) < 1e-13) break;
    const double cf = 0.5 * (v[0].lf + v[1].lf);
    const double cq = 0.5 * (v[0].lq + v[1].lq);
    Vertex refl{cf + (cf - v[2].lf), cq + (cq - v[2].lq), 0};
    refl.e = eval(refl.lf, refl.lq);
    if (refl.e < v[0].e) {
      Vertex exp_{cf + 2 * (cf - v[2].lf), cq + 2 * (cq - v[2].lq), 0};
      exp_.e = eval(exp_.lf, exp_.lq);
      v[2] = exp_.e < refl.e ? exp_ : refl;
    } else if (refl.e < v[1].e) {
      v[2] = refl;
    } else {
      Vertex contr{cf + 0.5 * (v[2].lf - cf), cq + 0.5 * (v[2].lq - cq), 0};
      contr.e = eval(contr.lf, contr.lq);
      if (contr.e < v[2].e) {
        v[2] = contr;
      } else {
        for (int i = 1; i < 3; ++i) {
          v[i].lf = v[0].lf + 0.5 * (v[i].lf - v[0].lf);
          v[i].lq = v[0].lq + 0.5 * (v[i].lq - v[0].lq);
          v[i].e = eval(v[i].lf, v[i].lq);
        }
      }
    }
  }
  std::sort(v.begin(), v.end(), [](const Vertex& a, const Vertex& b) { return a.e < b.e; });
  return {std::exp(v[0].lf), std::exp(v[0].lq)};
}

double quasi_static_leg_displacement(const TransmissionModel& m, double voltage_v,
                                     double rated_voltage_v) {
  m.validate();
  if (voltage_v < 0 || voltage_v > rated_voltage_v) {
    throw DomainError("voltage must lie in [0, rated]");
  }
  return m.quasi_static_gain_um_v * 1e-3 * voltage_v;  // mm
}

}  // namespace hamrsim
