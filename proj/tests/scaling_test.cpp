#include <doctest.h>

#include <cmath>
#include <random>

#include "hamrsim/errors.hpp"
#include "hamrsim/scaling.hpp"

using namespace hamrsim;

namespace {

// Independent oracles for the derived expectations: mass goes with volume,
// flexure stiffness with the bending rule w t^3 / l.
double volume_mass_oracle(const BodyPlan& p, const AllometricTransform& t) {
  const double v0 = p.body_length_mm * p.body_width_mm * p.chassis_thickness_um;
  const double v1 = (t.s_length * p.body_length_mm) * (t.s_width * p.body_width_mm) *
                    (t.s_thickness * p.chassis_thickness_um);
  return p.body_mass_g * v1 / v0;
}

double beam_stiffness_oracle(const FlexureSpec& f, const FlexureSpec& g) {
  auto wt3l = [](const FlexureSpec& x) {
    return x.width_um * x.thickness_um * x.thickness_um * x.thickness_um / x.length_um;
  };
  return wt3l(g) / wt3l(f);
}

BodyPlan sample_plan() { return {45.1, 18.0, 1.41, 100.0}; }

ActuatorSpec sample_actuator() {
  return {9.0, 3.2, 200.0, 600.0, 3000.0, 3.6, 40.0, 200.0};
}

FlexureSpec sample_flexure() { return {300.0, 1600.0, 7.5, 0.35, 0.2}; }

AllometricTransform random_transform(std::mt19937& rng) {
  std::uniform_real_distribution<double> d(0.25, 3.0);
  return {d(rng), d(rng), d(rng)};
}

}  // namespace

TEST_CASE("chassis scaling") {
  const AllometricTransform half{0.5, 0.5, 1.0};
  const BodyPlan scaled = scale_chassis(sample_plan(), half);
  CHECK(scaled.body_length_mm == doctest::Approx(22.55).epsilon(1e-12));
  CHECK(scaled.body_mass_g == doctest::Approx(0.3525).epsilon(1e-12));
  CHECK(scaled.body_width_mm == doctest::Approx(9.0).epsilon(1e-12));
  CHECK(scaled.chassis_thickness_um == doctest::Approx(100.0).epsilon(1e-12));

  SUBCASE("identity is a fixed point") {
    const BodyPlan same = scale_chassis(sample_plan(), {1, 1, 1});
    CHECK(same.body_length_mm == sample_plan().body_length_mm);
    CHECK(same.body_mass_g == sample_plan().body_mass_g);
  }
  SUBCASE("mass follows volume") {
    const AllometricTransform thick{1, 1, 2};
    const BodyPlan t = scale_chassis(sample_plan(), thick);
    CHECK(t.body_mass_g == doctest::Approx(2.82).epsilon(1e-12));
    CHECK(t.body_mass_g ==
          doctest::Approx(volume_mass_oracle(sample_plan(), thick)).epsilon(1e-12));
  }
  SUBCASE("non-positive factor rejected") {
    CHECK_THROWS_AS(scale_chassis(sample_plan(), {0, 1, 1}), DomainError);
    CHECK_THROWS_AS(scale_chassis(sample_plan(), {1, -0.5, 1}), DomainError);
  }
}

TEST_CASE("actuator scaling") {
  const AllometricTransform half{0.5, 0.5, 1.0};
  const ActuatorSpec a = sample_actuator();
  const ActuatorSpec s = scale_actuator(a, half);
  CHECK(s.free_deflection_um == doctest::Approx(a.free_deflection_um / 4).epsilon(1e-12));
  CHECK(s.blocked_force_mn == doctest::Approx(a.blocked_force_mn).epsilon(1e-12));
  CHECK(s.stiffness_n_m == doctest::Approx(4 * a.stiffness_n_m).epsilon(1e-12));
  CHECK(s.capacitance_nf == doctest::Approx(a.capacitance_nf / 4).epsilon(1e-12));
  CHECK(s.resistance_mohm == doctest::Approx(4 * a.resistance_mohm).epsilon(1e-12));
  CHECK(s.rated_voltage_v == a.rated_voltage_v);

  SUBCASE("identity") {
    const ActuatorSpec same = scale_actuator(a, {1, 1, 1});
    CHECK(same.stiffness_n_m == a.stiffness_n_m);
  }
  SUBCASE("consistency preserved under random transforms") {
    std::mt19937 rng(7);
    for (int i = 0; i < 50; ++i) {
      const ActuatorSpec out = scale_actuator(a, random_transform(rng));
      CHECK(out.stiffness_n_m ==
            doctest::Approx(out.blocked_force_mn / out.free_deflection_um * 1e3)
                .epsilon(1e-9));
      out.validate();
    }
  }
}

TEST_CASE("flexure scaling") {
  const FlexureSpec f = sample_flexure();
  SUBCASE("half transform at fixed length") {
    const FlexureSpec s = scale_flexure(f, {0.5, 0.5, 1.0});
    CHECK(s.stiffness_n_mm_rad == doctest::Approx(f.stiffness_n_mm_rad / 2).epsilon(1e-12));
    CHECK(s.max_angle_rad == f.max_angle_rad);
    CHECK(s.length_um == f.length_um);
  }
  SUBCASE("doubled thickness gives 8x stiffness, matching the beam rule") {
    const AllometricTransform thick{1, 1, 2};
    const FlexureSpec s = scale_flexure(f, thick);
    CHECK(s.stiffness_n_mm_rad == doctest::Approx(8 * f.stiffness_n_mm_rad).epsilon(1e-12));
    CHECK(s.stiffness_n_mm_rad / f.stiffness_n_mm_rad ==
          doctest::Approx(beam_stiffness_oracle(f, s)).epsilon(1e-12));
  }
  SUBCASE("identity") {
    const FlexureSpec s = scale_flexure(f, {1, 1, 1});
    CHECK(s.stiffness_n_mm_rad == f.stiffness_n_mm_rad);
  }
  SUBCASE("beam rule holds with scaled length too") {
    std::mt19937 rng(11);
    for (int i = 0; i < 50; ++i) {
      const AllometricTransform t = random_transform(rng);
      const FlexureSpec s = scale_flexure(f, t, true);
      CHECK(s.stiffness_n_mm_rad / f.stiffness_n_mm_rad ==
            doctest::Approx(beam_stiffness_oracle(f, s)).epsilon(1e-9));
    }
  }
}

TEST_CASE("total stiffness factor conventions") {
  const AllometricTransform half{0.5, 0.5, 1.0};
  CHECK(total_stiffness_factor(half) == doctest::Approx(4.5).epsilon(1e-12));
  // The factor-sum convention does not collapse to 1 at identity; that is
  // the documented oddity of summing the two factors directly.
  CHECK(total_stiffness_factor({1, 1, 1}) == doctest::Approx(2.0).epsilon(1e-12));

  SUBCASE("component route is the parallel-spring sum") {
    const double k_act = 10.0, k_flex = 6.0;
    CHECK(scaled_total_stiffness(k_act, k_flex, half) ==
          doctest::Approx(4 * k_act + 0.5 * k_flex).epsilon(1e-12));
  }
}

TEST_CASE("resonance and speed factors") {
  CHECK(resonance_factor(4.5, 0.25) == doctest::Approx(std::sqrt(18.0)).epsilon(1e-12));
  CHECK(resonance_factor(1, 1) == 1.0);
  CHECK(81.3 * resonance_factor(4.5, 0.25) == doctest::Approx(344.93).epsilon(1e-3));
  CHECK_THROWS_AS(resonance_factor(0, 1), DomainError);
  CHECK_THROWS_AS(resonance_factor(1, -2), DomainError);

  CHECK(speed_factor(0.25, std::sqrt(18.0)) == doctest::Approx(1.06066).epsilon(1e-5));
  CHECK(speed_factor(1, 1) == 1.0);

  SUBCASE("scale invariance of the resonance factor") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> d(0.1, 10.0);
    for (int i = 0; i < 50; ++i) {
      const double k = d(rng), m = d(rng), a = d(rng);
      CHECK(resonance_factor(a * k, a * m) ==
            doctest::Approx(resonance_factor(k, m)).epsilon(1e-12));
    }
  }
}

TEST_CASE("transform composition") {
  std::mt19937 rng(5);
  const BodyPlan plan = sample_plan();
  const ActuatorSpec act = sample_actuator();
  for (int i = 0; i < 30; ++i) {
    const AllometricTransform t1 = random_transform(rng);
    const AllometricTransform t2 = random_transform(rng);
    const AllometricTransform t12 = t1.compose(t2);

    const BodyPlan two_step = scale_chassis(scale_chassis(plan, t1), t2);
    const BodyPlan one_step = scale_chassis(plan, t12);
    CHECK(two_step.body_mass_g == doctest::Approx(one_step.body_mass_g).epsilon(1e-12));
    CHECK(two_step.body_length_mm == doctest::Approx(one_step.body_length_mm).epsilon(1e-12));

    const ActuatorSpec a2 = scale_actuator(scale_actuator(act, t1), t2);
    const ActuatorSpec a1 = scale_actuator(act, t12);
    CHECK(a2.stiffness_n_m == doctest::Approx(a1.stiffness_n_m).epsilon(1e-12));
    CHECK(a2.capacitance_nf == doctest::Approx(a1.capacitance_nf).epsilon(1e-12));
    CHECK(mass_factor(t1) * mass_factor(t2) == doctest::Approx(mass_factor(t12)).epsilon(1e-12));
  }
}

TEST_CASE("actuator spec invariant enforcement") {
  ActuatorSpec bad = sample_actuator();
  bad.stiffness_n_m *= 1.001;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}
