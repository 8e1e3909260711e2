#include <doctest.h>

#include "bellsim/analysis.hpp"
#include "bellsim/figures.hpp"
#include "test_helpers.hpp"

using namespace bellsim;

namespace {

SweepConfig reference_config(EwlFamily family, double r, NoiseMode mode) {
  SweepConfig cfg;
  cfg.noise = josephson_noise_defaults();
  cfg.ewl = {family, r, 0.5, 0.0};
  cfg.mode = mode;
  return cfg;
}

}  // namespace

TEST_CASE("SweepConfig validation") {
  SweepConfig cfg = reference_config(EwlFamily::Phi, 0.9, NoiseMode::Both);
  CHECK_NOTHROW(cfg.validate());
  cfg.n_steps = 1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.n_steps = 100;
  cfg.t_max = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.t_max = 10.0;
  cfg.scan_resolution = 10;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("bell_ad_closed_form values and limits") {
  CHECK(bell_ad_closed_form(0.0, 0.9, std::sqrt(Complex(0.5)), 0.02) ==
        doctest::Approx(1.8 * std::sqrt(2.0)).epsilon(1e-14));
  // t -> infinity approaches 2r
  CHECK(bell_ad_closed_form(1e12, 0.9, std::sqrt(Complex(0.5)), 0.02) ==
        doctest::Approx(1.8).epsilon(1e-6));
  CHECK(bell_ad_closed_form(1e12, 1.0, std::sqrt(Complex(0.5)), 0.02) ==
        doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("adiabatic pipeline equals the closed form") {
  SplitMix64 rng(0xe412);
  for (int trial = 0; trial < 50; ++trial) {
    SweepConfig cfg = reference_config(EwlFamily::Phi, rng.next_uniform(), NoiseMode::Adiabatic);
    cfg.ewl.a2 = rng.next_uniform();
    cfg.ewl.phase = 2.0 * std::numbers::pi * rng.next_uniform();
    if (rng.next_uniform() < 0.5) cfg.ewl.family = EwlFamily::Psi;
    const double ratio = cfg.noise.sigma / cfg.noise.omega;
    for (int k = 0; k < 20; ++k) {
      const double tau = 1e4 * rng.next_uniform();
      const double expected = bell_ad_closed_form(tau, cfg.ewl.r, cfg.ewl.a(), ratio);
      CHECK(std::abs(bell_at(cfg, tau) - expected) <= 1e-12);
    }
  }
}

TEST_CASE("vsd_time_adiabatic_closed_form: root and edge cases") {
  const Complex a = std::sqrt(Complex(0.5));
  const auto root = vsd_time_adiabatic_closed_form(0.9, a, 0.02);
  REQUIRE(root.has_value());
  CHECK(*root == doctest::Approx(2500.0 * std::sqrt(0.81 / 0.19 - 1.0)).epsilon(1e-14));
  CHECK(*root == doctest::Approx(4516.05).epsilon(1e-5));

  // below the violation threshold r = 1/sqrt(2): nothing to lose
  CHECK_FALSE(vsd_time_adiabatic_closed_form(0.5, a, 0.02).has_value());
  // pure state: asymptotic approach only
  CHECK_FALSE(vsd_time_adiabatic_closed_form(1.0, a, 0.02).has_value());

  // the (1-r)^2 variant disagrees grossly with the actual root
  const auto variant = vsd_time_adiabatic_variant_form(0.9, a, 0.02);
  REQUIRE(variant.has_value());
  CHECK(*variant == doctest::Approx(2500.0 * std::sqrt(80.0)).epsilon(1e-14));
  CHECK(*variant == doctest::Approx(22360.68).epsilon(1e-5));
}

TEST_CASE("time_sweep: grid structure and initial point") {
  SweepConfig cfg = reference_config(EwlFamily::Phi, 0.91, NoiseMode::Both);
  cfg.t_max = 4000.0;
  cfg.n_steps = 101;
  const SweepSeries series = time_sweep(cfg);
  REQUIRE(series.size() == 101);
  CHECK(series.front().omega_t == 0.0);
  CHECK(series.back().omega_t == doctest::Approx(4000.0).epsilon(1e-15));
  for (std::size_t i = 1; i < series.size(); ++i)
    CHECK(series[i].omega_t > series[i - 1].omega_t);

  // first record matches the initial-state measures
  const XState x0 = ewl_state(cfg.ewl);
  CHECK(series.front().b == doctest::Approx(bell_max_x(x0).b).epsilon(1e-14));
  CHECK(series.front().c == doctest::Approx(concurrence_x(x0)).epsilon(1e-14));

  // records are internally consistent
  for (const SweepRecord& rec : series) {
    CHECK(rec.b == std::max(rec.b1, rec.b2));
    CHECK(rec.b1 == doctest::Approx(2.0 * std::sqrt(rec.u1 + rec.u2)).epsilon(1e-13));
    CHECK(rec.b2 == doctest::Approx(2.0 * std::sqrt(rec.u1 + rec.u3)).epsilon(1e-13));
    CHECK(rec.b <= 2.0 * std::sqrt(2.0) + 1e-12);
  }
}

TEST_CASE("time_sweep: combined-mode Bell trace is monotone through the violation region") {
  SweepConfig cfg = reference_config(EwlFamily::Phi, 1.0, NoiseMode::Both);
  cfg.t_max = 2e4;
  cfg.n_steps = 400;
  const SweepSeries series = time_sweep(cfg);
  for (std::size_t i = 1; i < series.size(); ++i)
    CHECK(series[i].b <= series[i - 1].b + 1e-12);
}

TEST_CASE("adiabatic sweep matches the closed form at every grid point") {
  SweepConfig cfg = reference_config(EwlFamily::Phi, 0.9, NoiseMode::Adiabatic);
  cfg.t_max = 1e4;
  cfg.n_steps = 200;
  const double ratio = cfg.noise.sigma / cfg.noise.omega;
  for (const SweepRecord& rec : time_sweep(cfg))
    CHECK(std::abs(rec.b - bell_ad_closed_form(rec.omega_t, 0.9, cfg.ewl.a(), ratio)) <= 1e-12);
}

TEST_CASE("vsd_time: reference configurations") {
  // combined noise at the experimental purity
  const VsdResult both = vsd_time(reference_config(EwlFamily::Phi, 0.91, NoiseMode::Both));
  REQUIRE(both.flag == VsdFlag::Found);
  CHECK(*both.omega_t == doctest::Approx(3350.0).epsilon(0.03));

  // adiabatic-only matches its closed form
  const VsdResult ad = vsd_time(reference_config(EwlFamily::Phi, 0.9, NoiseMode::Adiabatic));
  REQUIRE(ad.flag == VsdFlag::Found);
  CHECK(*ad.omega_t ==
        doctest::Approx(*vsd_time_adiabatic_closed_form(0.9, std::sqrt(Complex(0.5)), 0.02))
            .epsilon(1e-6));

  // no initial violation
  const VsdResult none = vsd_time(reference_config(EwlFamily::Phi, 0.3, NoiseMode::Both));
  CHECK(none.flag == VsdFlag::NoInitialViolation);
  CHECK_FALSE(none.omega_t.has_value());

  // pure state under adiabatic noise: asymptotic
  const VsdResult asym = vsd_time(reference_config(EwlFamily::Phi, 1.0, NoiseMode::Adiabatic));
  CHECK(asym.flag == VsdFlag::Asymptotic);

  // crossing beyond the configured horizon
  SweepConfig short_horizon = reference_config(EwlFamily::Phi, 0.91, NoiseMode::Both);
  short_horizon.t_max = 100.0;
  CHECK(vsd_time(short_horizon).flag == VsdFlag::ExceedsHorizon);
}

TEST_CASE("vsd_time agrees with the adiabatic closed form over random states") {
  SplitMix64 rng(0x5eed);
  int checked = 0;
  while (checked < 50) {
    const double r = rng.next_uniform();
    const double a2 = rng.next_uniform();
    SweepConfig cfg = reference_config(EwlFamily::Phi, r, NoiseMode::Adiabatic);
    cfg.ewl.a2 = a2;
    const auto closed = vsd_time_adiabatic_closed_form(r, cfg.ewl.a(), 0.02);
    if (!closed || r >= 1.0) continue;
    cfg.t_max = std::max(1e5, 2.2 * *closed);
    const VsdResult vsd = vsd_time(cfg);
    REQUIRE(vsd.flag == VsdFlag::Found);
    CHECK(std::abs(*vsd.omega_t - *closed) <= 2e-9 * cfg.t_max);
    ++checked;
  }
}

TEST_CASE("vsd ordering: adiabatic noise acts first at moderate purity, last near r = 1") {
  for (double r : {0.75, 0.85, 0.95}) {
    const VsdResult ad = vsd_time(reference_config(EwlFamily::Phi, r, NoiseMode::Adiabatic));
    const VsdResult q = vsd_time(reference_config(EwlFamily::Phi, r, NoiseMode::Quantum));
    REQUIRE(ad.flag == VsdFlag::Found);
    REQUIRE(q.flag == VsdFlag::Found);
    CHECK(*ad.omega_t < *q.omega_t);
  }
  // near r -> 1 the ordering reverses (adiabatic VSD diverges)
  SweepConfig near_pure = reference_config(EwlFamily::Phi, 0.999, NoiseMode::Adiabatic);
  near_pure.t_max = 2e5;
  const VsdResult ad = vsd_time(near_pure);
  const VsdResult q = vsd_time(reference_config(EwlFamily::Phi, 0.999, NoiseMode::Quantum));
  REQUIRE(ad.flag == VsdFlag::Found);
  REQUIRE(q.flag == VsdFlag::Found);
  CHECK(*q.omega_t < *ad.omega_t);
}

TEST_CASE("family degeneracy: exact under adiabatic noise, near under combined noise") {
  SweepConfig phi = reference_config(EwlFamily::Phi, 0.91, NoiseMode::Adiabatic);
  SweepConfig psi = reference_config(EwlFamily::Psi, 0.91, NoiseMode::Adiabatic);
  phi.t_max = psi.t_max = 1e4;
  phi.n_steps = psi.n_steps = 500;
  const SweepSeries phi_series = time_sweep(phi);
  const SweepSeries psi_series = time_sweep(psi);
  for (std::size_t i = 0; i < phi_series.size(); ++i)
    CHECK(std::abs(phi_series[i].b - psi_series[i].b) <= 1e-12);

  // Combined mode: the two families differ at second order in (1 - gamma);
  // inside the violation region the gap stays below 5e-3 at this purity.
  phi.mode = psi.mode = NoiseMode::Both;
  const SweepSeries phi_both = time_sweep(phi);
  const SweepSeries psi_both = time_sweep(psi);
  double max_gap = 0.0;
  for (std::size_t i = 0; i < phi_both.size(); ++i) {
    if (phi_both[i].b < 2.0 && psi_both[i].b < 2.0) break;
    max_gap = std::max(max_gap, std::abs(phi_both[i].b - psi_both[i].b));
  }
  CHECK(max_gap > 0.0);
  CHECK(max_gap <= 5e-3);
}

TEST_CASE("b_vs_c_trace: initial point and monotone pairing") {
  SweepConfig cfg = fig3_config(EwlFamily::Phi);
  const auto trace = b_vs_c_trace(cfg);
  REQUIRE_FALSE(trace.empty());
  CHECK(trace.front().c == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(trace.front().b == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
  // B strictly increasing as a function of C along the trace
  for (std::size_t i = 1; i < trace.size(); ++i) {
    CHECK(trace[i].c < trace[i - 1].c);
    CHECK(trace[i].b < trace[i - 1].b);
  }
}

TEST_CASE("fig3 traces: Phi runs ahead of Psi in time at equal concurrence") {
  const auto phi = b_vs_c_trace(fig3_config(EwlFamily::Phi));
  const auto psi = b_vs_c_trace(fig3_config(EwlFamily::Psi));
  // At a fixed concurrence level, the Psi trace reaches it earlier.
  for (double level : {0.8, 0.6, 0.45}) {
    const auto cross = [&](const std::vector<BcPoint>& tr) {
      for (std::size_t i = 1; i < tr.size(); ++i)
        if (tr[i].c <= level) return tr[i].omega_t;
      return tr.back().omega_t;
    };
    CHECK(cross(psi) < cross(phi));
  }
}

TEST_CASE("c_threshold at the reference parameters") {
  const CThresholdResult phi = c_threshold(reference_config(EwlFamily::Phi, 1.0, NoiseMode::Both));
  CHECK(phi.flag == VsdFlag::Found);
  CHECK(phi.c == doctest::Approx(0.429).epsilon(0.01));

  const CThresholdResult psi = c_threshold(reference_config(EwlFamily::Psi, 1.0, NoiseMode::Both));
  CHECK(psi.flag == VsdFlag::Found);
  CHECK(psi.c == doctest::Approx(0.376).epsilon(0.01));

  const CThresholdResult asym =
      c_threshold(reference_config(EwlFamily::Phi, 1.0, NoiseMode::Adiabatic));
  CHECK(asym.flag == VsdFlag::Asymptotic);
  CHECK(asym.c == 0.0);

  CHECK_THROWS_WITH_AS(c_threshold(reference_config(EwlFamily::Phi, 0.3, NoiseMode::Both)),
                       doctest::Contains("no violation region"), std::runtime_error);
}
