#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bellsim/evolve.hpp"
#include "bellsim/measures.hpp"
#include "bellsim/noise.hpp"
#include "bellsim/qstate.hpp"

namespace bellsim {

// Sweep configuration.  Times are dimensionless (omega * t) throughout;
// both qubits share the same NoiseParams.
struct SweepConfig {
  EwlParams ewl;
  NoiseParams noise;
  NoiseMode mode = NoiseMode::Both;
  double t_max = 1e5;        // omega * t at the end of the grid
  int n_steps = 1000;
  int scan_resolution = 10000;

  void validate() const {
    ewl.validate();
    noise.validate();
    if (!(t_max > 0)) throw std::invalid_argument("SweepConfig: t_max must be > 0");
    if (n_steps < 2) throw std::invalid_argument("SweepConfig: n_steps must be >= 2");
    if (scan_resolution < 100)
      throw std::invalid_argument("SweepConfig: scan_resolution must be >= 100");
  }
};

struct SweepRecord {
  double omega_t = 0;
  double b = 0, b1 = 0, b2 = 0;
  double u1 = 0, u2 = 0, u3 = 0;
  double c = 0;
  double p11 = 0, p22 = 0, p33 = 0, p44 = 0;
  double c14_abs = 0, c23_abs = 0;
};

using SweepSeries = std::vector<SweepRecord>;

// Initial state evolved to dimensionless time omega_t.
inline XState evolved_state(const SweepConfig& cfg, double omega_t) {
  const double t = omega_t / cfg.noise.omega;
  return apply_x(two_qubit_map(t, cfg.noise, cfg.mode), ewl_state(cfg.ewl));
}

inline double bell_at(const SweepConfig& cfg, double omega_t) {
  return bell_max_x(evolved_state(cfg, omega_t)).b;
}

// Adiabatic-noise Bell maximum in closed form, in dimensionless time:
//   B_ad = 2 r sqrt(1 + 4 |ab|^2 / (1 + (sigma/omega)^4 (omega t)^2)).
inline double bell_ad_closed_form(double omega_t, double r, Complex a,
                                  double sigma_over_omega) {
  if (!(r >= 0 && r <= 1)) throw std::invalid_argument("bell_ad_closed_form: r in [0,1]");
  if (!(sigma_over_omega >= 0))
    throw std::invalid_argument("bell_ad_closed_form: sigma_over_omega must be >= 0");
  const double a_abs2 = std::norm(a);
  if (a_abs2 > 1.0 + 1e-12) throw std::invalid_argument("bell_ad_closed_form: |a| <= 1");
  const double ab2 = a_abs2 * std::max(0.0, 1.0 - a_abs2);
  const double s2 = sigma_over_omega * sigma_over_omega;
  const double y = s2 * s2 * omega_t * omega_t;
  return 2.0 * r * std::sqrt(1.0 + 4.0 * ab2 / (1.0 + y));
}

// Dimensionless time at which B_ad reaches 2, solving the closed form above:
//   omega t = (omega/sigma)^2 sqrt(4 |ab|^2 r^2 / (1 - r^2) - 1).
// Returns nothing when the state does not violate at t = 0 or when r = 1
// (the threshold is only reached asymptotically).
inline std::optional<double> vsd_time_adiabatic_closed_form(double r, Complex a,
                                                            double sigma_over_omega) {
  if (!(r >= 0 && r <= 1)) throw std::invalid_argument("vsd closed form: r in [0,1]");
  if (!(sigma_over_omega > 0))
    throw std::invalid_argument("vsd closed form: sigma_over_omega must be > 0");
  if (r >= 1.0) return std::nullopt;
  const double a_abs2 = std::norm(a);
  const double ab2 = a_abs2 * std::max(0.0, 1.0 - a_abs2);
  const double radicand = 4.0 * ab2 * r * r / (1.0 - r * r) - 1.0;
  if (radicand < 0) return std::nullopt;
  const double inv_ratio2 = 1.0 / (sigma_over_omega * sigma_over_omega);
  return inv_ratio2 * std::sqrt(radicand);
}

// Alternative algebraic form with a (1-r)^2 denominator in place of
// (1-r^2).  It does NOT solve B_ad = 2 (the root above does); it is kept
// so both values can be reported side by side for comparison.
inline std::optional<double> vsd_time_adiabatic_variant_form(double r, Complex a,
                                                             double sigma_over_omega) {
  if (!(r >= 0 && r <= 1)) throw std::invalid_argument("vsd variant form: r in [0,1]");
  if (!(sigma_over_omega > 0))
    throw std::invalid_argument("vsd variant form: sigma_over_omega must be > 0");
  if (r >= 1.0) return std::nullopt;
  const double a_abs2 = std::norm(a);
  const double ab2 = a_abs2 * std::max(0.0, 1.0 - a_abs2);
  const double radicand = 4.0 * ab2 * r * r / ((1.0 - r) * (1.0 - r)) - 1.0;
  if (radicand < 0) return std::nullopt;
  const double inv_ratio2 = 1.0 / (sigma_over_omega * sigma_over_omega);
  return inv_ratio2 * std::sqrt(radicand);
}

inline SweepSeries time_sweep(const SweepConfig& cfg) {
  cfg.validate();
  SweepSeries series;
  series.reserve(cfg.n_steps);
  for (int j = 0; j < cfg.n_steps; ++j) {
    const double omega_t = cfg.t_max * static_cast<double>(j) / (cfg.n_steps - 1);
    const XState x = evolved_state(cfg, omega_t);
    const BellResult bell = bell_max_x(x);
    SweepRecord rec;
    rec.omega_t = omega_t;
    rec.b = bell.b;
    rec.b1 = bell.b1;
    rec.b2 = bell.b2;
    rec.u1 = bell.u1;
    rec.u2 = bell.u2;
    rec.u3 = bell.u3;
    rec.c = concurrence_x(x);
    rec.p11 = x.p11;
    rec.p22 = x.p22;
    rec.p33 = x.p33;
    rec.p44 = x.p44;
    rec.c14_abs = std::abs(x.c14);
    rec.c23_abs = std::abs(x.c23);
    series.push_back(rec);
  }
  return series;
}

enum class VsdFlag { Found, NoInitialViolation, Asymptotic, ExceedsHorizon };

inline const char* to_string(VsdFlag f) {
  switch (f) {
    case VsdFlag::Found: return "found";
    case VsdFlag::NoInitialViolation: return "no-initial-violation";
    case VsdFlag::Asymptotic: return "asymptotic";
    default: return "exceeds-horizon";
  }
}

struct VsdResult {
  std::optional<double> omega_t;
  VsdFlag flag = VsdFlag::Found;
};

// First time at which B(t) = 2: a uniform scan brackets the first sign
// change of B - 2 (combined-mode traces are expected monotone but this is
// not assumed), then bisection narrows the bracket to 1e-9 * t_max.
inline VsdResult vsd_time(const SweepConfig& cfg) {
  cfg.validate();
  if (bell_at(cfg, 0.0) <= 2.0) return {std::nullopt, VsdFlag::NoInitialViolation};
  if (cfg.mode == NoiseMode::Adiabatic && cfg.ewl.r >= 1.0)
    return {std::nullopt, VsdFlag::Asymptotic};

  const int n = cfg.scan_resolution;
  double lo = 0.0;
  double hi = 0.0;
  bool bracketed = false;
  for (int k = 1; k <= n; ++k) {
    const double tau = cfg.t_max * static_cast<double>(k) / n;
    const double f = bell_at(cfg, tau) - 2.0;
    if (f <= 0.0) {
      lo = cfg.t_max * static_cast<double>(k - 1) / n;
      hi = tau;
      bracketed = true;
      break;
    }
  }
  if (!bracketed) return {std::nullopt, VsdFlag::ExceedsHorizon};

  const double width_goal = 1e-9 * cfg.t_max;
  while (hi - lo > width_goal) {
    const double mid = 0.5 * (lo + hi);
    if (bell_at(cfg, mid) - 2.0 > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return {0.5 * (lo + hi), VsdFlag::Found};
}

struct BcPoint {
  double c = 0;
  double b = 0;
  double omega_t = 0;
};

// (C, B) pairs of the sweep in time order, for parametric plotting.
inline std::vector<BcPoint> b_vs_c_trace(const SweepConfig& cfg) {
  const SweepSeries series = time_sweep(cfg);
  std::vector<BcPoint> out;
  out.reserve(series.size());
  for (const SweepRecord& rec : series) out.push_back({rec.c, rec.b, rec.omega_t});
  return out;
}

struct CThresholdResult {
  double c = 0;
  VsdFlag flag = VsdFlag::Found;
};

// Concurrence at the B = 2 crossing.  In the asymptotic case (adiabatic
// noise, pure state) the crossing is reached only in the limit, where the
// coherences have fully defocused and C = 0.
inline CThresholdResult c_threshold(const SweepConfig& cfg) {
  const VsdResult vsd = vsd_time(cfg);
  switch (vsd.flag) {
    case VsdFlag::Found:
      return {concurrence_x(evolved_state(cfg, *vsd.omega_t)), VsdFlag::Found};
    case VsdFlag::Asymptotic:
      return {0.0, VsdFlag::Asymptotic};
    case VsdFlag::NoInitialViolation:
      throw std::runtime_error("c_threshold: no violation region");
    default:
      throw std::runtime_error("c_threshold: no B = 2 crossing within t_max");
  }
}

}  // namespace bellsim
