#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "bellsim/rng.hpp"
#include "bellsim/types.hpp"

namespace bellsim {

enum class NoiseMode { Adiabatic, Quantum, Both };

inline const char* to_string(NoiseMode m) {
  switch (m) {
    case NoiseMode::Adiabatic: return "adiabatic";
    case NoiseMode::Quantum: return "quantum";
    default: return "both";
  }
}

// Physical noise configuration for one qubit.  Only the optimal working
// point theta = pi/2 is supported: there the low-frequency noise couples
// transversally and enters the phase at second order only, which is what
// the defocusing factor below assumes.
struct NoiseParams {
  double omega = 1e11;        // qubit angular splitting, rad/s
  double sigma = 2e9;         // rms of the low-frequency noise, rad/s
  double sf = 2e6;            // symmetrized high-frequency level S_f(omega), 1/s
  double temperature = 0.04;  // K
  double theta = std::numbers::pi / 2;

  // 1/f band edges and spectral prefactor; only used when recovering sigma
  // from a measured spectrum.
  std::optional<double> gamma_m;
  std::optional<double> gamma_big_m;
  std::optional<double> a1f;

  void validate() const {
    if (!(omega > 0)) throw std::invalid_argument("NoiseParams: omega must be > 0");
    if (!(sigma >= 0)) throw std::invalid_argument("NoiseParams: sigma must be >= 0");
    if (!(sf >= 0)) throw std::invalid_argument("NoiseParams: sf must be >= 0");
    if (!(temperature > 0)) throw std::invalid_argument("NoiseParams: temperature must be > 0");
    if (theta != std::numbers::pi / 2)
      throw std::invalid_argument("NoiseParams: only theta = pi/2 is supported");
    if (gamma_m || gamma_big_m) {
      if (!(gamma_m && gamma_big_m && *gamma_big_m > *gamma_m && *gamma_m > 0))
        throw std::invalid_argument("NoiseParams: band edges require gamma_M > gamma_m > 0");
    }
  }
};

// Recovers the rms amplitude Sigma from the 1/f spectrum
// S(omega) = a1f / omega with a1f = pi Sigma^2 / ln(gamma_M/gamma_m).
// The displayed normalization is used verbatim; whether the underlying
// spectrum is one- or two-sided is absorbed into a1f.
inline double sigma_from_spectrum(double a1f, double gamma_m, double gamma_big_m) {
  if (!(a1f > 0) || !(gamma_m > 0) || !(gamma_big_m > gamma_m))
    throw std::invalid_argument("sigma_from_spectrum: need a1f > 0 and gamma_M > gamma_m > 0");
  return std::sqrt(a1f * std::log(gamma_big_m / gamma_m) / std::numbers::pi);
}

struct RelaxationRates {
  double t1 = 0;    // s; +inf when sf == 0 (no quantum noise)
  double t2 = 0;    // s; secular relation t2 = 2 t1
  double p_eq = 0;  // asymptotic excited-state population
};

// T1 = 2 / S_f(omega); T2 = 2 T1; equilibrium population from the two-level
// Gibbs factor at the device temperature.
inline RelaxationRates relaxation_rates(const NoiseParams& p) {
  p.validate();
  RelaxationRates r;
  r.t1 = p.sf > 0 ? 2.0 / p.sf : std::numeric_limits<double>::infinity();
  r.t2 = 2.0 * r.t1;
  r.p_eq = 1.0 / (1.0 + std::exp(kHBar * p.omega / (kBoltzmann * p.temperature)));
  return r;
}

// Static-path defocusing factor: the average of exp(-i xi^2 t / (2 omega))
// over xi ~ Normal(0, sigma^2), i.e. D(t) = (1 + i sigma^2 t/omega)^(-1/2)
// on the principal branch.  |D|^2 = (1 + sigma^4 t^2/omega^2)^(-1/2).
// The sign of the quadratic frequency shift only flips the phase of D;
// all reported observables depend on |D| alone.
inline Complex adiabatic_defocus(double t, const NoiseParams& p) {
  p.validate();
  if (t < 0) throw std::invalid_argument("adiabatic_defocus: t must be >= 0");
  const double x = p.sigma * p.sigma * t / p.omega;
  return 1.0 / std::sqrt(Complex(1.0, x));
}

struct McEstimate {
  Complex estimate{0, 0};
  double std_error = 0;
};

// Monte-Carlo check of adiabatic_defocus: averages exp(-i xi^2 t/(2 omega))
// over n_samples seeded Gaussian draws and reports the standard error of
// the complex mean.
inline McEstimate mc_defocus_oracle(double t, const NoiseParams& p, long n_samples,
                                    std::uint64_t seed) {
  p.validate();
  if (t < 0) throw std::invalid_argument("mc_defocus_oracle: t must be >= 0");
  if (n_samples < 1000) throw std::invalid_argument("mc_defocus_oracle: n_samples must be >= 1000");
  SplitMix64 rng(seed);
  double sum_re = 0, sum_im = 0, sum_re2 = 0, sum_im2 = 0;
  const double scale = t / (2.0 * p.omega);
  for (long k = 0; k < n_samples; ++k) {
    const double xi = p.sigma * rng.next_normal();
    const double phase = -xi * xi * scale;
    const double re = std::cos(phase);
    const double im = std::sin(phase);
    sum_re += re;
    sum_im += im;
    sum_re2 += re * re;
    sum_im2 += im * im;
  }
  const double n = static_cast<double>(n_samples);
  const double mean_re = sum_re / n;
  const double mean_im = sum_im / n;
  McEstimate out;
  out.estimate = Complex(mean_re, mean_im);
  const double var_re = std::max(0.0, sum_re2 / n - mean_re * mean_re);
  const double var_im = std::max(0.0, sum_im2 / n - mean_im * mean_im);
  out.std_error = std::sqrt((var_re + var_im) / n);
  return out;
}

// Structured single-qubit dynamical map at time t.  Action on a qubit
// density matrix:
//   p_e(t)    = p_eq + (p_e(0) - p_eq) * pop_survival
//   rho_10(t) = coherence_factor * rho_10(0)     (excited-to-ground element)
// with the ground population fixed by the trace.
struct SingleQubitMap {
  double time = 0;
  double pop_survival = 1;      // exp(-t/T1)
  double p_eq = 0;
  Complex coherence_factor{1, 0};
};

inline SingleQubitMap single_qubit_map(double t, const NoiseParams& p, NoiseMode mode) {
  p.validate();
  if (t < 0) throw std::invalid_argument("single_qubit_map: t must be >= 0");
  const RelaxationRates rates = relaxation_rates(p);
  SingleQubitMap m;
  m.time = t;
  m.p_eq = rates.p_eq;
  const Complex free_phase = std::polar(1.0, -p.omega * t);
  switch (mode) {
    case NoiseMode::Adiabatic:
      m.pop_survival = 1.0;
      m.coherence_factor = free_phase * adiabatic_defocus(t, p);
      break;
    case NoiseMode::Quantum:
      m.pop_survival = std::exp(-t / rates.t1);
      m.coherence_factor = free_phase * std::exp(-t / rates.t2);
      break;
    case NoiseMode::Both:
      m.pop_survival = std::exp(-t / rates.t1);
      m.coherence_factor = free_phase * std::exp(-t / rates.t2) * adiabatic_defocus(t, p);
      break;
  }
  return m;
}

}  // namespace bellsim
