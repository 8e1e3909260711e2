#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bellsim/analysis.hpp"

namespace bellsim {

// Noise figures typical of Josephson charge qubits: splitting 1e11 rad/s,
// 1/f rms at 2% of the splitting, white level 2e6 1/s, 40 mK.
inline NoiseParams josephson_noise_defaults() {
  NoiseParams p;
  p.omega = 1e11;
  p.sigma = 0.02 * p.omega;
  p.sf = 2e6;
  p.temperature = 0.04;
  return p;
}

// ---------------------------------------------------------------------------
// Figure 1: adiabatic-noise Bell maximum surfaces.

struct Fig1Row {
  double omega_t = 0;
  double param = 0;  // |a|^2 for panel a, r for panel b
  double b = 0;
};

enum class Fig1Panel { A, B };

// Panel a: B over (omega t, |a|^2) at fixed r = 0.9.
// Panel b: B over (omega t, r) at fixed a = 1/sqrt(2).
// Rows are emitted param-major, omega_t inner.
inline std::vector<Fig1Row> fig1_grid(Fig1Panel panel, int n_time = 201, int n_param = 101) {
  if (n_time < 2 || n_param < 2) throw std::invalid_argument("fig1_grid: grid too small");
  const double t_max = 1e4;
  std::vector<Fig1Row> rows;
  rows.reserve(static_cast<std::size_t>(n_time) * n_param);
  for (int ip = 0; ip < n_param; ++ip) {
    const double param = static_cast<double>(ip) / (n_param - 1);
    SweepConfig cfg;
    cfg.noise = josephson_noise_defaults();
    cfg.mode = NoiseMode::Adiabatic;
    cfg.t_max = t_max;
    cfg.n_steps = n_time;
    cfg.ewl.family = EwlFamily::Phi;
    if (panel == Fig1Panel::A) {
      cfg.ewl.r = 0.9;
      cfg.ewl.a2 = param;
    } else {
      cfg.ewl.r = param;
      cfg.ewl.a2 = 0.5;
    }
    for (const SweepRecord& rec : time_sweep(cfg))
      rows.push_back({rec.omega_t, param, rec.b});
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Figure 2: violation-sudden-death time versus purity.

struct Fig2Row {
  std::string mode;
  double r = 0;
  std::optional<double> omega_t_vsd;
  VsdFlag flag = VsdFlag::Found;
  std::string label;  // "P_exp" on the marked experimental point
};

struct Fig2Options {
  double r_min = 0.72;
  double r_max = 0.999;
  int n_r = 200;
  double r_cap = 0.9999;  // adiabatic rows above this purity report "asymptotic"
  double t_max = 1e5;
  int scan_resolution = 10000;
  double r_marked = 0.91;
};

inline Fig2Row fig2_point(NoiseMode mode, double r, const Fig2Options& opt) {
  SweepConfig cfg;
  cfg.noise = josephson_noise_defaults();
  cfg.mode = mode;
  cfg.ewl = {EwlFamily::Phi, r, 0.5, 0.0};
  cfg.t_max = opt.t_max;
  cfg.scan_resolution = opt.scan_resolution;

  Fig2Row row;
  row.mode = to_string(mode);
  row.r = r;
  if (mode == NoiseMode::Adiabatic) {
    if (r > opt.r_cap) {
      row.flag = VsdFlag::Asymptotic;
      return row;
    }
    // The closed-form root locates the crossing; give the numeric
    // root-finder a horizon just beyond it.
    const auto closed =
        vsd_time_adiabatic_closed_form(r, cfg.ewl.a(), cfg.noise.sigma / cfg.noise.omega);
    if (closed) cfg.t_max = std::max(opt.t_max, 2.2 * *closed);
  }
  const VsdResult vsd = vsd_time(cfg);
  row.omega_t_vsd = vsd.omega_t;
  row.flag = vsd.flag;
  return row;
}

inline std::vector<Fig2Row> fig2_rows(const Fig2Options& opt = {}) {
  if (opt.n_r < 2 || !(opt.r_max > opt.r_min))
    throw std::invalid_argument("fig2_rows: bad r grid");
  std::vector<Fig2Row> rows;
  const NoiseMode modes[3] = {NoiseMode::Adiabatic, NoiseMode::Quantum, NoiseMode::Both};
  for (NoiseMode mode : modes) {
    for (int i = 0; i < opt.n_r; ++i) {
      const double r = opt.r_min + (opt.r_max - opt.r_min) * i / (opt.n_r - 1);
      rows.push_back(fig2_point(mode, r, opt));
    }
  }
  Fig2Row marked = fig2_point(NoiseMode::Both, opt.r_marked, opt);
  marked.label = "P_exp";
  rows.push_back(marked);
  return rows;
}

// ---------------------------------------------------------------------------
// Figure 3: Bell maximum versus concurrence for the two Bell states.

struct Fig3Row {
  std::string family;
  double omega_t = 0;
  double c = 0;
  double b = 0;
  std::string label;  // "1".."5" on the omega_t = 1000..5000 markers
};

struct Fig3Options {
  double t_max = 6000;
  int n_steps = 1201;
};

inline SweepConfig fig3_config(EwlFamily family, const Fig3Options& opt = {}) {
  SweepConfig cfg;
  cfg.noise = josephson_noise_defaults();
  cfg.mode = NoiseMode::Both;
  cfg.ewl = {family, 1.0, 0.5, 0.0};
  cfg.t_max = opt.t_max;
  cfg.n_steps = opt.n_steps;
  return cfg;
}

inline std::vector<Fig3Row> fig3_rows(const Fig3Options& opt = {}) {
  std::vector<Fig3Row> rows;
  for (EwlFamily family : {EwlFamily::Phi, EwlFamily::Psi}) {
    const std::string name = family == EwlFamily::Phi ? "phi" : "psi";
    const SweepConfig cfg = fig3_config(family, opt);
    for (const BcPoint& p : b_vs_c_trace(cfg))
      rows.push_back({name, p.omega_t, p.c, p.b, ""});
    // Dot markers at 10^-3 omega t = 1..5, evaluated exactly.
    for (int i = 1; i <= 5; ++i) {
      const double omega_t = 1000.0 * i;
      const XState x = evolved_state(cfg, omega_t);
      rows.push_back({name, omega_t, concurrence_x(x), bell_max_x(x).b, std::to_string(i)});
    }
  }
  return rows;
}

}  // namespace bellsim
