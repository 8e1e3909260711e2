// bellsim: deterministic simulator of CHSH Bell-function and concurrence
// decay for two noninteracting qubits under independent broadband noise
// (quasi-static 1/f defocusing plus Markovian relaxation).  Subcommands
// reproduce the standard figure datasets and run generic sweeps / VSD
// searches; everything is emitted as CSV or JSON with a run manifest.

#include <CLI11.hpp>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bellsim/analysis.hpp"
#include "bellsim/figures.hpp"
#include "bellsim/io.hpp"
#include "bellsim/serialize.hpp"

namespace {

using namespace bellsim;

std::string optional_field(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string{};
}

// Writes `csv` (or the JSON equivalent) to `path` together with a manifest
// carrying the resolved parameters and an FNV-1a checksum of the payload.
void emit(const std::string& command, const Json& parameters, const std::string& format,
          const std::string& path, const std::string& csv, const Json& records) {
  if (format == "csv") {
    Json manifest;
    manifest["command"] = command;
    manifest["version"] = kVersion;
    manifest["parameters"] = parameters;
    manifest["output"] = Json{{"path", path}, {"format", "csv"},
                              {"checksum_fnv1a64", fnv1a64_hex(csv)}};
    write_text_file(path, csv);
    write_text_file(path + ".manifest.json", manifest.dump(2) + "\n");
  } else {
    Json manifest;
    manifest["command"] = command;
    manifest["version"] = kVersion;
    manifest["parameters"] = parameters;
    manifest["output"] = Json{{"path", path}, {"format", "json"},
                              {"checksum_fnv1a64", fnv1a64_hex(records.dump())}};
    Json doc;
    doc["manifest"] = manifest;
    doc["records"] = records;
    write_text_file(path, doc.dump(2) + "\n");
  }
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad numeric value for '" + key + "': " + value);
  }
  if (used != value.size())
    throw std::invalid_argument("config: bad numeric value for '" + key + "': " + value);
  return v;
}

struct RunOptions {
  std::string family = "phi";
  double r = 0.9;
  double a2 = 0.5;
  double phase = 0.0;
  double omega = 1e11;
  double sigma = 0.0;        // resolved below
  double sigma_ratio = 0.02;
  bool sigma_set = false;
  std::string config_path;
  double sf = 2e6;
  double temperature = 0.04;
  std::string mode = "both";
  double t_max = 1e5;
  int n_steps = 1000;
  int scan_resolution = 10000;
  std::string format = "csv";
  std::string out;
  CLI::App* sub = nullptr;

  bool flag_given(const std::string& name) const {
    const CLI::Option* o = sub->get_option_no_throw(name);
    return o != nullptr && o->count() > 0;
  }

  // Applies key=value pairs from --config for every option not already set
  // on the command line (flags take precedence over file values).
  void apply_config_file() {
    if (config_path.empty()) return;
    std::istringstream stream(read_text_file(config_path));
    std::map<std::string, std::string> values;
    std::string line;
    while (std::getline(stream, line)) {
      const std::size_t first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      const std::size_t last = line.find_last_not_of(" \t\r");
      line = line.substr(first, last - first + 1);
      if (line[0] == '#') continue;
      const std::size_t eq = line.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("config: expected key=value, got: " + line);
      values[line.substr(0, eq)] = line.substr(eq + 1);
    }
    if (values.count("sigma") && values.count("sigma-ratio"))
      throw std::invalid_argument("config: sigma conflicts with sigma-ratio");

    const bool cmd_sigma = flag_given("--sigma");
    const bool cmd_ratio = flag_given("--sigma-ratio");
    for (const auto& [key, value] : values) {
      if (key == "sigma" || key == "sigma-ratio") {
        // either command-line sigma flag overrides any file sigma setting
        if (cmd_sigma || cmd_ratio) continue;
        if (key == "sigma") {
          sigma = parse_double(key, value);
          sigma_set = true;
        } else {
          sigma_ratio = parse_double(key, value);
        }
        continue;
      }
      if (flag_given("--" + key)) continue;
      if (key == "family") family = value;
      else if (key == "r") r = parse_double(key, value);
      else if (key == "a2") a2 = parse_double(key, value);
      else if (key == "phase") phase = parse_double(key, value);
      else if (key == "omega") omega = parse_double(key, value);
      else if (key == "sf") sf = parse_double(key, value);
      else if (key == "temperature") temperature = parse_double(key, value);
      else if (key == "mode") mode = value;
      else if (key == "t-max") t_max = parse_double(key, value);
      else if (key == "n-steps") n_steps = static_cast<int>(parse_double(key, value));
      else if (key == "scan-resolution") scan_resolution = static_cast<int>(parse_double(key, value));
      else if (key == "format") format = value;
      else if (key == "out") { if (out.empty()) out = value; }
      else throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }

  SweepConfig config() const {
    if (family != "phi" && family != "psi")
      throw std::invalid_argument("family must be 'phi' or 'psi'");
    if (mode != "adiabatic" && mode != "quantum" && mode != "both")
      throw std::invalid_argument("mode must be 'adiabatic', 'quantum' or 'both'");
    if (format != "csv" && format != "json")
      throw std::invalid_argument("format must be 'csv' or 'json'");
    if (out.empty()) throw std::invalid_argument("--out is required");
    SweepConfig cfg;
    cfg.ewl.family = family == "phi" ? EwlFamily::Phi : EwlFamily::Psi;
    cfg.ewl.r = r;
    cfg.ewl.a2 = a2;
    cfg.ewl.phase = phase;
    cfg.noise.omega = omega;
    cfg.noise.sigma = sigma_set ? sigma : sigma_ratio * omega;
    cfg.noise.sf = sf;
    cfg.noise.temperature = temperature;
    cfg.mode = mode == "adiabatic" ? NoiseMode::Adiabatic
             : mode == "quantum"   ? NoiseMode::Quantum
                                   : NoiseMode::Both;
    cfg.t_max = t_max;
    cfg.n_steps = n_steps;
    cfg.scan_resolution = scan_resolution;
    cfg.validate();
    return cfg;
  }

  Json parameters(const SweepConfig& cfg) const {
    return Json{{"family", family},
                {"r", r},
                {"a2", a2},
                {"phase", phase},
                {"omega", cfg.noise.omega},
                {"sigma", cfg.noise.sigma},
                {"sf", cfg.noise.sf},
                {"temperature", cfg.noise.temperature},
                {"theta", cfg.noise.theta},
                {"mode", mode},
                {"t_max", t_max},
                {"n_steps", n_steps},
                {"scan_resolution", scan_resolution}};
  }
};

// Shared state/noise/sweep flags for the sweep and vsd subcommands.
void add_run_options(CLI::App* sub, RunOptions& opt, bool with_steps) {
  sub->add_option("--family", opt.family, "Initial-state family")
      ->check(CLI::IsMember({"phi", "psi"}))
      ->capture_default_str();
  sub->add_option("--r", opt.r, "Purity parameter in [0,1]")->capture_default_str();
  sub->add_option("--a2", opt.a2, "|a|^2 of the pure part, in [0,1]")->capture_default_str();
  sub->add_option("--phase", opt.phase, "Relative phase of a (radians)")->capture_default_str();
  sub->add_option("--omega", opt.omega, "Qubit splitting (rad/s)")->capture_default_str();
  auto* sig = sub->add_option("--sigma", opt.sigma, "Low-frequency noise rms (rad/s)");
  auto* ratio = sub->add_option("--sigma-ratio", opt.sigma_ratio, "Sigma as a fraction of omega")
                    ->capture_default_str();
  sig->excludes(ratio);
  ratio->excludes(sig);
  sub->add_option("--sf", opt.sf, "High-frequency spectral level S_f(omega) (1/s)")
      ->capture_default_str();
  sub->add_option("--temperature", opt.temperature, "Temperature (K)")->capture_default_str();
  sub->add_option("--mode", opt.mode, "Noise channels to apply")
      ->check(CLI::IsMember({"adiabatic", "quantum", "both"}))
      ->capture_default_str();
  sub->add_option("--t-max", opt.t_max, "Grid end, in units of omega*t")->capture_default_str();
  if (with_steps)
    sub->add_option("--n-steps", opt.n_steps, "Number of grid points")->capture_default_str();
  sub->add_option("--scan-resolution", opt.scan_resolution,
                  "Grid points used to bracket the B = 2 crossing")
      ->capture_default_str();
  sub->add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--out", opt.out, "Output file");
  sub->add_option("--config", opt.config_path,
                  "key=value file mirroring the flag names; flags override it");
  opt.sub = sub;
}

void run_sweep(const RunOptions& opt) {
  const SweepConfig cfg = opt.config();
  const SweepSeries series = time_sweep(cfg);
  std::string csv = csv_line({"omega_t", "b", "b1", "b2", "u1", "u2", "u3", "c", "p11", "p22",
                              "p33", "p44", "c14_abs", "c23_abs"});
  Json records = Json::array();
  for (const SweepRecord& rec : series) {
    csv += csv_line({format_number(rec.omega_t), format_number(rec.b), format_number(rec.b1),
                     format_number(rec.b2), format_number(rec.u1), format_number(rec.u2),
                     format_number(rec.u3), format_number(rec.c), format_number(rec.p11),
                     format_number(rec.p22), format_number(rec.p33), format_number(rec.p44),
                     format_number(rec.c14_abs), format_number(rec.c23_abs)});
    records.push_back(to_json(rec));
  }
  emit("sweep", opt.parameters(cfg), opt.format, opt.out, csv, records);
}

void run_vsd(const RunOptions& opt) {
  const SweepConfig cfg = opt.config();
  const VsdResult vsd = vsd_time(cfg);

  std::optional<double> closed, variant;
  if (cfg.mode == NoiseMode::Adiabatic) {
    const double ratio = cfg.noise.sigma / cfg.noise.omega;
    closed = vsd_time_adiabatic_closed_form(cfg.ewl.r, cfg.ewl.a(), ratio);
    variant = vsd_time_adiabatic_variant_form(cfg.ewl.r, cfg.ewl.a(), ratio);
  }

  std::string csv =
      csv_line({"omega_t_vsd", "flag", "omega_t_closed_form", "omega_t_closed_form_variant"});
  csv += csv_line({optional_field(vsd.omega_t), to_string(vsd.flag), optional_field(closed),
                   optional_field(variant)});

  Json record;
  record["omega_t_vsd"] = vsd.omega_t ? Json(*vsd.omega_t) : Json(nullptr);
  record["flag"] = to_string(vsd.flag);
  if (cfg.mode == NoiseMode::Adiabatic) {
    record["omega_t_closed_form"] = closed ? Json(*closed) : Json(nullptr);
    record["omega_t_closed_form_variant"] = variant ? Json(*variant) : Json(nullptr);
  }
  emit("vsd", opt.parameters(cfg), opt.format, opt.out, csv, Json::array({record}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bell-function and concurrence decay under 1/f and Markovian noise"};
  app.require_subcommand(1);

  // fig1 ---------------------------------------------------------------
  std::string fig1_panel = "a";
  std::string fig1_out;
  std::string fig1_format = "csv";
  int fig1_n_time = 201, fig1_n_param = 101;
  auto* fig1 = app.add_subcommand("fig1", "Adiabatic B surface vs time and |a|^2 or r");
  fig1->add_option("--panel", fig1_panel, "a: vary |a|^2 at r=0.9; b: vary r at a2=0.5")
      ->check(CLI::IsMember({"a", "b"}))
      ->capture_default_str();
  fig1->add_option("--n-time", fig1_n_time, "Time grid points")->capture_default_str();
  fig1->add_option("--n-param", fig1_n_param, "Parameter grid points")->capture_default_str();
  fig1->add_option("--format", fig1_format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  fig1->add_option("--out", fig1_out, "Output file")->required();
  fig1->callback([&] {
    const Fig1Panel panel = fig1_panel == "a" ? Fig1Panel::A : Fig1Panel::B;
    const auto rows = fig1_grid(panel, fig1_n_time, fig1_n_param);
    std::string csv = csv_line({"omega_t", "param", "b"});
    Json records = Json::array();
    for (const Fig1Row& row : rows) {
      csv += csv_line({format_number(row.omega_t), format_number(row.param),
                       format_number(row.b)});
      records.push_back(Json{{"omega_t", row.omega_t}, {"param", row.param}, {"b", row.b}});
    }
    const Json params{{"panel", fig1_panel},
                      {"param_meaning", fig1_panel == "a" ? "a2" : "r"},
                      {"n_time", fig1_n_time},
                      {"n_param", fig1_n_param},
                      {"mode", "adiabatic"},
                      {"sigma_ratio", 0.02},
                      {"t_max", 1e4}};
    emit("fig1", params, fig1_format, fig1_out, csv, records);
  });

  // fig2 ---------------------------------------------------------------
  Fig2Options fig2_opt;
  std::string fig2_out;
  std::string fig2_format = "csv";
  auto* fig2 = app.add_subcommand("fig2", "VSD time vs purity for the three noise channels");
  fig2->add_option("--r-min", fig2_opt.r_min)->capture_default_str();
  fig2->add_option("--r-max", fig2_opt.r_max)->capture_default_str();
  fig2->add_option("--n-r", fig2_opt.n_r)->capture_default_str();
  fig2->add_option("--r-cap", fig2_opt.r_cap,
                   "Adiabatic rows above this purity report 'asymptotic'")
      ->capture_default_str();
  fig2->add_option("--t-max", fig2_opt.t_max)->capture_default_str();
  fig2->add_option("--scan-resolution", fig2_opt.scan_resolution)->capture_default_str();
  fig2->add_option("--format", fig2_format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  fig2->add_option("--out", fig2_out, "Output file")->required();
  fig2->callback([&] {
    const auto rows = fig2_rows(fig2_opt);
    std::string csv = csv_line({"mode", "r", "omega_t_vsd", "flag", "label"});
    Json records = Json::array();
    for (const Fig2Row& row : rows) {
      csv += csv_line({row.mode, format_number(row.r), optional_field(row.omega_t_vsd),
                       to_string(row.flag), row.label});
      Json rec{{"mode", row.mode},
               {"r", row.r},
               {"omega_t_vsd", row.omega_t_vsd ? Json(*row.omega_t_vsd) : Json(nullptr)},
               {"flag", to_string(row.flag)},
               {"label", row.label}};
      records.push_back(rec);
    }
    const Json params{{"r_min", fig2_opt.r_min},   {"r_max", fig2_opt.r_max},
                      {"n_r", fig2_opt.n_r},       {"r_cap", fig2_opt.r_cap},
                      {"t_max", fig2_opt.t_max},   {"scan_resolution", fig2_opt.scan_resolution},
                      {"r_marked", fig2_opt.r_marked}, {"a2", 0.5}};
    emit("fig2", params, fig2_format, fig2_out, csv, records);
  });

  // fig3 ---------------------------------------------------------------
  Fig3Options fig3_opt;
  std::string fig3_out;
  std::string fig3_format = "csv";
  auto* fig3 = app.add_subcommand("fig3", "B vs concurrence traces for the two Bell states");
  fig3->add_option("--t-max", fig3_opt.t_max)->capture_default_str();
  fig3->add_option("--n-steps", fig3_opt.n_steps)->capture_default_str();
  fig3->add_option("--format", fig3_format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  fig3->add_option("--out", fig3_out, "Output file")->required();
  fig3->callback([&] {
    const auto rows = fig3_rows(fig3_opt);
    std::string csv = csv_line({"family", "omega_t", "c", "b", "label"});
    Json records = Json::array();
    for (const Fig3Row& row : rows) {
      csv += csv_line({row.family, format_number(row.omega_t), format_number(row.c),
                       format_number(row.b), row.label});
      records.push_back(Json{{"family", row.family},
                             {"omega_t", row.omega_t},
                             {"c", row.c},
                             {"b", row.b},
                             {"label", row.label}});
    }
    const Json params{{"r", 1.0},
                      {"a2", 0.5},
                      {"mode", "both"},
                      {"t_max", fig3_opt.t_max},
                      {"n_steps", fig3_opt.n_steps}};
    emit("fig3", params, fig3_format, fig3_out, csv, records);
  });

  // sweep / vsd ----------------------------------------------------------
  RunOptions sweep_opt;
  auto* sweep = app.add_subcommand("sweep", "Tabulate B, concurrence and state data over time");
  add_run_options(sweep, sweep_opt, true);
  sweep->callback([&] {
    sweep_opt.sigma_set = sweep_opt.flag_given("--sigma");
    sweep_opt.apply_config_file();
    run_sweep(sweep_opt);
  });

  RunOptions vsd_opt;
  auto* vsd = app.add_subcommand("vsd", "Find the first time at which B drops to 2");
  add_run_options(vsd, vsd_opt, false);
  vsd->callback([&] {
    vsd_opt.sigma_set = vsd_opt.flag_given("--sigma");
    vsd_opt.apply_config_file();
    run_vsd(vsd_opt);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors exit 2; --help exits 0
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
