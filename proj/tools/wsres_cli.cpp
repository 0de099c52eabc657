// SPDX-License-Identifier: Apache-2.0
//
// wsres: resonance spectra, scattering, spectroscopy, wave-packet dynamics,
// classical references and random-matrix statistics for tilted periodic
// lattices.  Outputs are CSV/JSON files with a manifest comment header.

#include <CLI11.hpp>
#include <json.hpp>

#include "wsr/bloch.hpp"
#include "wsr/classical.hpp"
#include "wsr/config.hpp"
#include "wsr/io.hpp"
#include "wsr/ladder.hpp"
#include "wsr/parallel.hpp"
#include "wsr/resonance.hpp"
#include "wsr/rmt.hpp"
#include "wsr/scattering.hpp"
#include "wsr/spectroscopy.hpp"
#include "wsr/stats.hpp"
#include "wsr/wavepacket.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>

using namespace wsr;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "wsres 1.0.0";

const std::set<std::string> kAcceptedKeys = {
    "hbar", "F", "eps", "omega", "p", "q", "N", "jmax", "kappa_points",
    "potential.cos", "potential.cos.", "potential.sin", "potential.sin.",
    "slice",
    "bloch.bands",
    "wannier.band", "wannier.site", "wannier.span",
    "resonances.keep", "resonances.kappa",
    "smatrix.e_points", "smatrix.e_min", "smatrix.e_max",
    "map.f_min", "map.f_max", "map.f_points", "map.e_points", "map.keep",
    "ladder.e0", "ladder.g0", "ladder.e1", "ladder.g1", "ladder.a", "ladder.b",
    "ladder.f_min", "ladder.f_max", "ladder.points",
    "fit.ladders",
    "spectrum.omega_min", "spectrum.omega_max", "spectrum.points", "spectrum.l_max",
    "spectrum.bands", "spectrum.substeps", "spectrum.drive",
    "abs.hbar_h", "abs.e_gap", "abs.l_max", "abs.omega_min", "abs.omega_max", "abs.points",
    "abs.f_min", "abs.f_max", "abs.f_points",
    "quasi.kappa_points", "quasi.keep",
    "pulse.sigma", "pulse.l_max", "pulse.k0", "pulse.times", "pulse.x_min", "pulse.x_max",
    "pulse.substeps",
    "survival.mode", "survival.t_max", "survival.p_star", "survival.n_kappa", "survival.N",
    "survival.slices",
    "cls.mode", "cls.count", "cls.p0", "cls.t_max", "cls.steps_per_period", "cls.periods",
    "cls.p_window",
};

struct CliOptions {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  int threads = 0;
  bool json_output = false;
  std::string sweep_key;
  double sweep_from = 0, sweep_to = 0;
  int sweep_count = 0;
  std::string sweep_scale = "lin";
  int rmt_N = 40, rmt_M = 1, rmt_count = 1000;
  std::string mode;
};

RunManifest base_manifest(const Config& cfg, const CliOptions& opt, const std::string& command) {
  RunManifest m;
  m.set("version", kVersion);
  m.set("command", command);
  m.set("seed", std::to_string(opt.seed));
  for (const auto& [k, v] : cfg.raw()) m.set("config." + k, v);
  return m;
}

SliceMode slice_mode(const Config& cfg) {
  const std::string s = cfg.get_string("slice", "eigen");
  if (s == "eigen") return SliceMode::midpoint_eigen;
  if (s == "split") return SliceMode::split_strang;
  throw ConfigError("slice must be 'eigen' or 'split'");
}

int default_jmax(const SystemParams& params, const Config& cfg) {
  // 32 slices per Bloch period of the common cycle unless overridden
  return cfg.get_int("jmax", 32 * params.q);
}

std::string out_path(const CliOptions& opt, const std::string& name) {
  return (std::filesystem::path(opt.out_dir) / name).string();
}

std::vector<Real> parse_real_list(const std::string& text) {
  std::vector<Real> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    out.push_back(std::stod(text.substr(pos, next - pos)));
    pos = next + 1;
  }
  return out;
}

// ---------------------------------------------------------------- commands

void run_bloch(const Config& cfg, const CliOptions& opt) {
  const int n_bands = cfg.get_int("bloch.bands", 4);
  const BlochBandTable t =
      bloch_bands(cfg.potential(), cfg.get_real("hbar", 1.0), n_bands,
                  cfg.get_int("kappa_points", 200), cfg.get_int("N", 0));
  CsvTable table;
  table.columns = {"kappa"};
  for (int a = 0; a < n_bands; ++a) table.columns.push_back("band" + std::to_string(a));
  for (int j = 0; j < t.n_kappa(); ++j) {
    std::vector<Real> row = {t.kappa[j]};
    for (int a = 0; a < n_bands; ++a) row.push_back(t.bands(a, j));
    table.rows.push_back(row);
  }
  write_csv(out_path(opt, "bloch.csv"), base_manifest(cfg, opt, "bloch"), table);
}

void run_wannier(const Config& cfg, const CliOptions& opt) {
  const BlochBandTable t =
      bloch_bands(cfg.potential(), cfg.get_real("hbar", 1.0),
                  cfg.get_int("wannier.band", 0) + 1, cfg.get_int("kappa_points", 200),
                  cfg.get_int("N", 0));
  const WannierFunction w = wannier_function(t, cfg.get_int("wannier.band", 0),
                                             cfg.get_int("wannier.site", 0),
                                             cfg.get_int("wannier.span", 5));
  CsvTable table;
  table.columns = {"x", "psi"};
  for (std::size_t i = 0; i < w.x.size(); ++i)
    table.rows.push_back({w.x[i], w.values(int(i))});
  write_csv(out_path(opt, "wannier.csv"), base_manifest(cfg, opt, "wannier"), table);
}

void run_resonances(const Config& cfg, const CliOptions& opt) {
  const SystemParams params = cfg.system_params();
  const PeriodicPotential V = cfg.potential();
  const int N = cfg.get_int("N", 24);
  const int jmax = default_jmax(params, cfg);
  const Real kappa = cfg.get_real("resonances.kappa", 0.0);
  const ResonanceSet rs = find_resonances(params, V, kappa, N, jmax,
                                          cfg.get_int("resonances.keep", 0), slice_mode(cfg));
  CsvTable table;
  table.columns = {"kappa", "index", "E", "Gamma", "abs_lambda"};
  for (std::size_t i = 0; i < rs.size(); ++i)
    table.rows.push_back({kappa, Real(i), rs[i].energy.re, rs[i].energy.width(),
                          std::abs(rs[i].lambda)});
  write_csv(out_path(opt, "resonances.csv"), base_manifest(cfg, opt, "resonances"), table);
  if (opt.json_output) {
    json j;
    j["manifest"] = json::object();
    for (const auto& [k, v] : cfg.raw()) j["manifest"][k] = v;
    j["manifest"]["version"] = kVersion;
    j["resonances"] = json::array();
    for (std::size_t i = 0; i < rs.size(); ++i) {
      json r;
      r["E"] = rs[i].energy.re;
      r["Gamma"] = rs[i].energy.width();
      r["lambda"] = {rs[i].lambda.real(), rs[i].lambda.imag()};
      json right = json::array(), left = json::array();
      for (int n = 0; n < rs[i].right.size(); ++n) {
        right.push_back({rs[i].right(n).real(), rs[i].right(n).imag()});
        left.push_back({rs[i].left(n).real(), rs[i].left(n).imag()});
      }
      r["right"] = right;
      r["left"] = left;
      j["resonances"].push_back(r);
    }
    write_text_atomic(out_path(opt, "resonances.json"), j.dump(2));
  }
}

void run_smatrix(const Config& cfg, const CliOptions& opt, bool delay_only) {
  const SystemParams params = cfg.system_params();
  const PeriodicPotential V = cfg.potential();
  const int N = cfg.get_int("N", 24);
  const EvolutionMatrix U = build_evolution_matrix(
      params, V, cfg.get_real("resonances.kappa", 0.0), N, default_jmax(params, cfg),
      slice_mode(cfg));
  const Real zone = two_pi * params.F / params.q;
  const int pts = cfg.get_int("smatrix.e_points", 200);
  const Real e_min = cfg.get_real("smatrix.e_min", 0.0);
  const Real e_max = cfg.get_real("smatrix.e_max", zone);
  CsvTable table;
  if (delay_only)
    table.columns = {"E", "tau"};
  else
    table.columns = {"E", "re_S", "im_S", "tau"};
  for (int i = 0; i < pts; ++i) {
    const Real E = e_min + (e_max - e_min) * (i + 0.5) / pts;
    const Real tau = wigner_delay_time(U, E);
    if (delay_only) {
      table.rows.push_back({E, tau});
    } else {
      const MatrixXcd S = smatrix_at(U, E);
      table.rows.push_back({E, S(0, 0).real(), S(0, 0).imag(), tau});
    }
  }
  const char* name = delay_only ? "delay.csv" : "smatrix.csv";
  write_csv(out_path(opt, name), base_manifest(cfg, opt, delay_only ? "delay" : "smatrix"), table);
}

void run_delay_map(const Config& cfg, const CliOptions& opt) {
  const PeriodicPotential V = cfg.potential();
  const Real hbar = cfg.get_real("hbar", 1.0);
  const int fpts = cfg.get_int("map.f_points", 60);
  const int epts = cfg.get_int("map.e_points", 200);
  const Real f_min = cfg.get_real("map.f_min");
  const Real f_max = cfg.get_real("map.f_max");
  const int keep = cfg.get_int("map.keep", 0);
  const int N = cfg.get_int("N", 24);
  const int jmax = cfg.get_int("jmax", 32);
  std::vector<Real> f_grid(fpts);
  std::vector<std::vector<Real>> rows(fpts);
  parallel_for(fpts, [&](std::size_t i) {
    const Real F = f_min + (f_max - f_min) * (i + 0.5) / fpts;
    f_grid[i] = F;
    const SystemParams params = dc_params(hbar, F);
    const ResonanceSet rs = find_resonances(params, V, 0.0, N, jmax, keep);
    std::vector<ComplexEnergy> energies;
    for (std::size_t r = 0; r < rs.size(); ++r) energies.push_back(rs[r].energy);
    std::vector<Real> e_grid(epts);
    for (int e = 0; e < epts; ++e) e_grid[e] = two_pi * F * (e + 0.5) / epts;
    rows[i] = delay_time_map(energies, e_grid, F, hbar);
  });
  std::vector<Real> cols(epts);
  for (int e = 0; e < epts; ++e) cols[e] = (e + 0.5) / epts;  // E in zone units
  write_matrix(out_path(opt, "delay_map.dat"), base_manifest(cfg, opt, "delay-map"), f_grid, cols,
               rows);
}

void run_two_ladder(const Config& cfg, const CliOptions& opt) {
  LadderPair pair;
  pair.e0 = ComplexEnergy(cfg.get_real("ladder.e0"), -0.5 * cfg.get_real("ladder.g0"));
  pair.e1 = ComplexEnergy(cfg.get_real("ladder.e1"), -0.5 * cfg.get_real("ladder.g1"));
  const Real a = cfg.get_real("ladder.a", 1.0);
  const Real b = cfg.get_real("ladder.b", 0.25);
  const Real f_min = cfg.get_real("ladder.f_min");
  const Real f_max = cfg.get_real("ladder.f_max");
  const int pts = cfg.get_int("ladder.points", 200);
  CsvTable table;
  table.columns = {"F", "E_plus", "E_minus", "Gamma_plus", "Gamma_minus"};
  for (int i = 0; i < pts; ++i) {
    pair.F = f_min + (f_max - f_min) * (i + 0.5) / pts;
    pair.epsilon_c = std::min(a * std::exp(-b / pair.F), M_PI / 2);
    const LadderEigenvalues ev = two_ladder_eigenvalues(pair);
    table.rows.push_back({pair.F, ev.e_plus.re, ev.e_minus.re, ev.e_plus.width(),
                          ev.e_minus.width()});
  }
  write_csv(out_path(opt, "two_ladder.csv"), base_manifest(cfg, opt, "two-ladder"), table);
}

void run_fit_coupling(const Config& cfg, const CliOptions& opt, const std::string& widths_path) {
  // long CSV rows: F, E0, Gamma0, E1, Gamma1[, E2, Gamma2 ...]
  std::ifstream in(widths_path);
  if (!in) throw ConfigError("cannot open width table: " + widths_path);
  WidthCurves data;
  std::string line;
  std::vector<std::vector<Real>> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.find_first_of("0123456789-.") != 0) continue;  // header row
    std::vector<Real> row = parse_real_list(line);
    if (row.size() >= 5) rows.push_back(row);
  }
  if (rows.size() < 10) throw ConfigError("fit-coupling: need >= 10 field samples");
  const int n_ladders = int((rows[0].size() - 1) / 2);
  data.F.resize(rows.size());
  data.energy.resize(n_ladders, rows.size());
  data.gamma.resize(n_ladders, rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    data.F[i] = rows[i][0];
    for (int a = 0; a < n_ladders; ++a) {
      data.energy(a, i) = rows[i][1 + 2 * a];
      data.gamma(a, i) = rows[i][2 + 2 * a];
    }
  }
  const auto ab = coupling_fit(data);
  CsvTable table;
  table.columns = {"band", "a", "b"};
  for (std::size_t i = 0; i < ab.size(); ++i)
    table.rows.push_back({Real(i + 1), ab[i].first, ab[i].second});
  write_csv(out_path(opt, "coupling_fit.csv"), base_manifest(cfg, opt, "fit-coupling"), table);
}

struct SpectroscopySetup {
  SystemParams params;
  PeriodicPotential V;
  std::vector<WannierBlochFamily> families;
  std::vector<ComplexEnergy> energies;
};

SpectroscopySetup build_families(const Config& cfg, int n_bands, int substeps) {
  SpectroscopySetup s;
  s.params = dc_params(cfg.get_real("hbar", 1.0), cfg.get_real("F"));
  s.V = cfg.potential();
  const int N = cfg.get_int("N", 16);
  const ResonanceSet rs =
      find_resonances(s.params, s.V, 0.0, N, default_jmax(s.params, cfg), n_bands);
  if (int(rs.size()) < n_bands)
    throw NumericalError("spectroscopy: fewer stable resonances than requested bands");
  for (int a = 0; a < n_bands; ++a) {
    s.families.push_back(build_wannier_bloch_family(rs[a], s.params, s.V, substeps));
    s.energies.push_back(rs[a].energy);
  }
  return s;
}

void run_decay_spectrum(const Config& cfg, const CliOptions& opt) {
  const int n_bands = cfg.get_int("spectrum.bands", 2) + 1;
  SpectroscopySetup s = build_families(cfg, n_bands, cfg.get_int("spectrum.substeps", 64));
  const int l_max = cfg.get_int("spectrum.l_max", 12);
  const std::string drive = cfg.get_string("spectrum.drive", "eps");
  std::vector<SquaredTransitionElement> els;
  Real amplitude = 0.0;
  if (drive == "eps") {
    els = sine_squared_from_dipole(dipole_squared(s.families, s.V, l_max), s.energies, s.params);
    amplitude = cfg.get_real("eps", 0.0);
  } else {
    els = dipole_squared(s.families, s.V, l_max);
    const Real omega_ref = cfg.get_real("omega", s.params.omega_bloch());
    amplitude = cfg.get_real("eps", 0.0) * omega_ref * omega_ref;  // F_omega
  }
  const Real wb = s.params.omega_bloch();
  const int pts = cfg.get_int("spectrum.points", 600);
  const Real w0 = cfg.get_real("spectrum.omega_min", 0.2) * wb;
  const Real w1 = cfg.get_real("spectrum.omega_max", 6.0) * wb;
  std::vector<Real> grid(pts);
  for (int i = 0; i < pts; ++i) grid[i] = w0 + (w1 - w0) * (i + 0.5) / pts;
  const std::vector<Real> gamma = decay_spectrum(els, s.energies, s.params, amplitude, grid);
  CsvTable table;
  table.columns = {"omega_over_omegaB", "Gamma0"};
  for (int i = 0; i < pts; ++i) table.rows.push_back({grid[i] / wb, gamma[i]});
  RunManifest m = base_manifest(cfg, opt, "decay-spectrum");
  m.set("note", "small omega region subject to rotating-frame corrections");
  write_csv(out_path(opt, "decay_spectrum.csv"), m, table);
}

void run_absorption(const Config& cfg, const CliOptions& opt) {
  // electron system from the main keys, hole system from abs.hbar_h
  const Real hbar_h = cfg.get_real("abs.hbar_h");
  const Real e_gap = cfg.get_real("abs.e_gap", 0.0);
  const int l_max = cfg.get_int("abs.l_max", 6);
  const int pts = cfg.get_int("abs.points", 600);
  const PeriodicPotential V = cfg.potential();
  const int fpts = cfg.get_int("abs.f_points", 1);
  const Real f_min = cfg.get_real("abs.f_min", cfg.get_real("F"));
  const Real f_max = cfg.get_real("abs.f_max", cfg.get_real("F"));
  std::vector<Real> f_grid(fpts);
  std::vector<std::vector<Real>> rows(fpts);
  std::vector<Real> omega_grid(pts);
  const Real wmin = cfg.get_real("abs.omega_min", e_gap - 1.0);
  const Real wmax = cfg.get_real("abs.omega_max", e_gap + 1.0);
  for (int i = 0; i < pts; ++i) omega_grid[i] = wmin + (wmax - wmin) * (i + 0.5) / pts;
  for (int fi = 0; fi < fpts; ++fi) {
    const Real F = fpts > 1 ? f_min + (f_max - f_min) * fi / (fpts - 1) : f_min;
    f_grid[fi] = F;
    const SystemParams pe = dc_params(cfg.get_real("hbar", 1.0), F);
    const SystemParams ph = dc_params(hbar_h, F);
    const int N = cfg.get_int("N", 16);
    const ResonanceSet re = find_resonances(pe, V, 0.0, N, 32, 1);
    const ResonanceSet rh = find_resonances(ph, V, 0.0, N, 32, 1);
    std::vector<WannierBlochFamily> fe = {build_wannier_bloch_family(re[0], pe, V, 48)};
    std::vector<WannierBlochFamily> fh = {build_wannier_bloch_family(rh[0], ph, V, 48)};
    const auto overlaps = overlap_squared(fh, fe, l_max);
    rows[fi] = absorption_spectrum(overlaps, {re[0].energy}, {rh[0].energy}, e_gap, F,
                                   cfg.get_real("hbar", 1.0), omega_grid);
  }
  RunManifest m = base_manifest(cfg, opt, "absorption");
  m.set("note", "each row normalized to unit maximum");
  if (fpts == 1) {
    CsvTable table;
    table.columns = {"photon_energy", "D"};
    for (int i = 0; i < pts; ++i) table.rows.push_back({omega_grid[i], rows[0][i]});
    write_csv(out_path(opt, "absorption.csv"), m, table);
  } else {
    write_matrix(out_path(opt, "absorption_map.dat"), m, f_grid, omega_grid, rows);
  }
}

void run_quasienergy(const Config& cfg, const CliOptions& opt) {
  const SystemParams params = cfg.system_params();
  const PeriodicPotential V = cfg.potential();
  const int N = cfg.get_int("N", 24);
  const int jmax = default_jmax(params, cfg);
  const int kpts = cfg.get_int("quasi.kappa_points", 50);
  const int keep = cfg.get_int("quasi.keep", 6);
  std::vector<CsvTable> parts(kpts);
  const SliceMode mode = slice_mode(cfg);
  parallel_for(kpts, [&](std::size_t i) {
    const Real kap = -0.5 / params.p + (i + 0.5) / (kpts * Real(params.p));
    const ResonanceSet rs = find_resonances(params, V, kap, N, jmax, keep, mode);
    const auto ladder = quasienergy_ladder(rs);
    CsvTable& t = parts[i];
    for (std::size_t r = 0; r < rs.size(); ++r)
      for (int n = 0; n < params.p; ++n)
        t.rows.push_back({kap, Real(n), ladder[r * params.p + n].re, rs[r].energy.width()});
  });
  CsvTable table;
  table.columns = {"kappa", "subladder", "E", "Gamma"};
  for (const auto& p : parts)
    table.rows.insert(table.rows.end(), p.rows.begin(), p.rows.end());
  write_csv(out_path(opt, "quasienergy.csv"), base_manifest(cfg, opt, "quasienergy"), table);
}

void run_pulses(const Config& cfg, const CliOptions& opt) {
  const SystemParams params = dc_params(cfg.get_real("hbar", 1.0), cfg.get_real("F"));
  const PeriodicPotential V = cfg.potential();
  const int N = cfg.get_int("N", 16);
  const ResonanceSet rs = find_resonances(params, V, 0.0, N, default_jmax(params, cfg), 1);
  const WannierStarkState state =
      wannier_stark_state(rs[0], params, V, 0, 0, cfg.get_int("pulse.substeps", 256));
  const auto amps = gaussian_site_amplitudes(cfg.get_int("pulse.l_max", 40),
                                             cfg.get_real("pulse.sigma", 15.0));
  const std::vector<Real> times = parse_real_list(cfg.get_string("pulse.times", "100,200,300"));
  const Real k0 = cfg.get_real("pulse.k0", 0.5);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const PulseSnapshot snap =
        pulse_train(amps, state, params, times[i], k0, cfg.get_real("pulse.x_min", -2000.0),
                    cfg.get_real("pulse.x_max", 50.0));
    CsvTable table;
    table.columns = {"x", "density"};
    for (std::size_t j = 0; j < snap.x.size(); ++j)
      table.rows.push_back({snap.x[j], snap.density[j]});
    RunManifest m = base_manifest(cfg, opt, "pulses");
    m.set_real("t", times[i]);
    write_csv(out_path(opt, "pulses_t" + std::to_string(i) + ".csv"), m, table);
  }
}

void run_survival(const Config& cfg, const CliOptions& opt) {
  const std::string mode = cfg.get_string("survival.mode", "band");
  const SystemParams params = cfg.system_params();
  const PeriodicPotential V = cfg.potential();
  CsvTable table;
  table.columns = {"t_over_TB", "P"};
  const Real T_B = params.bloch_period();
  const Real t_max = cfg.get_real("survival.t_max", 100.0) * T_B;
  if (mode == "band") {
    // resonantly driven band: Gamma_0(kappa) from the driven solver
    const int kpts = cfg.get_int("survival.n_kappa", 32);
    const int N = cfg.get_int("N", 24);
    const int jmax = default_jmax(params, cfg);
    const SliceMode smode = slice_mode(cfg);
    std::vector<Real> gam(kpts);
    parallel_for(kpts, [&](std::size_t i) {
      const Real kap = -0.5 + (i + 0.5) / kpts;
      const ResonanceSet rs = find_resonances(params, V, kap, N, jmax, 1, smode);
      gam[i] = rs[0].energy.width();
    });
    for (int s = 0; s <= 200; ++s) {
      const Real t = t_max * s / 200.0;
      table.rows.push_back({t / T_B, band_survival(gam, t, params.hbar)});
    }
  } else if (mode == "grid") {
    const BlochBandTable bt = bloch_bands(V, params.hbar, 1, 32, 0);
    GridState st = wannier_grid_state(bt, 0, cfg.get_int("survival.N", 128),
                                      cfg.get_int("survival.n_kappa", 32));
    const SurvivalSeries s = grid_survival(st, params, V, t_max,
                                           cfg.get_real("survival.p_star", 5.0),
                                           cfg.get_int("survival.slices", 32));
    for (std::size_t i = 0; i < s.t.size(); ++i)
      table.rows.push_back({s.t[i] / T_B, s.probability[i]});
  } else {
    throw ConfigError("survival.mode must be 'band' or 'grid'");
  }
  write_csv(out_path(opt, "survival.csv"), base_manifest(cfg, opt, "survival"), table);
}

void run_classical(const Config& cfg, const CliOptions& opt) {
  const std::string mode = cfg.get_string("cls.mode", opt.mode.empty() ? "section" : opt.mode);
  SystemParams params;
  params.hbar = cfg.get_real("hbar", 1.0);
  params.F = cfg.get_real("F", 0.0);
  params.eps = cfg.get_real("eps", 0.0);
  params.omega = cfg.get_real("omega", 1.0);
  const PeriodicPotential V = cfg.potential();
  if (mode == "section") {
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<Real> ux(0.0, two_pi), up(-1.2, 1.2);
    std::vector<SectionPoint> seeds;
    for (int i = 0; i < cfg.get_int("cls.count", 16); ++i) seeds.push_back({ux(rng), up(rng)});
    const auto cloud = stroboscopic_section(seeds, params, V, cfg.get_int("cls.periods", 400),
                                            cfg.get_int("cls.steps_per_period", 200));
    CsvTable table;
    table.columns = {"x", "p"};
    for (const auto& pt : cloud) table.rows.push_back({pt.x, pt.p});
    write_csv(out_path(opt, "section.csv"), base_manifest(cfg, opt, "classical section"), table);
  } else if (mode == "delay") {
    const Real dt = params.drive_period() / cfg.get_int("cls.steps_per_period", 200);
    int censored = 0;
    const auto delays = classical_delay_ensemble(
        cfg.get_int("cls.count", 20000), cfg.get_real("cls.p0", 16.0), params, V, dt,
        cfg.get_real("cls.t_max", 1e3) * params.drive_period(), opt.seed, &censored);
    const Histogram h = make_histogram(
        delays, linear_edges(0.0, *std::max_element(delays.begin(), delays.end()), 80));
    CsvTable table;
    table.columns = {"tau", "count", "density"};
    for (int i = 0; i < h.bins(); ++i)
      table.rows.push_back({h.center(i), h.counts[i], h.density(i)});
    RunManifest m = base_manifest(cfg, opt, "classical delay");
    m.set("censored", std::to_string(censored));
    const LineFit fit = fit_exponential_tail(delays);
    m.set_real("tail_rate", fit.slope);
    m.set_real("tail_r2", fit.r2);
    write_csv(out_path(opt, "delay_hist.csv"), m, table);
  } else if (mode == "count") {
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<Real> ux(0.0, two_pi), up(-1.0, 1.0);
    std::vector<SectionPoint> seeds;
    for (int i = 0; i < cfg.get_int("cls.count", 12); ++i) seeds.push_back({ux(rng), up(rng)});
    SystemParams undriven = params;
    undriven.F = 0.0;
    const auto cloud = stroboscopic_section(seeds, undriven, V, cfg.get_int("cls.periods", 1500),
                                            cfg.get_int("cls.steps_per_period", 200));
    const ChaoticStateCount c = chaotic_state_count(cloud, params.hbar,
                                                    cfg.get_real("cls.p_window", 8.0));
    CsvTable table;
    table.columns = {"n_weyl", "n_effective", "occupied_area", "enclosed_area", "p_star"};
    table.rows.push_back({Real(c.n_weyl), Real(c.n_effective), c.occupied_area, c.enclosed_area,
                          c.p_star});
    write_csv(out_path(opt, "state_count.csv"), base_manifest(cfg, opt, "classical count"), table);
  } else {
    throw ConfigError("classical mode must be section|delay|count");
  }
}

void run_rmt(const Config& cfg, const CliOptions& opt) {
  RmtEnsembleConfig rc;
  rc.N = opt.rmt_N;
  rc.M = opt.rmt_M;
  rc.n_matrices = opt.rmt_count;
  rc.seed = opt.seed;
  RunManifest m = base_manifest(cfg, opt, "rmt " + opt.mode);
  m.set("N", std::to_string(rc.N));
  m.set("M", std::to_string(rc.M));
  m.set("count", std::to_string(rc.n_matrices));
  if (opt.mode == "widths") {
    const auto widths = rmt_resonances(rc);
    const Histogram h = make_histogram(widths, log_edges_freedman_diaconis(widths));
    CsvTable table;
    table.columns = {"Gamma_s", "count", "density", "theory"};
    for (int i = 0; i < h.bins(); ++i)
      table.rows.push_back({h.center(i), h.counts[i], h.density(i),
                            width_distribution_theory(h.center(i), rc.M)});
    write_csv(out_path(opt, "rmt_widths.csv"), m, table);
  } else if (opt.mode == "delays") {
    const auto taus = rmt_delay_samples(rc, 100);
    const Histogram h = make_histogram(taus, linear_edges(0.0, 3.0, 60));
    std::vector<Real> centers(h.bins());
    for (int i = 0; i < h.bins(); ++i) centers[i] = h.center(i);
    // density of the sum of partials, rescaled to the per-channel mean
    std::vector<Real> sum_grid(h.bins());
    for (int i = 0; i < h.bins(); ++i) sum_grid[i] = centers[i] * rc.M;
    const auto conv = partial_delay_sum_distribution(sum_grid, rc.M);
    CsvTable table;
    table.columns = {"tau_s", "count", "density", "theory"};
    for (int i = 0; i < h.bins(); ++i)
      table.rows.push_back({centers[i], h.counts[i], h.density(i), conv[i] * rc.M});
    RunManifest md = m;
    md.set("note", "theory column: independent-partial-delay approximation");
    write_csv(out_path(opt, "rmt_delays.csv"), md, table);
  } else if (opt.mode == "survival") {
    CsvTable table;
    table.columns = {"t", "P"};
    for (int i = 0; i <= 400; ++i) {
      const Real t = 200.0 * i / 400.0;
      table.rows.push_back({t, rmt_survival(t, 1.0, Real(rc.M))});
    }
    write_csv(out_path(opt, "rmt_survival.csv"), m, table);
  } else {
    throw ConfigError("rmt mode must be widths|delays|survival");
  }
}

int run_command(const std::string& command, const Config& cfg, const CliOptions& opt,
                const std::string& widths_path) {
  const auto unknown = cfg.unknown_keys(kAcceptedKeys);
  if (!unknown.empty()) {
    std::cerr << "unknown config keys:";
    for (const auto& k : unknown) std::cerr << " " << k;
    std::cerr << "\naccepted keys:";
    for (const auto& k : kAcceptedKeys) std::cerr << " " << k;
    std::cerr << "\n";
    return 1;
  }
  if (command == "bloch") run_bloch(cfg, opt);
  else if (command == "wannier") run_wannier(cfg, opt);
  else if (command == "resonances") run_resonances(cfg, opt);
  else if (command == "smatrix") run_smatrix(cfg, opt, false);
  else if (command == "delay") run_smatrix(cfg, opt, true);
  else if (command == "delay-map") run_delay_map(cfg, opt);
  else if (command == "two-ladder") run_two_ladder(cfg, opt);
  else if (command == "fit-coupling") run_fit_coupling(cfg, opt, widths_path);
  else if (command == "decay-spectrum") run_decay_spectrum(cfg, opt);
  else if (command == "absorption") run_absorption(cfg, opt);
  else if (command == "quasienergy") run_quasienergy(cfg, opt);
  else if (command == "pulses") run_pulses(cfg, opt);
  else if (command == "survival") run_survival(cfg, opt);
  else if (command == "classical") run_classical(cfg, opt);
  else if (command == "rmt") run_rmt(cfg, opt);
  else {
    std::cerr << "unknown subcommand: " << command << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{kVersion};
  app.require_subcommand(1);
  CliOptions opt;
  std::string widths_path;

  const std::vector<std::string> commands = {
      "bloch", "wannier", "resonances", "smatrix", "delay", "delay-map", "two-ladder",
      "fit-coupling", "decay-spectrum", "absorption", "quasienergy", "pulses", "survival",
      "classical", "rmt"};
  std::string chosen;
  for (const auto& name : commands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", opt.config_path, "config file (key = value lines)");
    sub->add_option("--out", opt.out_dir, "output directory");
    sub->add_option("--seed", opt.seed, "ensemble seed");
    sub->add_option("--threads", opt.threads, "worker threads (default WSRES_THREADS)");
    if (name == "resonances") sub->add_flag("--json", opt.json_output, "emit eigenvectors");
    if (name == "fit-coupling")
      sub->add_option("--widths", widths_path, "width table CSV")->required();
    if (name == "classical" || name == "rmt") sub->add_option("mode", opt.mode, "submode");
    if (name == "rmt") {
      sub->add_option("--N", opt.rmt_N, "interior matrix size");
      sub->add_option("--M", opt.rmt_M, "channel count");
      sub->add_option("--count", opt.rmt_count, "ensemble size");
    }
    sub->add_option("--sweep", opt.sweep_key, "config key to sweep");
    sub->add_option("--from", opt.sweep_from, "sweep start");
    sub->add_option("--to", opt.sweep_to, "sweep end");
    sub->add_option("--count-sweep", opt.sweep_count, "sweep point count");
    sub->add_option("--scale", opt.sweep_scale, "lin|log|inv");
    sub->callback([&chosen, name] { chosen = name; });
  }

  CLI11_PARSE(app, argc, argv);
  if (opt.threads > 0) set_worker_count(opt.threads);

  try {
    const Config cfg = opt.config_path.empty() ? Config::parse_text("")
                                               : Config::parse_file(opt.config_path);
    if (opt.sweep_key.empty()) return run_command(chosen, cfg, opt, widths_path);

    // sweep: run the subcommand per value into numbered subdirectories and
    // collate an index with per-point status
    if (opt.sweep_count < 1) throw ConfigError("sweep needs --count-sweep >= 1");
    std::vector<int> status(opt.sweep_count, 0);
    std::vector<Real> values(opt.sweep_count);
    for (int i = 0; i < opt.sweep_count; ++i) {
      const Real f = opt.sweep_count == 1 ? 0.0 : Real(i) / (opt.sweep_count - 1);
      if (opt.sweep_scale == "log")
        values[i] = opt.sweep_from * std::pow(opt.sweep_to / opt.sweep_from, f);
      else if (opt.sweep_scale == "inv")
        values[i] =
            1.0 / (1.0 / opt.sweep_from + (1.0 / opt.sweep_to - 1.0 / opt.sweep_from) * f);
      else
        values[i] = opt.sweep_from + (opt.sweep_to - opt.sweep_from) * f;
    }
    parallel_for(opt.sweep_count, [&](std::size_t i) {
      try {
        std::ostringstream vs;
        vs.precision(17);
        vs << values[i];
        std::string text;
        for (const auto& [k, v] : cfg.raw())
          if (k != opt.sweep_key) text += k + " = " + v + "\n";
        text += opt.sweep_key + " = " + vs.str() + "\n";
        const Config merged = Config::parse_text(text, "<sweep>");
        CliOptions sub_opt = opt;
        sub_opt.sweep_key.clear();
        sub_opt.out_dir = out_path(opt, "sweep_" + std::to_string(i));
        std::filesystem::create_directories(sub_opt.out_dir);
        status[i] = run_command(chosen, merged, sub_opt, widths_path);
      } catch (const std::exception&) {
        status[i] = 2;
      }
    });
    CsvTable table;
    table.columns = {opt.sweep_key, "status"};
    for (int i = 0; i < opt.sweep_count; ++i)
      table.rows.push_back({values[i], Real(status[i])});
    write_csv(out_path(opt, "sweep_index.csv"), base_manifest(cfg, opt, chosen + " sweep"),
              table);
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
