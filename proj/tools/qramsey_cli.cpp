// Copyright 2026 The qramsey authors
//
// Licensed under the Apache License, Version 2.0; see LICENSE for details.
//
// Command-line experiment runner. All physics goes through the C API; this
// translation unit only handles argument parsing and serialization.

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qramsey_c.h"

namespace {

using nlohmann::ordered_json;

constexpr int kExitConfig = 1;
constexpr int kExitPhysics = 2;
constexpr int kExitIo = 3;

[[noreturn]] void die(int code, const std::string& message) {
  std::cerr << "error: " << message << "\n";
  std::exit(code);
}

void check(int rc) {
  if (rc != QRAMSEY_OK) die(rc, qramsey_last_error());
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct CommonArgs {
  std::string model_path;
  std::string out_dir = ".";
  double T = 5.0;
  double tau_min = 0.0;
  double tau_max = 70.0;
  int L = 1000;
  double sector = 0.0;
  bool has_sector = false;
  int level = 0;
  double relative_phase = 0.0;
  long long shots = 0;
  std::uint64_t seed = 0;
  int steps = 0;  // 0 keeps the library default
  double omega_min = 0.05;
  double omega_max = 0.0;
  double oversample = 40.0;
  std::string window = "none";
  std::string refine = "lsq";
  double peak_threshold = 0.1;
  double min_separation = 0.5;
  int threads = 1;
};

void add_common_flags(CLI::App* cmd, CommonArgs* a, bool with_sweep_flags) {
  cmd->add_option("--model", a->model_path, "Model description file (JSON)")
      ->required();
  cmd->add_option("--out", a->out_dir, "Output directory");
  if (!with_sweep_flags) return;
  cmd->add_option("--T", a->T, "Ramp duration T (units 1/J)");
  cmd->add_option("--tau-min", a->tau_min, "Smallest phase-accumulation time");
  cmd->add_option("--tau-max", a->tau_max, "Largest phase-accumulation time");
  cmd->add_option("--L", a->L, "Number of tau grid points");
  cmd->add_option("--sector", a->sector, "Conserved-quantity eigenvalue q' of the ground branch")
      ->each([a](const std::string&) { a->has_sector = true; });
  cmd->add_option("--level", a->level, "Driver level within the ground-branch sector");
  cmd->add_option("--phase", a->relative_phase, "Relative phase on the reference branch");
  cmd->add_option("--shots", a->shots, "Projective shots per grid point (0 = exact)");
  cmd->add_option("--seed", a->seed, "Seed for shot sampling");
  cmd->add_option("--steps", a->steps, "Integrator steps per unit time");
  cmd->add_option("--omega-min", a->omega_min, "Lower edge of the omega grid");
  cmd->add_option("--omega-max", a->omega_max, "Upper edge of the omega grid (0 = auto)");
  cmd->add_option("--oversample", a->oversample, "Omega samples per resolution cell");
  cmd->add_option("--window", a->window, "Window function")
      ->check(CLI::IsMember({"none", "hann"}));
  cmd->add_option("--refine", a->refine, "Peak refinement")
      ->check(CLI::IsMember({"quadratic", "lsq"}));
  cmd->add_option("--peak-threshold", a->peak_threshold,
                  "Peak threshold as a fraction of the spectral maximum");
  cmd->add_option("--min-separation", a->min_separation, "Minimum peak separation");
  cmd->add_option("--threads", a->threads, "Worker threads for the tau sweep");
}

qramsey_sweep_options to_options(const CommonArgs& a) {
  qramsey_sweep_options o;
  qramsey_sweep_options_init(&o);
  o.T = a.T;
  o.tau_min = a.tau_min;
  o.tau_max = a.tau_max;
  o.L = a.L;
  o.has_sector = a.has_sector ? 1 : 0;
  o.sector_q = a.sector;
  o.level = a.level;
  o.relative_phase = a.relative_phase;
  o.shots = a.shots;
  o.seed = a.seed;
  if (a.steps > 0) o.steps_per_unit_time = a.steps;
  o.threads = a.threads;
  o.omega_min = a.omega_min;
  o.omega_max = a.omega_max;
  o.oversample = a.oversample;
  o.hann = a.window == "hann" ? 1 : 0;
  o.peak_threshold = a.peak_threshold;
  o.min_separation = a.min_separation;
  o.least_squares = a.refine == "lsq" ? 1 : 0;
  return o;
}

std::filesystem::path prepare_out_dir(const std::string& dir) {
  std::filesystem::path path(dir);
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) die(kExitIo, "cannot create output directory " + dir + ": " + ec.message());
  return path;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) die(kExitIo, "cannot open " + path.string() + " for writing");
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out = open_out(path);
  out << text;
  if (!out) die(kExitIo, "failed writing " + path.string());
}

using ModelPtr = std::unique_ptr<qramsey_model, decltype(&qramsey_model_free)>;

ModelPtr load_model(const std::string& path) {
  qramsey_model* raw = nullptr;
  check(qramsey_model_load(path.c_str(), &raw));
  return ModelPtr(raw, &qramsey_model_free);
}

ordered_json meta_json(const CommonArgs& a, const qramsey_model* model) {
  double q = 0.0, e_problem = 0.0, e_driver = 0.0;
  check(qramsey_model_reference(model, &q, &e_problem, &e_driver));
  ordered_json meta;
  meta["version"] = qramsey_version();
  meta["model"] = a.model_path;
  meta["T"] = a.T;
  meta["tau_min"] = a.tau_min;
  meta["tau_max"] = a.tau_max;
  meta["L"] = a.L;
  if (a.has_sector) meta["sector"] = a.sector;
  meta["level"] = a.level;
  meta["relative_phase"] = a.relative_phase;
  meta["shots"] = a.shots;
  meta["seed"] = a.seed;
  meta["steps_per_unit_time"] = a.steps;
  meta["omega_min"] = a.omega_min;
  meta["omega_max"] = a.omega_max;
  meta["oversample"] = a.oversample;
  meta["window"] = a.window;
  meta["refine"] = a.refine;
  meta["peak_threshold"] = a.peak_threshold;
  meta["min_separation"] = a.min_separation;
  meta["threads"] = a.threads;
  meta["reference"] = {{"q", q},
                       {"energy_problem", e_problem},
                       {"energy_driver", e_driver}};
  return meta;
}

void write_sweep_files(const qramsey_sweep* sweep, const std::filesystem::path& dir,
                       const std::string& prefix) {
  int n = 0;
  check(qramsey_sweep_series_length(sweep, &n));
  std::vector<double> tau(static_cast<size_t>(n)), p(static_cast<size_t>(n));
  check(qramsey_sweep_series(sweep, tau.data(), p.data(), n));
  {
    std::ofstream out = open_out(dir / (prefix + "ramsey.csv"));
    out << "n,tau,probability\n";
    for (int i = 0; i < n; ++i) {
      out << i << "," << fmt(tau[static_cast<size_t>(i)]) << ","
          << fmt(p[static_cast<size_t>(i)]) << "\n";
    }
    if (!out) die(kExitIo, "failed writing ramsey.csv");
  }
  int m = 0;
  check(qramsey_sweep_spectrum_length(sweep, &m));
  std::vector<double> omega(static_cast<size_t>(m)), re(static_cast<size_t>(m)),
      im(static_cast<size_t>(m));
  check(qramsey_sweep_spectrum(sweep, omega.data(), re.data(), im.data(), m));
  {
    std::ofstream out = open_out(dir / (prefix + "spectrum.csv"));
    out << "omega,re,im,abs\n";
    for (int i = 0; i < m; ++i) {
      const size_t k = static_cast<size_t>(i);
      out << fmt(omega[k]) << "," << fmt(re[k]) << "," << fmt(im[k]) << ","
          << fmt(std::hypot(re[k], im[k])) << "\n";
    }
    if (!out) die(kExitIo, "failed writing spectrum.csv");
  }
  int n_peaks = 0;
  check(qramsey_sweep_peak_count(sweep, &n_peaks));
  ordered_json peaks = ordered_json::array();
  for (int i = 0; i < n_peaks; ++i) {
    double raw = 0, refined = 0, magnitude = 0, uncertainty = 0;
    int refinement = 0;
    check(qramsey_sweep_peak(sweep, i, &raw, &refined, &magnitude, &uncertainty,
                             &refinement));
    peaks.push_back({{"omega_raw", raw},
                     {"omega_refined", refined},
                     {"magnitude", magnitude},
                     {"uncertainty", uncertainty},
                     {"refinement", refinement ? "lsq" : "quadratic"}});
  }
  write_text(dir / (prefix + "peaks.json"), peaks.dump(2) + "\n");

  double e_ref = 0.0;
  check(qramsey_sweep_reference_energy(sweep, &e_ref));
  int n_est = 0;
  check(qramsey_sweep_estimate_count(sweep, &n_est));
  ordered_json energies;
  energies["reference_energy"] = e_ref;
  energies["estimates"] = ordered_json::array();
  for (int i = 0; i < n_est; ++i) {
    double w = 0, e = 0, oe = 0, rel = 0;
    int level = -1, cross = 0;
    check(qramsey_sweep_estimate(sweep, i, &w, &e, &level, &oe, &rel, &cross));
    ordered_json est = {{"omega", w}, {"energy", e}, {"cross_term", cross != 0}};
    if (level >= 0) {
      est["matched_level"] = level;
      est["oracle_energy"] = oe;
      est["relative_error"] = rel;
    }
    energies["estimates"].push_back(est);
  }
  write_text(dir / (prefix + "energies.json"), energies.dump(2) + "\n");
}

int cmd_sweep(const CommonArgs& a) {
  const std::filesystem::path dir = prepare_out_dir(a.out_dir);
  ModelPtr model = load_model(a.model_path);
  const qramsey_sweep_options options = to_options(a);
  qramsey_sweep* sweep = nullptr;
  check(qramsey_sweep_run(model.get(), &options, &sweep));
  std::unique_ptr<qramsey_sweep, decltype(&qramsey_sweep_free)> guard(
      sweep, &qramsey_sweep_free);
  write_sweep_files(sweep, dir, "");
  ordered_json meta = meta_json(a, model.get());
  meta["command"] = "sweep";
  write_text(dir / "run_meta.json", meta.dump(2) + "\n");
  return 0;
}

int cmd_compare(const CommonArgs& a, const std::vector<double>& runtimes) {
  if (runtimes.empty()) die(kExitConfig, "compare: provide at least one --runtime");
  const std::filesystem::path dir = prepare_out_dir(a.out_dir);
  ModelPtr model = load_model(a.model_path);
  const qramsey_sweep_options options = to_options(a);
  qramsey_compare* compare = nullptr;
  check(qramsey_compare_run(model.get(), runtimes.data(),
                            static_cast<int>(runtimes.size()), &options, &compare));
  std::unique_ptr<qramsey_compare, decltype(&qramsey_compare_free)> guard(
      compare, &qramsey_compare_free);
  int rows = 0;
  check(qramsey_compare_row_count(compare, &rows));
  std::ofstream out = open_out(dir / "compare.csv");
  out << "total_runtime,proposed_estimate,conventional_estimate,exact\n";
  for (int i = 0; i < rows; ++i) {
    double runtime = 0, proposed = 0, conventional = 0, exact = 0;
    check(qramsey_compare_row(compare, i, &runtime, &proposed, &conventional,
                              &exact));
    out << fmt(runtime) << "," << fmt(proposed) << "," << fmt(conventional) << ","
        << fmt(exact) << "\n";
  }
  if (!out) die(kExitIo, "failed writing compare.csv");
  ordered_json meta = meta_json(a, model.get());
  meta["command"] = "compare";
  meta["runtimes"] = runtimes;
  meta["runtime_split"] =
      "proposed keeps T fixed; tau_max = runtime - 2T fills the remainder";
  write_text(dir / "run_meta.json", meta.dump(2) + "\n");
  return 0;
}

int cmd_scan(const CommonArgs& a) {
  const std::filesystem::path dir = prepare_out_dir(a.out_dir);
  ModelPtr model = load_model(a.model_path);
  const qramsey_sweep_options options = to_options(a);
  qramsey_scan* scan = nullptr;
  check(qramsey_scan_run(model.get(), &options, &scan));
  std::unique_ptr<qramsey_scan, decltype(&qramsey_scan_free)> guard(
      scan, &qramsey_scan_free);
  int n_sectors = 0;
  check(qramsey_scan_sector_count(scan, &n_sectors));
  ordered_json sectors = ordered_json::array();
  for (int i = 0; i < n_sectors; ++i) {
    double q = 0, min_energy = 0;
    int dim = 0, classical = 0;
    const char* error = nullptr;
    check(qramsey_scan_sector(scan, i, &q, &dim, &classical, &min_energy, &error));
    ordered_json entry = {{"q", q}, {"dim", dim}, {"classical", classical != 0}};
    if (error && *error) {
      entry["error"] = error;
    } else {
      entry["min_energy"] = min_energy;
      if (classical) {
        int n_e = 0;
        check(qramsey_scan_sector_classical_energies(scan, i, nullptr, 0, &n_e));
        std::vector<double> e(static_cast<size_t>(n_e));
        check(qramsey_scan_sector_classical_energies(scan, i, e.data(), n_e, &n_e));
        entry["energies"] = e;
      } else {
        const qramsey_sweep* sweep = nullptr;
        check(qramsey_scan_sector_sweep(scan, i, &sweep));
        if (sweep) {
          char label[64];
          std::snprintf(label, sizeof(label), "sector_%g_", q);
          write_sweep_files(sweep, dir, label);
          entry["files_prefix"] = label;
        }
      }
    }
    sectors.push_back(entry);
  }
  double gq = 0, ge = 0;
  check(qramsey_scan_global_minimum(scan, &gq, &ge));
  ordered_json summary;
  summary["sectors"] = sectors;
  summary["global_minimum"] = {{"q", gq}, {"energy", ge}};
  write_text(dir / "global_minimum.json", summary.dump(2) + "\n");
  ordered_json meta = meta_json(a, model.get());
  meta["command"] = "scan";
  write_text(dir / "run_meta.json", meta.dump(2) + "\n");
  return 0;
}

int cmd_oracle(const CommonArgs& a) {
  const std::filesystem::path dir = prepare_out_dir(a.out_dir);
  ModelPtr model = load_model(a.model_path);
  int n = 0;
  check(qramsey_oracle_energies(model.get(), nullptr, 0, &n));
  std::vector<double> energies(static_cast<size_t>(n));
  check(qramsey_oracle_energies(model.get(), energies.data(), n, &n));
  {
    std::ofstream out = open_out(dir / "spectrum_exact.csv");
    out << "level,energy\n";
    for (int i = 0; i < n; ++i) {
      out << i << "," << fmt(energies[static_cast<size_t>(i)]) << "\n";
    }
    if (!out) die(kExitIo, "failed writing spectrum_exact.csv");
  }
  std::vector<int> levels(static_cast<size_t>(n));
  std::vector<double> gaps(static_cast<size_t>(n));
  check(qramsey_oracle_gaps(model.get(), levels.data(), gaps.data(), n, &n));
  {
    std::ofstream out = open_out(dir / "gaps.csv");
    out << "level,gap\n";
    for (int i = 0; i < n; ++i) {
      out << levels[static_cast<size_t>(i)] << ","
          << fmt(gaps[static_cast<size_t>(i)]) << "\n";
    }
    if (!out) die(kExitIo, "failed writing gaps.csv");
  }
  ordered_json meta = meta_json(a, model.get());
  meta["command"] = "oracle";
  write_text(dir / "run_meta.json", meta.dump(2) + "\n");
  return 0;
}

int cmd_prep_ghz(const CommonArgs& a, const std::string& pattern,
                 const qramsey_ghz_options& ghz_options) {
  const std::filesystem::path dir = prepare_out_dir(a.out_dir);
  ModelPtr model = load_model(a.model_path);
  qramsey_ghz* ghz = nullptr;
  check(qramsey_ghz_run(model.get(), pattern.c_str(), &ghz_options, &ghz));
  std::unique_ptr<qramsey_ghz, decltype(&qramsey_ghz_free)> guard(
      ghz, &qramsey_ghz_free);
  double pi = 0, p1 = 0, p2 = 0, b0 = 0, b1 = 0, comm = 0, pg = 0, pr = 0, leak = 0;
  check(qramsey_ghz_diagnostics(ghz, &pi, &p1, &p2, &b0, &b1, &comm, &pg, &pr,
                                &leak));
  ordered_json diag;
  diag["pattern"] = pattern;
  diag["stage_durations"] = {{"t1", ghz_options.t1},
                             {"t2", ghz_options.t2},
                             {"t5", ghz_options.t5}};
  diag["parity"] = {{"initial", pi}, {"after_stage1", p1}, {"after_stage2", p2}};
  diag["ghz_branch_populations"] = {b0, b1};
  diag["stage3_commutator"] = comm;
  diag["final"] = {{"pop_ground", pg}, {"pop_reference", pr}, {"leakage", leak}};
  write_text(dir / "prep_diag.json", diag.dump(2) + "\n");
  ordered_json meta = meta_json(a, model.get());
  meta["command"] = "prep-ghz";
  meta["pattern"] = pattern;
  write_text(dir / "run_meta.json", meta.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interferometric ground-state-energy estimation toolkit"};
  app.require_subcommand(1);

  CommonArgs sweep_args;
  CLI::App* sweep = app.add_subcommand("sweep", "Run the tau sweep and spectral analysis");
  add_common_flags(sweep, &sweep_args, true);

  CommonArgs compare_args;
  std::vector<double> runtimes;
  CLI::App* compare =
      app.add_subcommand("compare", "Proposed vs conventional estimates at matched runtimes");
  add_common_flags(compare, &compare_args, true);
  compare->add_option("--runtime", runtimes, "Total runtime 2T + tau_max (repeatable)");

  CommonArgs scan_args;
  CLI::App* scan = app.add_subcommand("scan", "Run the pipeline in every conserved-quantity sector");
  add_common_flags(scan, &scan_args, true);

  CommonArgs oracle_args;
  CLI::App* oracle = app.add_subcommand("oracle", "Exact spectrum and reference gaps");
  add_common_flags(oracle, &oracle_args, false);

  CommonArgs ghz_args;
  std::string pattern;
  qramsey_ghz_options ghz_options;
  qramsey_ghz_options_init(&ghz_options);
  CLI::App* prep = app.add_subcommand("prep-ghz", "Staged preparation of the initial superposition");
  add_common_flags(prep, &ghz_args, false);
  prep->add_option("--pattern", pattern, "Per-qubit role string, e.g. GG--")->required();
  prep->add_option("--t1", ghz_options.t1, "Stage-1 ramp duration");
  prep->add_option("--t2", ghz_options.t2, "Stage-2 ramp duration");
  prep->add_option("--t5", ghz_options.t5, "Stage-5 ramp duration");
  prep->add_option("--B1", ghz_options.b1, "Stage-1 transverse field");
  prep->add_option("--B2", ghz_options.b2, "Stage-2 coupling");
  prep->add_option("--B3", ghz_options.b3, "Stage-3 coupling");
  prep->add_option("--leakage-threshold", ghz_options.leakage_threshold,
                   "Maximum tolerated final leakage");
  prep->add_option("--steps", ghz_options.steps_per_unit_time,
                   "Integrator steps per unit time");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (sweep->parsed()) return cmd_sweep(sweep_args);
    if (compare->parsed()) return cmd_compare(compare_args, runtimes);
    if (scan->parsed()) return cmd_scan(scan_args);
    if (oracle->parsed()) return cmd_oracle(oracle_args);
    if (prep->parsed()) return cmd_prep_ghz(ghz_args, pattern, ghz_options);
  } catch (const std::exception& e) {
    die(kExitPhysics, e.what());
  }
  return kExitConfig;
}
