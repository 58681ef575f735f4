// Copyright 2026 The qramsey authors
//
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#include "qramsey_c.h"

#include <algorithm>
#include <cstring>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "qramsey/errors.hpp"
#include "qramsey/models.hpp"
#include "qramsey/oracle.hpp"
#include "qramsey/protocol.hpp"
#include "qramsey/symmetry.hpp"

using namespace qramsey;

struct qramsey_model {
  ModelConfig config;
  FullSpectrum problem_spectrum;
  ReferenceState reference;
};

struct qramsey_sweep {
  SweepResult result;
};

struct qramsey_compare {
  struct Row {
    double total_runtime;
    double proposed;
    double conventional;
    double exact;
  };
  std::vector<Row> rows;
};

struct qramsey_scan {
  ScanReport report;
  // Borrowed-handle views over the per-sector sweeps; index-aligned with
  // report.sectors, null where classical or failed.
  std::vector<std::unique_ptr<qramsey_sweep>> sweeps;
};

struct qramsey_ghz {
  GhzResult result;
};

namespace {

thread_local std::string g_last_error;

int fail(int code, const std::string& message) {
  g_last_error = message;
  return code;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    return QRAMSEY_OK;
  } catch (const ConfigError& e) {
    return fail(QRAMSEY_ERR_CONFIG, e.what());
  } catch (const IoError& e) {
    return fail(QRAMSEY_ERR_IO, e.what());
  } catch (const PhysicsError& e) {
    return fail(QRAMSEY_ERR_PHYSICS, e.what());
  } catch (const std::exception& e) {
    return fail(QRAMSEY_ERR_PHYSICS, e.what());
  }
}

int require(bool condition, const char* message) {
  return condition ? QRAMSEY_OK : fail(QRAMSEY_ERR_CONFIG, message);
}

qramsey_model* build_model(ModelConfig cfg) {
  const HamiltonianSpec h_p = cfg.effective_problem();
  FullSpectrum spectrum = exact_diagonalize(h_p);
  const SectorDecomposition dec = decompose(cfg.conserved, cfg.n_qubits);
  ReferenceState reference = select_reference(dec, cfg.driver, h_p);
  return new qramsey_model{std::move(cfg), std::move(spectrum),
                           std::move(reference)};
}

RamseyOptions to_ramsey_options(const qramsey_sweep_options& o) {
  RamseyOptions r;
  r.T = o.T;
  r.grid = TauGrid{o.tau_min, o.tau_max, o.L};
  if (o.has_sector) r.sector_q = o.sector_q;
  r.level = o.level;
  r.relative_phase = o.relative_phase;
  if (o.shots > 0) r.shots = ShotOptions{o.shots, o.seed};
  r.settings.steps_per_unit_time = o.steps_per_unit_time;
  r.settings.method = o.use_rk4 ? Integrator::Rk4 : Integrator::MidpointExponential;
  r.cache_asp = o.cache_asp != 0;
  r.threads = o.threads;
  return r;
}

SpectralOptions to_spectral_options(const qramsey_sweep_options& o) {
  SpectralOptions s;
  s.omega_min = o.omega_min;
  s.omega_max = o.omega_max;
  s.oversample = o.oversample;
  s.hann = o.hann != 0;
  s.mean_subtract = o.mean_subtract != 0;
  s.peak_threshold = o.peak_threshold;
  s.min_separation = o.min_separation;
  s.least_squares = o.least_squares != 0;
  return s;
}

}  // namespace

extern "C" {

const char* qramsey_version(void) { return "0.1.0"; }

const char* qramsey_last_error(void) { return g_last_error.c_str(); }

int qramsey_model_load(const char* path, qramsey_model** out) {
  if (int rc = require(path && out, "model_load: null argument")) return rc;
  return guarded([&] { *out = build_model(parse_model_file(path)); });
}

int qramsey_model_parse(const char* json_text, qramsey_model** out) {
  if (int rc = require(json_text && out, "model_parse: null argument")) return rc;
  return guarded([&] { *out = build_model(parse_model_json(json_text)); });
}

void qramsey_model_free(qramsey_model* model) { delete model; }

int qramsey_model_n_qubits(const qramsey_model* model, int* out) {
  if (int rc = require(model && out, "model_n_qubits: null argument")) return rc;
  *out = model->config.n_qubits;
  return QRAMSEY_OK;
}

int qramsey_model_reference(const qramsey_model* model, double* q,
                            double* energy_problem, double* energy_driver) {
  if (int rc = require(model != nullptr, "model_reference: null model")) return rc;
  if (q) *q = model->reference.q;
  if (energy_problem) *energy_problem = model->reference.energy_problem;
  if (energy_driver) *energy_driver = model->reference.energy_driver;
  return QRAMSEY_OK;
}

int qramsey_oracle_energies(const qramsey_model* model, double* buf, int buf_len,
                            int* n_out) {
  if (int rc = require(model != nullptr, "oracle_energies: null model")) return rc;
  const int n = static_cast<int>(model->problem_spectrum.energies.size());
  if (n_out) *n_out = n;
  if (!buf) return QRAMSEY_OK;
  if (int rc = require(buf_len >= n, "oracle_energies: buffer too small")) return rc;
  for (int k = 0; k < n; ++k) buf[k] = model->problem_spectrum.energies[k];
  return QRAMSEY_OK;
}

int qramsey_oracle_gaps(const qramsey_model* model, int* levels, double* gaps,
                        int buf_len, int* n_out) {
  if (int rc = require(model != nullptr, "oracle_gaps: null model")) return rc;
  const std::vector<GapEntry> table =
      gap_table(model->problem_spectrum, model->reference.energy_problem);
  const int n = static_cast<int>(table.size());
  if (n_out) *n_out = n;
  if (!levels && !gaps) return QRAMSEY_OK;
  if (int rc = require(buf_len >= n, "oracle_gaps: buffer too small")) return rc;
  for (int k = 0; k < n; ++k) {
    if (levels) levels[k] = table[static_cast<size_t>(k)].level;
    if (gaps) gaps[k] = table[static_cast<size_t>(k)].gap;
  }
  return QRAMSEY_OK;
}

void qramsey_sweep_options_init(qramsey_sweep_options* options) {
  if (!options) return;
  options->T = 5.0;
  options->tau_min = 0.0;
  options->tau_max = 70.0;
  options->L = 1000;
  options->has_sector = 0;
  options->sector_q = 0.0;
  options->level = 0;
  options->relative_phase = 0.0;
  options->shots = 0;
  options->seed = 0;
  options->steps_per_unit_time = PropagationSettings{}.steps_per_unit_time;
  options->use_rk4 = 0;
  options->cache_asp = 1;
  options->threads = 1;
  options->omega_min = 0.05;
  options->omega_max = 0.0;
  options->oversample = 40.0;
  options->hann = 0;
  options->mean_subtract = 1;
  options->peak_threshold = 0.1;
  options->min_separation = 0.5;
  options->least_squares = 1;
}

int qramsey_sweep_run(const qramsey_model* model,
                      const qramsey_sweep_options* options, qramsey_sweep** out) {
  if (int rc = require(model && options && out, "sweep_run: null argument")) return rc;
  return guarded([&] {
    auto sweep = std::make_unique<qramsey_sweep>();
    sweep->result = run_sweep_pipeline(model->config, to_ramsey_options(*options),
                                       to_spectral_options(*options), true);
    *out = sweep.release();
  });
}

void qramsey_sweep_free(qramsey_sweep* sweep) { delete sweep; }

int qramsey_sweep_series_length(const qramsey_sweep* sweep, int* out) {
  if (int rc = require(sweep && out, "sweep_series_length: null argument")) return rc;
  *out = static_cast<int>(sweep->result.series.tau.size());
  return QRAMSEY_OK;
}

int qramsey_sweep_series(const qramsey_sweep* sweep, double* tau, double* p,
                         int buf_len) {
  if (int rc = require(sweep && tau && p, "sweep_series: null argument")) return rc;
  const int n = static_cast<int>(sweep->result.series.tau.size());
  if (int rc = require(buf_len >= n, "sweep_series: buffer too small")) return rc;
  std::copy_n(sweep->result.series.tau.begin(), n, tau);
  std::copy_n(sweep->result.series.p.begin(), n, p);
  return QRAMSEY_OK;
}

int qramsey_sweep_sampled(const qramsey_sweep* sweep, int* out) {
  if (int rc = require(sweep && out, "sweep_sampled: null argument")) return rc;
  *out = sweep->result.series.sampled ? 1 : 0;
  return QRAMSEY_OK;
}

int qramsey_sweep_spectrum_length(const qramsey_sweep* sweep, int* out) {
  if (int rc = require(sweep && out, "sweep_spectrum_length: null argument")) return rc;
  *out = static_cast<int>(sweep->result.spectrum.omega.size());
  return QRAMSEY_OK;
}

int qramsey_sweep_spectrum(const qramsey_sweep* sweep, double* omega, double* re,
                           double* im, int buf_len) {
  if (int rc = require(sweep && omega && re && im, "sweep_spectrum: null argument")) {
    return rc;
  }
  const int n = static_cast<int>(sweep->result.spectrum.omega.size());
  if (int rc = require(buf_len >= n, "sweep_spectrum: buffer too small")) return rc;
  for (int k = 0; k < n; ++k) {
    omega[k] = sweep->result.spectrum.omega[static_cast<size_t>(k)];
    re[k] = sweep->result.spectrum.values[static_cast<size_t>(k)].real();
    im[k] = sweep->result.spectrum.values[static_cast<size_t>(k)].imag();
  }
  return QRAMSEY_OK;
}

int qramsey_sweep_peak_count(const qramsey_sweep* sweep, int* out) {
  if (int rc = require(sweep && out, "sweep_peak_count: null argument")) return rc;
  *out = static_cast<int>(sweep->result.peaks.size());
  return QRAMSEY_OK;
}

int qramsey_sweep_peak(const qramsey_sweep* sweep, int index, double* omega_raw,
                       double* omega_refined, double* magnitude,
                       double* uncertainty, int* refinement) {
  if (int rc = require(sweep != nullptr, "sweep_peak: null sweep")) return rc;
  if (int rc = require(index >= 0 &&
                           index < static_cast<int>(sweep->result.peaks.size()),
                       "sweep_peak: index out of range")) {
    return rc;
  }
  const PeakEstimate& pe = sweep->result.peaks[static_cast<size_t>(index)];
  if (omega_raw) *omega_raw = pe.omega_raw;
  if (omega_refined) *omega_refined = pe.omega_refined;
  if (magnitude) *magnitude = pe.magnitude;
  if (uncertainty) *uncertainty = pe.uncertainty;
  if (refinement) *refinement = pe.refinement == Refinement::LeastSquares ? 1 : 0;
  return QRAMSEY_OK;
}

int qramsey_sweep_reference_energy(const qramsey_sweep* sweep, double* out) {
  if (int rc = require(sweep && out, "sweep_reference_energy: null argument")) return rc;
  *out = sweep->result.reference_energy;
  return QRAMSEY_OK;
}

int qramsey_sweep_estimate_count(const qramsey_sweep* sweep, int* out) {
  if (int rc = require(sweep && out, "sweep_estimate_count: null argument")) return rc;
  *out = static_cast<int>(sweep->result.report.estimates.size());
  return QRAMSEY_OK;
}

int qramsey_sweep_estimate(const qramsey_sweep* sweep, int index, double* omega,
                           double* energy, int* matched_level,
                           double* oracle_energy, double* relative_error,
                           int* cross_term) {
  if (int rc = require(sweep != nullptr, "sweep_estimate: null sweep")) return rc;
  if (int rc = require(
          index >= 0 &&
              index < static_cast<int>(sweep->result.report.estimates.size()),
          "sweep_estimate: index out of range")) {
    return rc;
  }
  const EnergyEstimate& est =
      sweep->result.report.estimates[static_cast<size_t>(index)];
  if (omega) *omega = est.omega;
  if (energy) *energy = est.energy;
  if (matched_level) *matched_level = est.matched_level;
  if (oracle_energy) *oracle_energy = est.oracle_energy;
  if (relative_error) *relative_error = est.relative_error;
  if (cross_term) *cross_term = est.cross_term ? 1 : 0;
  return QRAMSEY_OK;
}

int qramsey_conventional_estimate(const qramsey_model* model, double t_conv,
                                  int steps_per_unit_time, double* out) {
  if (int rc = require(model && out, "conventional_estimate: null argument")) return rc;
  return guarded([&] {
    PropagationSettings settings;
    if (steps_per_unit_time > 0) settings.steps_per_unit_time = steps_per_unit_time;
    *out = conventional_estimate(model->config, t_conv, settings);
  });
}

int qramsey_adiabatic_criterion(const qramsey_model* model, int s_grid_size,
                                double* out) {
  if (int rc = require(model && out, "adiabatic_criterion: null argument")) return rc;
  return guarded([&] { *out = adiabatic_criterion(model->config, s_grid_size); });
}

int qramsey_compare_run(const qramsey_model* model, const double* runtimes,
                        int n_runtimes, const qramsey_sweep_options* options,
                        qramsey_compare** out) {
  if (int rc = require(model && runtimes && options && out,
                       "compare_run: null argument")) {
    return rc;
  }
  if (int rc = require(n_runtimes > 0, "compare_run: empty runtime list")) return rc;
  return guarded([&] {
    auto compare = std::make_unique<qramsey_compare>();
    const double exact = model->problem_spectrum.energies[0];
    for (int i = 0; i < n_runtimes; ++i) {
      const double runtime = runtimes[i];
      if (runtime <= 2.0 * options->T) {
        throw ConfigError("compare: total runtime must exceed 2T");
      }
      qramsey_sweep_options o = *options;
      o.tau_min = 0.0;
      o.tau_max = runtime - 2.0 * options->T;
      const SweepResult sweep = run_sweep_pipeline(
          model->config, to_ramsey_options(o), to_spectral_options(o), true);
      // The reference sits at the top of the spectrum, so the ground state
      // is the peak with the largest beat frequency.
      double proposed = std::numeric_limits<double>::quiet_NaN();
      double lowest = std::numeric_limits<double>::infinity();
      for (const EnergyEstimate& est : sweep.report.estimates) {
        if (est.energy < lowest) {
          lowest = est.energy;
          proposed = est.energy;
        }
      }
      PropagationSettings settings;
      settings.steps_per_unit_time = o.steps_per_unit_time;
      const double conventional =
          conventional_estimate(model->config, runtime, settings);
      compare->rows.push_back(
          qramsey_compare::Row{runtime, proposed, conventional, exact});
    }
    *out = compare.release();
  });
}

void qramsey_compare_free(qramsey_compare* compare) { delete compare; }

int qramsey_compare_row_count(const qramsey_compare* compare, int* out) {
  if (int rc = require(compare && out, "compare_row_count: null argument")) return rc;
  *out = static_cast<int>(compare->rows.size());
  return QRAMSEY_OK;
}

int qramsey_compare_row(const qramsey_compare* compare, int index,
                        double* total_runtime, double* proposed,
                        double* conventional, double* exact) {
  if (int rc = require(compare != nullptr, "compare_row: null compare")) return rc;
  if (int rc = require(index >= 0 && index < static_cast<int>(compare->rows.size()),
                       "compare_row: index out of range")) {
    return rc;
  }
  const qramsey_compare::Row& row = compare->rows[static_cast<size_t>(index)];
  if (total_runtime) *total_runtime = row.total_runtime;
  if (proposed) *proposed = row.proposed;
  if (conventional) *conventional = row.conventional;
  if (exact) *exact = row.exact;
  return QRAMSEY_OK;
}

int qramsey_scan_run(const qramsey_model* model,
                     const qramsey_sweep_options* options, qramsey_scan** out) {
  if (int rc = require(model && options && out, "scan_run: null argument")) return rc;
  return guarded([&] {
    auto scan = std::make_unique<qramsey_scan>();
    scan->report = scan_subspaces(model->config, to_ramsey_options(*options),
                                  to_spectral_options(*options));
    for (const SectorScanEntry& entry : scan->report.sectors) {
      if (entry.sweep) {
        auto view = std::make_unique<qramsey_sweep>();
        view->result = *entry.sweep;
        scan->sweeps.push_back(std::move(view));
      } else {
        scan->sweeps.push_back(nullptr);
      }
    }
    *out = scan.release();
  });
}

void qramsey_scan_free(qramsey_scan* scan) { delete scan; }

int qramsey_scan_sector_count(const qramsey_scan* scan, int* out) {
  if (int rc = require(scan && out, "scan_sector_count: null argument")) return rc;
  *out = static_cast<int>(scan->report.sectors.size());
  return QRAMSEY_OK;
}

int qramsey_scan_sector(const qramsey_scan* scan, int index, double* q, int* dim,
                        int* classical, double* min_energy,
                        const char** error_message) {
  if (int rc = require(scan != nullptr, "scan_sector: null scan")) return rc;
  if (int rc = require(index >= 0 &&
                           index < static_cast<int>(scan->report.sectors.size()),
                       "scan_sector: index out of range")) {
    return rc;
  }
  const SectorScanEntry& entry = scan->report.sectors[static_cast<size_t>(index)];
  if (q) *q = entry.q;
  if (dim) *dim = entry.dim;
  if (classical) *classical = entry.classical ? 1 : 0;
  if (min_energy) *min_energy = entry.min_energy;
  if (error_message) *error_message = entry.error.c_str();
  return QRAMSEY_OK;
}

int qramsey_scan_sector_classical_energies(const qramsey_scan* scan, int index,
                                           double* buf, int buf_len, int* n_out) {
  if (int rc = require(scan != nullptr, "scan_sector_classical_energies: null scan")) {
    return rc;
  }
  if (int rc = require(index >= 0 &&
                           index < static_cast<int>(scan->report.sectors.size()),
                       "scan_sector_classical_energies: index out of range")) {
    return rc;
  }
  const SectorScanEntry& entry = scan->report.sectors[static_cast<size_t>(index)];
  const int n = static_cast<int>(entry.classical_energies.size());
  if (n_out) *n_out = n;
  if (!buf) return QRAMSEY_OK;
  if (int rc = require(buf_len >= n,
                       "scan_sector_classical_energies: buffer too small")) {
    return rc;
  }
  std::copy_n(entry.classical_energies.begin(), n, buf);
  return QRAMSEY_OK;
}

int qramsey_scan_sector_sweep(const qramsey_scan* scan, int index,
                              const qramsey_sweep** out) {
  if (int rc = require(scan && out, "scan_sector_sweep: null argument")) return rc;
  if (int rc = require(index >= 0 &&
                           index < static_cast<int>(scan->sweeps.size()),
                       "scan_sector_sweep: index out of range")) {
    return rc;
  }
  *out = scan->sweeps[static_cast<size_t>(index)].get();
  return QRAMSEY_OK;
}

int qramsey_scan_global_minimum(const qramsey_scan* scan, double* q, double* energy) {
  if (int rc = require(scan != nullptr, "scan_global_minimum: null scan")) return rc;
  if (q) *q = scan->report.global_min_q;
  if (energy) *energy = scan->report.global_min_energy;
  return QRAMSEY_OK;
}

void qramsey_ghz_options_init(qramsey_ghz_options* options) {
  if (!options) return;
  const GhzOptions defaults;
  options->t1 = defaults.t1;
  options->t2 = defaults.t2;
  options->t5 = defaults.t5;
  options->b1 = defaults.b1;
  options->b2 = defaults.b2;
  options->b3 = defaults.b3;
  options->leakage_threshold = defaults.leakage_threshold;
  options->steps_per_unit_time = defaults.settings.steps_per_unit_time;
}

int qramsey_ghz_run(const qramsey_model* model, const char* pattern,
                    const qramsey_ghz_options* options, qramsey_ghz** out) {
  if (int rc = require(model && pattern && options && out, "ghz_run: null argument")) {
    return rc;
  }
  return guarded([&] {
    GhzOptions o;
    o.t1 = options->t1;
    o.t2 = options->t2;
    o.t5 = options->t5;
    o.b1 = options->b1;
    o.b2 = options->b2;
    o.b3 = options->b3;
    o.leakage_threshold = options->leakage_threshold;
    o.settings.steps_per_unit_time = options->steps_per_unit_time;
    *out = new qramsey_ghz{prepare_ghz_pipeline(model->config, pattern, o)};
  });
}

void qramsey_ghz_free(qramsey_ghz* ghz) { delete ghz; }

int qramsey_ghz_diagnostics(const qramsey_ghz* ghz, double* parity_initial,
                            double* parity_after_stage1,
                            double* parity_after_stage2, double* ghz_branch_pop0,
                            double* ghz_branch_pop1, double* stage3_commutator,
                            double* pop_ground, double* pop_reference,
                            double* leakage) {
  if (int rc = require(ghz != nullptr, "ghz_diagnostics: null handle")) return rc;
  const GhzDiagnostics& d = ghz->result.diagnostics;
  if (parity_initial) *parity_initial = d.parity_initial;
  if (parity_after_stage1) *parity_after_stage1 = d.parity_after_stage1;
  if (parity_after_stage2) *parity_after_stage2 = d.parity_after_stage2;
  if (ghz_branch_pop0) *ghz_branch_pop0 = d.ghz_branch_pop0;
  if (ghz_branch_pop1) *ghz_branch_pop1 = d.ghz_branch_pop1;
  if (stage3_commutator) *stage3_commutator = d.stage3_commutator;
  if (pop_ground) *pop_ground = d.pop_ground;
  if (pop_reference) *pop_reference = d.pop_reference;
  if (leakage) *leakage = d.leakage;
  return QRAMSEY_OK;
}

}  // extern "C"
