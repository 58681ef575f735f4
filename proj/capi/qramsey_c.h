/* Copyright 2026 The qramsey authors
 *
 * Licensed under the Apache License, Version 2.0; see LICENSE for details.
 *
 * C interface to the qramsey simulation library. All functions return a
 * status code: 0 success, 1 invalid configuration, 2 physics assertion
 * failure, 3 I/O failure. On failure qramsey_last_error() describes the
 * problem for the calling thread. Returned handles are owned by the caller
 * and released with the matching _free function unless documented as
 * borrowed.
 */

#ifndef QRAMSEY_C_H
#define QRAMSEY_C_H

#ifdef __cplusplus
extern "C" {
#endif

#define QRAMSEY_OK 0
#define QRAMSEY_ERR_CONFIG 1
#define QRAMSEY_ERR_PHYSICS 2
#define QRAMSEY_ERR_IO 3

typedef struct qramsey_model qramsey_model;
typedef struct qramsey_sweep qramsey_sweep;
typedef struct qramsey_compare qramsey_compare;
typedef struct qramsey_scan qramsey_scan;
typedef struct qramsey_ghz qramsey_ghz;

const char* qramsey_version(void);
/* Message for the most recent failure on the calling thread. */
const char* qramsey_last_error(void);

/* ---- model ---- */

int qramsey_model_load(const char* path, qramsey_model** out);
int qramsey_model_parse(const char* json_text, qramsey_model** out);
void qramsey_model_free(qramsey_model* model);

int qramsey_model_n_qubits(const qramsey_model* model, int* out);
/* Reference state: conserved-quantity eigenvalue and both energies. */
int qramsey_model_reference(const qramsey_model* model, double* q,
                            double* energy_problem, double* energy_driver);

/* Exact problem spectrum. n_out receives 2^n_qubits; buf may be NULL to
 * query the size only. */
int qramsey_oracle_energies(const qramsey_model* model, double* buf,
                            int buf_len, int* n_out);
/* Gaps reference_energy - E_level, descending. levels/gaps may be NULL. */
int qramsey_oracle_gaps(const qramsey_model* model, int* levels, double* gaps,
                        int buf_len, int* n_out);

/* ---- sweep ---- */

typedef struct {
  double T;
  double tau_min;
  double tau_max;
  int L;
  int has_sector; /* 0: pick the sector holding the driver ground */
  double sector_q;
  int level;
  double relative_phase;
  long long shots; /* 0: exact probabilities */
  unsigned long long seed;
  int steps_per_unit_time;
  int use_rk4;
  int cache_asp;
  int threads;
  double omega_min;
  double omega_max; /* <= 0: automatic */
  double oversample;
  int hann;
  int mean_subtract;
  double peak_threshold;
  double min_separation;
  int least_squares; /* 0: quadratic-only refinement */
} qramsey_sweep_options;

void qramsey_sweep_options_init(qramsey_sweep_options* options);

int qramsey_sweep_run(const qramsey_model* model,
                      const qramsey_sweep_options* options, qramsey_sweep** out);
void qramsey_sweep_free(qramsey_sweep* sweep);

int qramsey_sweep_series_length(const qramsey_sweep* sweep, int* out);
int qramsey_sweep_series(const qramsey_sweep* sweep, double* tau, double* p,
                         int buf_len);
int qramsey_sweep_sampled(const qramsey_sweep* sweep, int* out);
int qramsey_sweep_spectrum_length(const qramsey_sweep* sweep, int* out);
int qramsey_sweep_spectrum(const qramsey_sweep* sweep, double* omega, double* re,
                           double* im, int buf_len);
int qramsey_sweep_peak_count(const qramsey_sweep* sweep, int* out);
/* refinement receives 0 for quadratic, 1 for least-squares. */
int qramsey_sweep_peak(const qramsey_sweep* sweep, int index, double* omega_raw,
                       double* omega_refined, double* magnitude,
                       double* uncertainty, int* refinement);
int qramsey_sweep_reference_energy(const qramsey_sweep* sweep, double* out);
int qramsey_sweep_estimate_count(const qramsey_sweep* sweep, int* out);
/* matched_level is -1 and cross_term nonzero for unmatched peaks. */
int qramsey_sweep_estimate(const qramsey_sweep* sweep, int index, double* omega,
                           double* energy, int* matched_level,
                           double* oracle_energy, double* relative_error,
                           int* cross_term);

/* ---- baselines ---- */

int qramsey_conventional_estimate(const qramsey_model* model, double t_conv,
                                  int steps_per_unit_time, double* out);
int qramsey_adiabatic_criterion(const qramsey_model* model, int s_grid_size,
                                double* out);

/* Proposed-vs-conventional comparison at the given total runtimes. The
 * proposed run keeps options->T fixed and fills the remaining runtime with
 * the tau span; the conventional ramp uses the full runtime. */
int qramsey_compare_run(const qramsey_model* model, const double* runtimes,
                        int n_runtimes, const qramsey_sweep_options* options,
                        qramsey_compare** out);
void qramsey_compare_free(qramsey_compare* compare);
int qramsey_compare_row_count(const qramsey_compare* compare, int* out);
int qramsey_compare_row(const qramsey_compare* compare, int index,
                        double* total_runtime, double* proposed,
                        double* conventional, double* exact);

/* ---- sector scan ---- */

int qramsey_scan_run(const qramsey_model* model,
                     const qramsey_sweep_options* options, qramsey_scan** out);
void qramsey_scan_free(qramsey_scan* scan);
int qramsey_scan_sector_count(const qramsey_scan* scan, int* out);
/* error_message receives a borrowed string, empty when the sector succeeded. */
int qramsey_scan_sector(const qramsey_scan* scan, int index, double* q, int* dim,
                        int* classical, double* min_energy,
                        const char** error_message);
int qramsey_scan_sector_classical_energies(const qramsey_scan* scan, int index,
                                           double* buf, int buf_len, int* n_out);
/* Borrowed sweep handle for non-classical sectors; NULL for classical or
 * failed sectors. Do not free. */
int qramsey_scan_sector_sweep(const qramsey_scan* scan, int index,
                              const qramsey_sweep** out);
int qramsey_scan_global_minimum(const qramsey_scan* scan, double* q,
                                double* energy);

/* ---- staged initial-state preparation ---- */

typedef struct {
  double t1;
  double t2;
  double t5;
  double b1;
  double b2;
  double b3;
  double leakage_threshold;
  int steps_per_unit_time;
} qramsey_ghz_options;

void qramsey_ghz_options_init(qramsey_ghz_options* options);

/* pattern: one char per qubit, 'G' for the GHZ core, '+'/'-' for the
 * transverse-field product extension. */
int qramsey_ghz_run(const qramsey_model* model, const char* pattern,
                    const qramsey_ghz_options* options, qramsey_ghz** out);
void qramsey_ghz_free(qramsey_ghz* ghz);
int qramsey_ghz_diagnostics(const qramsey_ghz* ghz, double* parity_initial,
                            double* parity_after_stage1,
                            double* parity_after_stage2, double* ghz_branch_pop0,
                            double* ghz_branch_pop1, double* stage3_commutator,
                            double* pop_ground, double* pop_reference,
                            double* leakage);

#ifdef __cplusplus
}
#endif

#endif /* QRAMSEY_C_H */
