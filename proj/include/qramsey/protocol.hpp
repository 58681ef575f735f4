// Copyright 2026 The qramsey authors
//
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qramsey/evolution.hpp"
#include "qramsey/models.hpp"
#include "qramsey/oracle.hpp"
#include "qramsey/spectral.hpp"
#include "qramsey/state.hpp"
#include "qramsey/symmetry.hpp"

namespace qramsey {

/// Uniform tau grid: tau_n = tau_min + n * (tau_max - tau_min) / (L - 1)
/// for n = 0 .. L-1.
struct TauGrid {
  double tau_min = 0.0;
  double tau_max = 70.0;
  int L = 1000;

  void validate() const;
  double tau(int n) const {
    return tau_min + static_cast<double>(n) * (tau_max - tau_min) /
                         static_cast<double>(L - 1);
  }
};

struct ShotOptions {
  long long count = 100000;
  std::uint64_t seed = 0;
};

struct RamseyOptions {
  double T = 5.0;
  TauGrid grid;
  /// Sector carrying the ground branch (q'). Defaults to the sector holding
  /// the driver's lowest energy.
  std::optional<double> sector_q;
  /// Driver level within the ground-branch sector (0 = sector ground).
  int level = 0;
  /// Phase injected on the reference branch of the initial superposition.
  double relative_phase = 0.0;
  std::optional<ShotOptions> shots;
  PropagationSettings settings;
  /// Reuse the ASP output state and the (tau-independent) reverse-ASP
  /// unitary across the sweep instead of re-simulating per point.
  bool cache_asp = true;
  int threads = 1;
};

struct RamseySeries {
  std::vector<double> tau;
  std::vector<double> p;
  bool sampled = false;
};

/// Runs the interferometric estimation protocol: prepares the equal-weight
/// ground/reference superposition, sweeps the phase-accumulation time and
/// returns projection probabilities.
class RamseyEngine {
 public:
  RamseyEngine(const ModelConfig& model, const RamseyOptions& options);

  const ReferenceState& reference() const { return reference_; }
  const FullSpectrum& problem_spectrum() const { return problem_spectrum_; }
  const StateVector& initial_state() const { return psi_ini_; }
  const StateVector& ground_branch() const { return psi_g_; }
  double ground_sector_q() const { return sector_q_; }
  const HamiltonianSpec& problem() const { return h_p_; }

  /// One protocol execution for a single tau. faithful = true re-simulates
  /// the forward ramp, the static segment and the reverse ramp end to end;
  /// faithful = false uses the cached ramp results (identical within 1e-9).
  double run_once(double tau, bool faithful) const;

  RamseySeries sweep() const;

 private:
  RamseyOptions opt_;
  HamiltonianSpec h_d_;
  HamiltonianSpec h_p_;
  SectorDecomposition decomposition_;
  ReferenceState reference_;
  FullSpectrum problem_spectrum_;
  double sector_q_ = 0.0;
  StateVector psi_g_;
  StateVector psi_ini_;
  // ASP output and reverse-ramp adjoint image, projected onto the problem
  // eigenbasis; the cached amplitude at tau is sum_k conj(b_k) e^{-iE_k tau} a_k.
  Eigen::VectorXcd coeff_fwd_;
  Eigen::VectorXcd coeff_rev_;
};

/// Baseline estimator: single linear ramp from the driver ground state over
/// T_conv, then <H_P> of the final state.
double conventional_estimate(const ModelConfig& model, double t_conv,
                             const PropagationSettings& settings = {});

/// Max over a uniform s-grid and all excited levels of
/// |<e_n| d H/ds |g>| / (E_n - E_g)^2 for H(s) = (1-s) H_D + s H_P.
/// Degenerate gaps below 1e-10 yield infinity.
double adiabatic_criterion(const ModelConfig& model, int s_grid_size = 201);

struct SpectralOptions {
  double omega_min = 0.05;
  /// 0 selects 1.2 * (E_ref - E_min) automatically.
  double omega_max = 0.0;
  /// Omega samples per natural resolution cell 2*pi / tau_span.
  double oversample = 40.0;
  bool mean_subtract = true;
  bool hann = false;
  double peak_threshold = 0.1;
  double min_separation = 0.5;
  /// false keeps quadratic-only refinement.
  bool least_squares = true;
};

struct SweepResult {
  RamseySeries series;
  Spectrum spectrum;
  std::vector<PeakEstimate> peaks;
  EnergyReport report;
  double reference_energy = 0.0;
};

/// Sweep + transform + peak detection + energy reconstruction in one call.
/// match_oracle matches estimates against the exact problem spectrum.
SweepResult run_sweep_pipeline(const ModelConfig& model,
                               const RamseyOptions& options,
                               const SpectralOptions& spectral,
                               bool match_oracle = true);

struct SectorScanEntry {
  double q = 0.0;
  int dim = 0;
  /// Dimension-1 sectors (and the reference's own sector) are read off
  /// classically instead of running the interferometric protocol.
  bool classical = false;
  std::vector<double> classical_energies;
  std::optional<SweepResult> sweep;
  double min_energy = 0.0;
  std::string error;  // non-empty marks a failed sector; scan continues
};

struct ScanReport {
  std::vector<SectorScanEntry> sectors;
  double global_min_energy = 0.0;
  double global_min_q = 0.0;
};

/// Runs the pipeline once per sector of the conserved quantity and reports
/// the global minimum energy across all sectors.
ScanReport scan_subspaces(const ModelConfig& model, const RamseyOptions& base,
                          const SpectralOptions& spectral);

struct GhzOptions {
  double t1 = 50.0;  // ramp |++..+> ground into the GHZ ground space
  double t2 = 50.0;  // rotate the ground space onto the x-basis form
  double t5 = 50.0;  // final ramp from the transverse field to the driver
  double b1 = -1.0;
  double b2 = 1.0;
  double b3 = 1.0;
  double leakage_threshold = 0.05;
  PropagationSettings settings;

  GhzOptions() { settings.steps_per_unit_time = 200; }
};

struct GhzDiagnostics {
  double parity_initial = 0.0;
  double parity_after_stage1 = 0.0;
  double parity_after_stage2 = 0.0;
  double ghz_branch_pop0 = 0.0;  // |<0..0|core>|^2 after stage 1
  double ghz_branch_pop1 = 0.0;  // |<1..1|core>|^2 after stage 1
  double stage3_commutator = 0.0;
  double pop_ground = 0.0;     // final overlap with the driver ground state
  double pop_reference = 0.0;  // final overlap with the reference state
  double leakage = 0.0;        // 1 - pop_ground - pop_reference
};

struct GhzResult {
  StateVector state;
  GhzDiagnostics diagnostics;
};

/// Staged preparation of the ground/reference superposition from a product
/// state. pattern assigns each qubit a role: 'G' joins the GHZ core, '+'
/// and '-' start in the corresponding transverse-field eigenstate. Requires
/// a model whose driver was built from the pairwise-XY builder (the final
/// ramp needs its field vector).
GhzResult prepare_ghz_pipeline(const ModelConfig& model, const std::string& pattern,
                               const GhzOptions& options = {});

}  // namespace qramsey
