// Copyright 2026 The qramsey authors
//
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#include "qramsey/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include "qramsey/errors.hpp"

namespace qramsey {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Sector of the conserved quantity holding the driver's lowest energy.
double lowest_driver_sector(const SectorDecomposition& dec,
                            const HamiltonianSpec& h_d, int dense_cap) {
  double best_q = 0.0;
  double best_e = std::numeric_limits<double>::infinity();
  for (const Sector& s : dec.sectors) {
    const SectorEigensystem sys =
        diagonalize_sector(h_d, s, HamiltonianLabel::Driver, dec.q_op, dense_cap);
    if (sys.energies.front() < best_e) {
      best_e = sys.energies.front();
      best_q = s.q_value;
    }
  }
  return best_q;
}

}  // namespace

void TauGrid::validate() const {
  if (L < 2) throw ConfigError("tau grid: L must be at least 2");
  if (!(tau_min < tau_max)) throw ConfigError("tau grid: need tau_min < tau_max");
  if (tau_min < 0.0) throw ConfigError("tau grid: tau_min must be nonnegative");
}

RamseyEngine::RamseyEngine(const ModelConfig& model, const RamseyOptions& options)
    : opt_(options),
      h_d_(model.driver),
      h_p_(model.effective_problem()),
      decomposition_(decompose(model.conserved, model.n_qubits)),
      reference_(select_reference(decomposition_, h_d_, h_p_,
                                  options.settings.dense_cap)),
      problem_spectrum_(exact_diagonalize(h_p_, options.settings.dense_cap)),
      psi_g_(StateVector::basis(model.n_qubits, 0)),
      psi_ini_(StateVector::basis(model.n_qubits, 0)) {
  if (opt_.T <= 0.0) throw ConfigError("ramsey: T must be positive");
  opt_.grid.validate();
  if (opt_.threads < 1) throw ConfigError("ramsey: threads must be at least 1");
  if (opt_.shots && opt_.shots->count < 1) {
    throw ConfigError("ramsey: shot count must be positive");
  }

  sector_q_ = opt_.sector_q
                  ? *opt_.sector_q
                  : lowest_driver_sector(decomposition_, h_d_,
                                         opt_.settings.dense_cap);
  const Sector& sector = decomposition_.sector_with_q(sector_q_);
  const SectorEigensystem sys_d = diagonalize_sector(
      h_d_, sector, HamiltonianLabel::Driver, decomposition_.q_op,
      opt_.settings.dense_cap);
  if (opt_.level < 0 || opt_.level >= sector.dim()) {
    throw ConfigError("ramsey: level outside the ground-branch sector");
  }
  psi_g_ = sys_d.states[static_cast<size_t>(opt_.level)];
  if (std::abs(psi_g_.overlap(reference_.state)) > 1e-10) {
    throw ConfigError(
        "ramsey: ground branch is not orthogonal to the reference state; "
        "choose a different sector or level");
  }
  psi_ini_ = StateVector::from_amplitudes(
      model.n_qubits,
      (psi_g_.amplitudes() +
       std::exp(kI * opt_.relative_phase) * reference_.state.amplitudes()) /
          std::numbers::sqrt2);

  // Forward ramp output and reverse-ramp adjoint image. Both ramps are
  // independent of tau in local time, so one propagation each serves the
  // whole sweep.
  const Schedule ramp{opt_.T, 0.0};
  const StateVector psi_T =
      propagate(h_d_, h_p_, ramp, 0.0, opt_.T, psi_ini_, opt_.settings);
  const StateVector phi_rev = propagate_adjoint(h_d_, h_p_, ramp, opt_.T,
                                                2.0 * opt_.T, psi_ini_,
                                                opt_.settings);
  coeff_fwd_ = problem_spectrum_.states.adjoint() * psi_T.amplitudes();
  coeff_rev_ = problem_spectrum_.states.adjoint() * phi_rev.amplitudes();
}

double RamseyEngine::run_once(double tau, bool faithful) const {
  if (tau < 0.0) throw ConfigError("ramsey: tau must be nonnegative");
  if (!faithful) {
    std::complex<double> amp{0.0, 0.0};
    for (Eigen::Index k = 0; k < coeff_fwd_.size(); ++k) {
      amp += std::conj(coeff_rev_[k]) *
             std::exp(-kI * (problem_spectrum_.energies[k] * tau)) *
             coeff_fwd_[k];
    }
    return std::clamp(std::norm(amp), 0.0, 1.0);
  }
  const Schedule schedule{opt_.T, tau};
  StateVector psi =
      propagate(h_d_, h_p_, schedule, 0.0, opt_.T, psi_ini_, opt_.settings);
  psi = evolve_static(problem_spectrum_, psi, tau);
  psi = propagate(h_d_, h_p_, schedule, opt_.T + tau, 2.0 * opt_.T + tau, psi,
                  opt_.settings);
  return std::clamp(std::norm(psi_ini_.overlap(psi)), 0.0, 1.0);
}

RamseySeries RamseyEngine::sweep() const {
  RamseySeries series;
  const int L = opt_.grid.L;
  series.tau.resize(static_cast<size_t>(L));
  series.p.resize(static_cast<size_t>(L));
  for (int n = 0; n < L; ++n) series.tau[static_cast<size_t>(n)] = opt_.grid.tau(n);

  const bool faithful = !opt_.cache_asp;
  auto worker = [&](int begin, int end) {
    for (int n = begin; n < end; ++n) {
      series.p[static_cast<size_t>(n)] =
          run_once(series.tau[static_cast<size_t>(n)], faithful);
    }
  };
  const int n_threads = std::min(opt_.threads, L);
  if (n_threads <= 1) {
    worker(0, L);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (L + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t) {
      const int begin = t * chunk;
      const int end = std::min(L, begin + chunk);
      if (begin < end) pool.emplace_back(worker, begin, end);
    }
    for (std::thread& th : pool) th.join();
  }

  if (opt_.shots) {
    series.sampled = true;
    const long long shots = opt_.shots->count;
    for (int n = 0; n < L; ++n) {
      // One generator per grid point keyed by (seed, n): sampling order and
      // thread count never change the draw.
      std::mt19937_64 rng(splitmix64(opt_.shots->seed ^
                                     (0x9E3779B97F4A7C15ULL *
                                      (static_cast<std::uint64_t>(n) + 1))));
      std::binomial_distribution<long long> dist(
          shots, series.p[static_cast<size_t>(n)]);
      series.p[static_cast<size_t>(n)] =
          static_cast<double>(dist(rng)) / static_cast<double>(shots);
    }
  }
  return series;
}

double conventional_estimate(const ModelConfig& model, double t_conv,
                             const PropagationSettings& settings) {
  if (t_conv <= 0.0) throw ConfigError("conventional: T_conv must be positive");
  const HamiltonianSpec h_p = model.effective_problem();
  const FullSpectrum driver = exact_diagonalize(model.driver, settings.dense_cap);
  const StateVector start =
      StateVector::from_amplitudes(model.n_qubits, driver.states.col(0));
  const StateVector final_state =
      ramp_evolve(model.driver, h_p, t_conv, start, settings);
  return h_p.expectation(final_state.amplitudes());
}

double adiabatic_criterion(const ModelConfig& model, int s_grid_size) {
  if (s_grid_size < 2) throw ConfigError("adiabatic criterion: grid size >= 2");
  const Eigen::MatrixXcd md = model.driver.materialize();
  const Eigen::MatrixXcd mp = model.effective_problem().materialize();
  const Eigen::MatrixXcd dh = mp - md;
  double worst = 0.0;
  for (int k = 0; k < s_grid_size; ++k) {
    const double s = static_cast<double>(k) / (s_grid_size - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver((1.0 - s) * md + s * mp);
    if (solver.info() != Eigen::Success) {
      throw PhysicsError("adiabatic criterion: eigensolver failed");
    }
    const Eigen::VectorXcd ground = solver.eigenvectors().col(0);
    const Eigen::VectorXcd image = dh * ground;
    for (Eigen::Index n = 1; n < solver.eigenvalues().size(); ++n) {
      const double element = std::abs(solver.eigenvectors().col(n).dot(image));
      if (element <= 1e-12) continue;
      const double gap = solver.eigenvalues()[n] - solver.eigenvalues()[0];
      if (std::abs(gap) < 1e-10) {
        return std::numeric_limits<double>::infinity();
      }
      worst = std::max(worst, element / (gap * gap));
    }
  }
  return worst;
}

SweepResult run_sweep_pipeline(const ModelConfig& model,
                               const RamseyOptions& options,
                               const SpectralOptions& spectral,
                               bool match_oracle) {
  options.grid.validate();
  if (options.grid.L < 8) {
    throw ConfigError("sweep pipeline: grid too short for spectral analysis");
  }
  const RamseyEngine engine(model, options);
  SweepResult result;
  result.series = engine.sweep();
  result.reference_energy = engine.reference().energy_problem;

  double omega_max = spectral.omega_max;
  if (omega_max <= 0.0) {
    omega_max = 1.2 * (result.reference_energy -
                       engine.problem_spectrum().energies.minCoeff());
    if (omega_max <= spectral.omega_min) omega_max = spectral.omega_min + 1.0;
  }
  const double span = options.grid.tau_max - options.grid.tau_min;
  const double cell = 2.0 * std::numbers::pi / span;
  const int n_omega = std::max(
      64, static_cast<int>(std::ceil((omega_max - spectral.omega_min) / cell *
                                     spectral.oversample)));
  DftOptions dft_options;
  dft_options.mean_subtract = spectral.mean_subtract;
  dft_options.hann = spectral.hann;
  result.spectrum = dft(result.series.tau, result.series.p, spectral.omega_min,
                        omega_max, n_omega, dft_options);
  result.peaks = find_peaks(result.spectrum, spectral.peak_threshold,
                            spectral.min_separation);
  if (spectral.least_squares) {
    result.peaks = refine_least_squares(result.series.tau, result.series.p,
                                        result.spectrum, result.peaks);
  }
  if (match_oracle) {
    const Eigen::VectorXd& energies = engine.problem_spectrum().energies;
    const std::vector<double> oracle(energies.data(), energies.data() + energies.size());
    result.report = reconstruct(result.peaks, result.reference_energy, &oracle);
  } else {
    result.report = reconstruct(result.peaks, result.reference_energy, nullptr);
  }
  return result;
}

ScanReport scan_subspaces(const ModelConfig& model, const RamseyOptions& base,
                          const SpectralOptions& spectral) {
  const HamiltonianSpec h_p = model.effective_problem();
  const SectorDecomposition dec = decompose(model.conserved, model.n_qubits);
  const ReferenceState ref =
      select_reference(dec, model.driver, h_p, base.settings.dense_cap);

  ScanReport report;
  report.global_min_energy = std::numeric_limits<double>::infinity();
  for (const Sector& sector : dec.sectors) {
    SectorScanEntry entry;
    entry.q = sector.q_value;
    entry.dim = sector.dim();
    if (sector.dim() == 1 || std::abs(sector.q_value - ref.q) <= 1e-10) {
      // One-dimensional sectors and the reference's own sector carry
      // classically known energies; no interferometry needed.
      entry.classical = true;
      const SectorEigensystem sys =
          diagonalize_sector(h_p, sector, HamiltonianLabel::Problem, dec.q_op,
                             base.settings.dense_cap);
      entry.classical_energies = sys.energies;
      entry.min_energy = sys.energies.front();
    } else {
      try {
        RamseyOptions options = base;
        options.sector_q = sector.q_value;
        entry.sweep = run_sweep_pipeline(model, options, spectral, true);
        double lowest = std::numeric_limits<double>::infinity();
        for (const EnergyEstimate& est : entry.sweep->report.estimates) {
          lowest = std::min(lowest, est.energy);
        }
        entry.min_energy = lowest;
      } catch (const std::exception& e) {
        entry.error = e.what();
        report.sectors.push_back(std::move(entry));
        continue;
      }
    }
    if (entry.min_energy < report.global_min_energy) {
      report.global_min_energy = entry.min_energy;
      report.global_min_q = entry.q;
    }
    report.sectors.push_back(std::move(entry));
  }
  if (!std::isfinite(report.global_min_energy)) {
    throw PhysicsError("scan: every sector failed");
  }
  return report;
}

GhzResult prepare_ghz_pipeline(const ModelConfig& model, const std::string& pattern,
                               const GhzOptions& options) {
  const int n = model.n_qubits;
  if (static_cast<int>(pattern.size()) != n) {
    throw ConfigError("ghz pipeline: pattern length must equal n_qubits");
  }
  std::vector<int> core_qubits;
  for (int i = 0; i < n; ++i) {
    const char c = pattern[static_cast<size_t>(i)];
    if (c == 'G') core_qubits.push_back(i);
    else if (c != '+' && c != '-') {
      throw ConfigError("ghz pipeline: pattern characters must be G, + or -");
    }
  }
  const int k = static_cast<int>(core_qubits.size());
  if (k < 2 || k % 2 != 0) {
    throw ConfigError("ghz pipeline: need an even GHZ core of at least 2 qubits");
  }
  if (!model.driver_params) {
    throw ConfigError(
        "ghz pipeline: model driver must come from the pairwise-XY builder");
  }
  if (options.t1 <= 0.0 || options.t2 <= 0.0 || options.t5 <= 0.0) {
    throw ConfigError("ghz pipeline: stage durations must be positive");
  }

  std::vector<double> b_core;
  for (int q : core_qubits) {
    b_core.push_back(model.driver_params->b[static_cast<size_t>(q)]);
  }
  const GhzHamiltonians core_h =
      build_ghz_hamiltonians(k, options.b1, options.b2, options.b3, b_core);
  const HamiltonianSpec parity(
      k, {Term{1.0, PauliString(k, std::vector<Pauli>(static_cast<size_t>(k),
                                                      Pauli::X))}});

  GhzDiagnostics diag;
  const std::uint64_t core_dim = std::uint64_t{1} << k;
  StateVector core = StateVector::from_amplitudes(
      k, Eigen::VectorXcd::Constant(static_cast<Eigen::Index>(core_dim), 1.0));
  diag.parity_initial = parity.expectation(core.amplitudes());

  core = ramp_evolve(core_h.h1, core_h.h2, options.t1, core, options.settings);
  diag.parity_after_stage1 = parity.expectation(core.amplitudes());
  diag.ghz_branch_pop0 = std::norm(core.amplitudes()[0]);
  diag.ghz_branch_pop1 =
      std::norm(core.amplitudes()[static_cast<Eigen::Index>(core_dim - 1)]);

  core = ramp_evolve(core_h.h2, core_h.h3, options.t2, core, options.settings);
  diag.parity_after_stage2 = parity.expectation(core.amplitudes());

  // Stage 3 is an instantaneous Hamiltonian switch; the state only survives
  // it untouched because the two operators commute.
  diag.stage3_commutator = commutator_norm(core_h.h3, core_h.h4);
  if (diag.stage3_commutator > 1e-12) {
    throw PhysicsError("ghz pipeline: stage-3 Hamiltonians do not commute");
  }

  // Stage 4: tensor extension with single-qubit x-eigenstates.
  const std::uint64_t full_dim = std::uint64_t{1} << n;
  const double ext_norm =
      std::pow(std::numbers::sqrt2, -static_cast<double>(n - k));
  Eigen::VectorXcd full = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(full_dim));
  for (std::uint64_t b = 0; b < full_dim; ++b) {
    std::uint64_t core_index = 0;
    for (int c = 0; c < k; ++c) {
      if (b >> core_qubits[static_cast<size_t>(c)] & 1) {
        core_index |= std::uint64_t{1} << c;
      }
    }
    double sign = 1.0;
    for (int i = 0; i < n; ++i) {
      if (pattern[static_cast<size_t>(i)] == '-' && (b >> i & 1)) sign = -sign;
    }
    full[static_cast<Eigen::Index>(b)] =
        core.amplitudes()[static_cast<Eigen::Index>(core_index)] * sign * ext_norm;
  }
  StateVector psi = StateVector::from_amplitudes(n, std::move(full));

  // Stage 5: ramp from the matching transverse field into the driver.
  std::vector<Term> trans_terms;
  for (int i = 0; i < n; ++i) {
    trans_terms.push_back(Term{model.driver_params->b[static_cast<size_t>(i)],
                               PauliString::single(n, i, Pauli::X)});
  }
  const HamiltonianSpec h_trans(n, std::move(trans_terms));
  psi = ramp_evolve(h_trans, model.driver, options.t5, psi, options.settings);

  const HamiltonianSpec h_p = model.effective_problem();
  const SectorDecomposition dec = decompose(model.conserved, n);
  const ReferenceState ref =
      select_reference(dec, model.driver, h_p, options.settings.dense_cap);
  const FullSpectrum driver =
      exact_diagonalize(model.driver, options.settings.dense_cap);
  const StateVector driver_ground =
      StateVector::from_amplitudes(n, driver.states.col(0));

  diag.pop_ground = psi.fidelity(driver_ground);
  diag.pop_reference = psi.fidelity(ref.state);
  diag.leakage = 1.0 - diag.pop_ground - diag.pop_reference;
  if (diag.leakage > options.leakage_threshold) {
    throw PhysicsError("ghz pipeline: leakage " + std::to_string(diag.leakage) +
                       " above threshold");
  }
  return GhzResult{psi, diag};
}

}  // namespace qramsey
