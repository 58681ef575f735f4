// Copyright 2026 The qramsey authors
//
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#pragma once
#include <complex>
#include <vector>

namespace qramsey {

struct DftOptions {
  /// Subtract the series mean before transforming, suppressing the DC term.
  bool mean_subtract = true;
  /// Apply a Hann window; useful when leakage from strong peaks buries weak
  /// ones. Off by default.
  bool hann = false;
};

/// Sampled f(omega) = sum_n P(tau_n) e^{-i omega tau_n}.
struct Spectrum {
  std::vector<double> omega;                 // strictly ascending
  std::vector<std::complex<double>> values;  // same length as omega
  bool mean_subtracted = true;
  double tau_span = 0.0;  // tau_max - tau_min of the source series
  int n_samples = 0;
};

/// Direct-evaluation discrete Fourier transform of an arbitrary-length
/// series on an arbitrary omega grid.
Spectrum dft(const std::vector<double>& tau, const std::vector<double>& p,
             double omega_min, double omega_max, int n_omega,
             const DftOptions& options = {});

enum class Refinement { Quadratic, LeastSquares };

struct PeakEstimate {
  double omega_raw;      // grid argmax
  double omega_refined;  // within one coarse cell of omega_raw
  double magnitude;      // |f| at the grid argmax
  double uncertainty;    // 1 / tau_span heuristic
  Refinement refinement = Refinement::Quadratic;
};

/// Local maxima of |f| above threshold_fraction of the global maximum,
/// separated by at least min_separation, refined by quadratic interpolation
/// through the three samples around each argmax. Ascending in omega.
/// Throws when no peak clears the threshold.
std::vector<PeakEstimate> find_peaks(const Spectrum& spec,
                                     double threshold_fraction = 0.1,
                                     double min_separation = 0.5);

/// Sub-grid refinement: iteratively extracts dominant cosine components from
/// the series (subtract-and-repeat until the residual spectrum drops below
/// 0.4% of the original maximum), then jointly fits
/// P(tau) ~ a0 + sum_k b_k cos(w_k tau + phi_k) by Levenberg-Marquardt.
/// Each input peak is mapped to the nearest fitted frequency.
std::vector<PeakEstimate> refine_least_squares(const std::vector<double>& tau,
                                               const std::vector<double>& p,
                                               const Spectrum& spec,
                                               std::vector<PeakEstimate> peaks);

struct EnergyEstimate {
  double omega;
  double energy;  // reference_energy - omega
  int matched_level = -1;        // index into the oracle spectrum, -1 if none
  double oracle_energy = 0.0;    // valid when matched_level >= 0
  double relative_error = 0.0;   // valid when matched_level >= 0
  bool cross_term = false;       // no oracle level claimed this peak
};

struct EnergyReport {
  double reference_energy = 0.0;
  std::vector<EnergyEstimate> estimates;  // ascending energy
};

/// Turns peak frequencies into absolute energies below the reference. When
/// oracle energies are given, each estimate is matched to the nearest level,
/// each level at most once, smallest distance first; leftovers are flagged
/// as cross-terms.
EnergyReport reconstruct(const std::vector<PeakEstimate>& peaks,
                         double reference_energy,
                         const std::vector<double>* oracle_energies = nullptr);

}  // namespace qramsey
