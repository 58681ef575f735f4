// Copyright 2026 The qramsey authors
//
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#pragma once
#include "qramsey/oracle.hpp"
#include "qramsey/pauli.hpp"
#include "qramsey/state.hpp"

namespace qramsey {

/// Piecewise-linear control F(t): ramps 1 -> 0 over [0, T], holds 0 over
/// [T, T + tau], ramps 0 -> 1 over [T + tau, 2T + tau].
struct Schedule {
  double T;
  double tau;

  double total() const { return 2.0 * T + tau; }
  /// Exact piecewise value; endpoints evaluate exactly. Throws ConfigError
  /// outside [0, total()].
  double value(double t) const;
};

enum class Integrator { MidpointExponential, Rk4 };

struct PropagationSettings {
  /// Steps per unit time (1/J). The default holds step-halving
  /// self-convergence below 1e-8 for the reference workload.
  int steps_per_unit_time = 4000;
  Integrator method = Integrator::MidpointExponential;
  /// Max tolerated norm drift before renormalization.
  double norm_tolerance = 1e-9;
  int dense_cap = kDefaultDenseCap;
};

/// Integrates i d|psi>/dt = [F(t) h_d + (1 - F(t)) h_p] |psi> from t0 to t1.
/// The result is renormalized; pre-correction drift above norm_tolerance is
/// an error (step size too coarse), and is written to drift_out when given.
StateVector propagate(const HamiltonianSpec& h_d, const HamiltonianSpec& h_p,
                      const Schedule& schedule, double t0, double t1,
                      const StateVector& psi,
                      const PropagationSettings& settings = {},
                      double* drift_out = nullptr);

/// Applies the adjoint of the propagate() unitary: U(t0 -> t1)^dagger |psi>.
StateVector propagate_adjoint(const HamiltonianSpec& h_d, const HamiltonianSpec& h_p,
                              const Schedule& schedule, double t0, double t1,
                              const StateVector& psi,
                              const PropagationSettings& settings = {},
                              double* drift_out = nullptr);

/// Single linear ramp H(s) = (1 - s) h_from + s h_to with s = t / duration.
StateVector ramp_evolve(const HamiltonianSpec& h_from, const HamiltonianSpec& h_to,
                        double duration, const StateVector& psi,
                        const PropagationSettings& settings = {},
                        double* drift_out = nullptr);

/// e^{-i H tau} |psi>. Uses one dense eigendecomposition (exact phases) when
/// the system fits the dense cap, the time-stepping integrator otherwise.
StateVector evolve_static(const HamiltonianSpec& h, const StateVector& psi,
                          double tau, const PropagationSettings& settings = {});

/// e^{-i H tau} |psi> from a precomputed eigensystem; phases are exact and
/// independent of tau magnitude.
StateVector evolve_static(const FullSpectrum& spectrum, const StateVector& psi,
                          double tau);

}  // namespace qramsey
