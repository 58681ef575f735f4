// Copyright 2026 The qramsey authors
//
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#include "qramsey/evolution.hpp"

#include <cmath>
#include <complex>
#include <functional>

#include "qramsey/errors.hpp"

namespace qramsey {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

void validate(const PropagationSettings& s) {
  if (s.steps_per_unit_time <= 0) {
    throw ConfigError("propagation: steps_per_unit_time must be positive");
  }
  if (s.norm_tolerance <= 0.0) {
    throw ConfigError("propagation: norm_tolerance must be positive");
  }
}

int step_count(double span, const PropagationSettings& s) {
  return std::max(1, static_cast<int>(std::ceil(span * s.steps_per_unit_time)));
}

StateVector finish(int n_qubits, Eigen::VectorXcd amp, double norm_tolerance,
                   double* drift_out) {
  const double drift = std::abs(amp.norm() - 1.0);
  if (drift_out) *drift_out = drift;
  if (drift > norm_tolerance) {
    throw PhysicsError("propagation norm drift " + std::to_string(drift) +
                       " exceeds tolerance; reduce the step size");
  }
  return StateVector::from_amplitudes(n_qubits, std::move(amp));
}

/// One exactly-unitary step e^{-i H dt} via eigendecomposition of the dense
/// midpoint Hamiltonian. dt < 0 gives the adjoint step.
void midpoint_step(const Eigen::MatrixXcd& h_mid, double dt, Eigen::VectorXcd& amp) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h_mid);
  if (solver.info() != Eigen::Success) {
    throw PhysicsError("propagation: midpoint eigendecomposition failed");
  }
  Eigen::VectorXcd coeffs = solver.eigenvectors().adjoint() * amp;
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
    coeffs[k] *= std::exp(-kI * (solver.eigenvalues()[k] * dt));
  }
  amp = solver.eigenvectors() * coeffs;
}

/// Time-dependent driver shared by forward and adjoint paths. weight(t)
/// gives the driver mixing coefficient F(t); the Hamiltonian is
/// F(t) h_a + (1 - F(t)) h_b. For the adjoint, call with t0 > t1 (dt < 0).
Eigen::VectorXcd integrate(const HamiltonianSpec& h_a, const HamiltonianSpec& h_b,
                           const std::function<double(double)>& weight,
                           double t0, double t1, Eigen::VectorXcd amp,
                           const PropagationSettings& settings) {
  const int steps = step_count(std::abs(t1 - t0), settings);
  const double dt = (t1 - t0) / steps;
  if (settings.method == Integrator::MidpointExponential) {
    if (h_a.n_qubits() > settings.dense_cap) {
      throw ConfigError("propagation: system exceeds the dense cap; use rk4");
    }
    const Eigen::MatrixXcd ma = h_a.materialize(settings.dense_cap);
    const Eigen::MatrixXcd mb = h_b.materialize(settings.dense_cap);
    for (int k = 0; k < steps; ++k) {
      const double f = weight(t0 + (k + 0.5) * dt);
      midpoint_step(f * ma + (1.0 - f) * mb, dt, amp);
    }
    return amp;
  }
  // Classical rk4 on the matrix-free right-hand side -i H(t) psi.
  auto rhs = [&](double t, const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
    const double f = weight(t);
    return -kI * (f * h_a.apply(v) + (1.0 - f) * h_b.apply(v));
  };
  for (int k = 0; k < steps; ++k) {
    const double t = t0 + k * dt;
    const Eigen::VectorXcd k1 = rhs(t, amp);
    const Eigen::VectorXcd k2 = rhs(t + 0.5 * dt, amp + 0.5 * dt * k1);
    const Eigen::VectorXcd k3 = rhs(t + 0.5 * dt, amp + 0.5 * dt * k2);
    const Eigen::VectorXcd k4 = rhs(t + dt, amp + dt * k3);
    amp += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return amp;
}

}  // namespace

double Schedule::value(double t) const {
  if (T <= 0.0) throw ConfigError("schedule: T must be positive");
  if (tau < 0.0) throw ConfigError("schedule: tau must be nonnegative");
  if (t < 0.0 || t > total()) {
    throw ConfigError("schedule: t = " + std::to_string(t) + " outside [0, " +
                      std::to_string(total()) + "]");
  }
  if (t <= T) return 1.0 - t / T;
  if (t <= T + tau) return 0.0;
  return (t - (T + tau)) / T;
}

StateVector propagate(const HamiltonianSpec& h_d, const HamiltonianSpec& h_p,
                      const Schedule& schedule, double t0, double t1,
                      const StateVector& psi, const PropagationSettings& settings,
                      double* drift_out) {
  validate(settings);
  if (h_d.n_qubits() != h_p.n_qubits() || h_d.n_qubits() != psi.n_qubits()) {
    throw ConfigError("propagate: dimension mismatch");
  }
  if (!(t0 < t1)) throw ConfigError("propagate: need t0 < t1");
  schedule.value(t0);
  schedule.value(t1);
  Eigen::VectorXcd amp =
      integrate(h_d, h_p, [&](double t) { return schedule.value(t); }, t0, t1,
                psi.amplitudes(), settings);
  return finish(psi.n_qubits(), std::move(amp), settings.norm_tolerance, drift_out);
}

StateVector propagate_adjoint(const HamiltonianSpec& h_d, const HamiltonianSpec& h_p,
                              const Schedule& schedule, double t0, double t1,
                              const StateVector& psi,
                              const PropagationSettings& settings,
                              double* drift_out) {
  validate(settings);
  if (h_d.n_qubits() != h_p.n_qubits() || h_d.n_qubits() != psi.n_qubits()) {
    throw ConfigError("propagate_adjoint: dimension mismatch");
  }
  if (!(t0 < t1)) throw ConfigError("propagate_adjoint: need t0 < t1");
  schedule.value(t0);
  schedule.value(t1);
  // U^dagger equals backward integration from t1 down to t0; the integrator
  // handles the sign through the negative dt.
  Eigen::VectorXcd amp =
      integrate(h_d, h_p, [&](double t) { return schedule.value(t); }, t1, t0,
                psi.amplitudes(), settings);
  return finish(psi.n_qubits(), std::move(amp), settings.norm_tolerance, drift_out);
}

StateVector ramp_evolve(const HamiltonianSpec& h_from, const HamiltonianSpec& h_to,
                        double duration, const StateVector& psi,
                        const PropagationSettings& settings, double* drift_out) {
  validate(settings);
  if (h_from.n_qubits() != h_to.n_qubits() || h_from.n_qubits() != psi.n_qubits()) {
    throw ConfigError("ramp_evolve: dimension mismatch");
  }
  if (duration <= 0.0) throw ConfigError("ramp_evolve: duration must be positive");
  Eigen::VectorXcd amp =
      integrate(h_from, h_to, [duration](double t) { return 1.0 - t / duration; },
                0.0, duration, psi.amplitudes(), settings);
  return finish(psi.n_qubits(), std::move(amp), settings.norm_tolerance, drift_out);
}

StateVector evolve_static(const HamiltonianSpec& h, const StateVector& psi,
                          double tau, const PropagationSettings& settings) {
  validate(settings);
  if (h.n_qubits() != psi.n_qubits()) {
    throw ConfigError("evolve_static: dimension mismatch");
  }
  if (tau == 0.0) return psi;
  if (h.n_qubits() <= settings.dense_cap) {
    return evolve_static(exact_diagonalize(h, settings.dense_cap), psi, tau);
  }
  PropagationSettings s = settings;
  s.method = Integrator::Rk4;
  Eigen::VectorXcd amp = integrate(h, h, [](double) { return 1.0; }, 0.0, tau,
                                   psi.amplitudes(), s);
  return finish(psi.n_qubits(), std::move(amp), s.norm_tolerance, nullptr);
}

StateVector evolve_static(const FullSpectrum& spectrum, const StateVector& psi,
                          double tau) {
  if (spectrum.states.rows() != static_cast<Eigen::Index>(psi.dim())) {
    throw ConfigError("evolve_static: spectrum dimension mismatch");
  }
  Eigen::VectorXcd coeffs = spectrum.states.adjoint() * psi.amplitudes();
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
    coeffs[k] *= std::exp(-kI * (spectrum.energies[k] * tau));
  }
  return StateVector::from_amplitudes(psi.n_qubits(), spectrum.states * coeffs);
}

}  // namespace qramsey
