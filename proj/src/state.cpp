// Copyright 2026 The qramsey authors
//
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#include "qramsey/state.hpp"

#include "qramsey/errors.hpp"

namespace qramsey {

StateVector StateVector::basis(int n_qubits, std::uint64_t index) {
  if (n_qubits < 1 || n_qubits > 62) throw ConfigError("n_qubits out of range");
  const auto d = std::uint64_t{1} << n_qubits;
  if (index >= d) throw ConfigError("basis index out of range");
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(d));
  amp[static_cast<Eigen::Index>(index)] = 1.0;
  return StateVector(n_qubits, std::move(amp));
}

StateVector StateVector::from_amplitudes(int n_qubits, Eigen::VectorXcd amplitudes) {
  if (n_qubits < 1 || n_qubits > 62) throw ConfigError("n_qubits out of range");
  const auto d = std::uint64_t{1} << n_qubits;
  if (amplitudes.size() != static_cast<Eigen::Index>(d)) {
    throw ConfigError("amplitude count does not match 2^n_qubits");
  }
  const double norm = amplitudes.norm();
  if (norm < 1e-12) throw ConfigError("cannot normalize a zero state vector");
  amplitudes /= norm;
  return StateVector(n_qubits, std::move(amplitudes));
}

std::complex<double> StateVector::overlap(const StateVector& other) const {
  if (other.n_ != n_) throw ConfigError("overlap: qubit counts differ");
  return amp_.dot(other.amp_);
}

double StateVector::fidelity(const StateVector& other) const {
  const std::complex<double> o = overlap(other);
  return std::norm(o);
}

}  // namespace qramsey
