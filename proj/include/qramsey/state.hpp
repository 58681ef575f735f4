// Copyright 2026 The qramsey authors
//
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#pragma once
#include <Eigen/Dense>
#include <cstdint>

namespace qramsey {

/// Normalized vector of 2^N complex amplitudes. Basis index b encodes bit i
/// as the state of qubit i; bit value 1 means sigma^z eigenvalue +1.
class StateVector {
 public:
  static StateVector basis(int n_qubits, std::uint64_t index);
  /// Normalizes the given amplitudes; rejects (near-)zero vectors.
  static StateVector from_amplitudes(int n_qubits, Eigen::VectorXcd amplitudes);

  int n_qubits() const { return n_; }
  std::uint64_t dim() const { return std::uint64_t{1} << n_; }
  const Eigen::VectorXcd& amplitudes() const { return amp_; }

  std::complex<double> overlap(const StateVector& other) const;
  /// |<this|other>|^2
  double fidelity(const StateVector& other) const;

 private:
  StateVector(int n_qubits, Eigen::VectorXcd amp) : n_(n_qubits), amp_(std::move(amp)) {}
  int n_;
  Eigen::VectorXcd amp_;
};

}  // namespace qramsey
