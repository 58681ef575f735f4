// Copyright 2026 The qramsey authors
//
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#pragma once
#include <Eigen/Dense>
#include <complex>
#include <random>
#include <vector>

#include "qramsey/pauli.hpp"

namespace qramsey::testing {

/// Random Hermitian spec with n_terms random Pauli strings and coefficients
/// in [-1, 1].
inline HamiltonianSpec random_spec(int n_qubits, int n_terms, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> factor(0, 3);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::vector<Term> terms;
  for (int t = 0; t < n_terms; ++t) {
    std::vector<Pauli> factors;
    for (int q = 0; q < n_qubits; ++q) {
      factors.push_back(static_cast<Pauli>(factor(rng)));
    }
    terms.push_back(Term{coeff(rng), PauliString(n_qubits, std::move(factors))});
  }
  return HamiltonianSpec(n_qubits, std::move(terms));
}

inline Eigen::VectorXcd random_state(int n_qubits, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd v(Eigen::Index{1} << n_qubits);
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    v[k] = std::complex<double>(gauss(rng), gauss(rng));
  }
  return v / v.norm();
}

/// Dense matrix exponential exp(A) by scaling-and-squaring over a Taylor
/// series; independent of the library's eigendecomposition path, so it can
/// serve as an oracle for e^{-iHt}.
inline Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a) {
  const double norm = a.cwiseAbs().maxCoeff() * static_cast<double>(a.rows());
  int squarings = 0;
  double scale = 1.0;
  while (norm * scale > 0.5) {
    scale *= 0.5;
    ++squarings;
  }
  const Eigen::MatrixXcd scaled = a * scale;
  Eigen::MatrixXcd result =
      Eigen::MatrixXcd::Identity(a.rows(), a.cols());
  Eigen::MatrixXcd term = result;
  for (int k = 1; k <= 24; ++k) {
    term = (term * scaled) / static_cast<double>(k);
    result += term;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

}  // namespace qramsey::testing
