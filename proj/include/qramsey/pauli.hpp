// Copyright 2026 The qramsey authors
//
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#pragma once
#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qramsey {

/// Dense materialization is refused above this qubit count unless the caller
/// raises the cap explicitly.
inline constexpr int kDefaultDenseCap = 12;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

/// Tensor product of single-qubit Pauli factors. Position i of the factor
/// sequence acts on qubit i, which is bit i of a basis index. Bit value 1
/// means sigma^z eigenvalue +1.
class PauliString {
 public:
  explicit PauliString(int n_qubits);
  PauliString(int n_qubits, std::vector<Pauli> factors);
  static PauliString from_label(std::string_view label);
  /// Single nontrivial factor `p` on `qubit`, identity elsewhere.
  static PauliString single(int n_qubits, int qubit, Pauli p);

  int n_qubits() const { return n_; }
  Pauli factor(int qubit) const { return factors_[static_cast<size_t>(qubit)]; }
  void set_factor(int qubit, Pauli p);
  const std::vector<Pauli>& factors() const { return factors_; }
  std::string label() const;

  bool is_identity() const;
  /// True when every factor is I or Z (operator diagonal in the computational
  /// basis).
  bool is_diagonal() const;

  /// Action on a basis state: P|b> = phase * |b ^ flip_mask>.
  std::uint64_t flip_mask() const { return x_mask_ | y_mask_; }
  std::complex<double> phase_for(std::uint64_t basis_index) const;
  /// Diagonal strings only: the +/-1 eigenvalue on |b>.
  double diagonal_phase(std::uint64_t basis_index) const;

  bool operator==(const PauliString& other) const {
    return n_ == other.n_ && factors_ == other.factors_;
  }
  bool operator<(const PauliString& other) const {
    return factors_ < other.factors_;
  }

 private:
  int n_;
  std::vector<Pauli> factors_;
  std::uint64_t x_mask_ = 0, y_mask_ = 0, z_mask_ = 0;
  void rebuild_masks();
};

/// Product of two Pauli strings: returns (phase, string) with
/// a * b = phase * result. Phase is one of {1, -1, i, -i}.
std::pair<std::complex<double>, PauliString> multiply(const PauliString& a,
                                                      const PauliString& b);

struct Term {
  double coefficient;
  PauliString string;
};

/// Real-weighted sum of Pauli strings; the working representation of every
/// Hamiltonian in the toolkit. Real coefficients make the materialized
/// operator Hermitian by construction.
class HamiltonianSpec {
 public:
  /// Empty single-qubit spec (zero operator); placeholder for containers.
  HamiltonianSpec() : n_(1) {}
  HamiltonianSpec(int n_qubits, std::vector<Term> terms);

  int n_qubits() const { return n_; }
  std::uint64_t dim() const { return std::uint64_t{1} << n_; }
  const std::vector<Term>& terms() const { return terms_; }

  /// Sorted term list with duplicate strings merged by exact coefficient
  /// addition. Exact-zero coefficients are dropped.
  HamiltonianSpec canonical() const;

  /// H|psi> without materializing a matrix; O(terms * 2^N).
  Eigen::VectorXcd apply(const Eigen::VectorXcd& amplitudes) const;

  /// <psi|H|psi> for a normalized state. Throws PhysicsError if the imaginary
  /// part exceeds 1e-10 (signals a non-Hermitian spec).
  double expectation(const Eigen::VectorXcd& amplitudes) const;

  Eigen::MatrixXcd materialize(int dense_cap = kDefaultDenseCap) const;

  bool is_diagonal() const;
  /// Diagonal specs only: <b|H|b>.
  double diagonal_element(std::uint64_t basis_index) const;

  HamiltonianSpec scaled(double factor) const;
  HamiltonianSpec plus(const HamiltonianSpec& other) const;

 private:
  int n_;
  std::vector<Term> terms_;
};

/// Max-magnitude element of [A, B] = AB - BA, via dense materialization.
double commutator_norm(const HamiltonianSpec& a, const HamiltonianSpec& b,
                       int dense_cap = kDefaultDenseCap);

}  // namespace qramsey
