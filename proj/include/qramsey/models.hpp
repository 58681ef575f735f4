// Copyright 2026 The qramsey authors
//
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#pragma once
#include <optional>
#include <string>
#include <vector>

#include "qramsey/pauli.hpp"

namespace qramsey {

enum class Boundary { Periodic, Open };

/// Spin-1/2 Heisenberg chain with an inhomogeneous longitudinal field:
/// J * sum_i (XX + YY + ZZ) + sum_i b_prime[i] * Z_i.
struct HeisenbergParams {
  int n_qubits = 4;
  double j = 1.0;
  std::vector<double> b_prime;
  Boundary boundary = Boundary::Periodic;
};

/// Pairwise XY driver: sum_k j_pair[k] (XX + YY) on qubits (2k, 2k+1),
/// plus sum_i b[i] * Z_i. Only adjacent disjoint pairs are coupled.
struct DriverParams {
  int n_qubits = 4;
  std::vector<double> j_pair;
  std::vector<double> b;
};

struct PenaltyParams {
  double lambda = 1.0;
  double q_target = 0.0;
};

struct ModelConfig {
  int n_qubits = 0;
  HamiltonianSpec problem;
  HamiltonianSpec driver;
  HamiltonianSpec conserved;
  std::optional<PenaltyParams> penalty;
  std::string label;
  /// Present when the driver was built from the pairwise-XY builder; the GHZ
  /// preparation pipeline needs the field vector.
  std::optional<DriverParams> driver_params;

  /// problem plus the penalty expansion, when a penalty is configured.
  HamiltonianSpec effective_problem() const;
};

HamiltonianSpec build_heisenberg(const HeisenbergParams& p);
HamiltonianSpec build_driver(const DriverParams& p);

/// Total magnetization M = sum_i Z_i.
HamiltonianSpec build_total_magnetization(int n_qubits);

/// Pauli-string expansion of -lambda * (Q - q_target * I)^2.
HamiltonianSpec build_penalty(const HamiltonianSpec& q_op, double q_target,
                              double lambda, int term_budget = 4096);

/// The staged preparation Hamiltonians: H1 = b1 * sum X_i,
/// H2 = -b2 * (sum Z_i)^2, H3 = -b3 * (sum X_i)^2, H4 = transverse =
/// sum b_vec[i] * X_i.
struct GhzHamiltonians {
  HamiltonianSpec h1;
  HamiltonianSpec h2;
  HamiltonianSpec h3;
  HamiltonianSpec h4;
  HamiltonianSpec transverse;
};
GhzHamiltonians build_ghz_hamiltonians(int n_qubits, double b1, double b2,
                                       double b3, const std::vector<double>& b_vec);

/// Parse the JSON model document (see README for the schema). Unknown keys
/// are rejected; the declared conserved quantity must commute with both
/// Hamiltonians. Syntax errors report line and column.
ModelConfig parse_model_json(const std::string& text);
ModelConfig parse_model_file(const std::string& path);

}  // namespace qramsey
