// Copyright 2026 The qramsey authors
//
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "qramsey/pauli.hpp"
#include "qramsey/state.hpp"

namespace qramsey {

/// Eigenspace of a diagonal conserved quantity for one eigenvalue.
struct Sector {
  double q_value;
  std::vector<std::uint64_t> basis_indices;  // ascending
  int dim() const { return static_cast<int>(basis_indices.size()); }
};

/// Partition of [0, 2^N) by eigenvalue of a diagonal conserved quantity.
struct SectorDecomposition {
  HamiltonianSpec q_op;
  int n_qubits = 0;
  std::vector<Sector> sectors;  // ascending q_value

  const Sector& sector_with_q(double q, double tol = 1e-10) const;
  const Sector& sector_of_basis(std::uint64_t basis_index) const;
};

/// Groups basis states by the diagonal value of q_op. Rejects operators with
/// X or Y factors.
SectorDecomposition decompose(const HamiltonianSpec& q_op, int n_qubits);

enum class HamiltonianLabel { Driver, Problem };

/// Full spectrum of a Hamiltonian restricted to one sector, eigenvectors
/// embedded in the full Hilbert space. energies ascending; ties broken by
/// lowest participating basis index for deterministic level labels.
struct SectorEigensystem {
  Sector sector;
  HamiltonianLabel label;
  std::vector<double> energies;
  std::vector<StateVector> states;
};

SectorEigensystem diagonalize_sector(const HamiltonianSpec& h, const Sector& sector,
                                     HamiltonianLabel label,
                                     const HamiltonianSpec& q_op,
                                     int dense_cap = kDefaultDenseCap);

/// A simultaneous eigenstate of driver and problem with classically known
/// energies, chosen maximal in the problem Hamiltonian.
struct ReferenceState {
  double q = 0.0;
  int level = 0;  // level within its problem-sector spectrum
  StateVector state;
  double energy_driver = 0.0;
  double energy_problem = 0.0;
  std::vector<std::string> warnings;
};

/// Scans all sectors within the dense cap for simultaneous eigenstates of
/// h_d and h_p and returns the one with maximal problem energy. The problem
/// energy is computed from h_p itself, never from external tables. Warns
/// (without failing) when the selected reference is not the global maximum
/// of h_p.
ReferenceState select_reference(const SectorDecomposition& dec,
                                const HamiltonianSpec& h_d,
                                const HamiltonianSpec& h_p,
                                int dense_cap = kDefaultDenseCap);

}  // namespace qramsey
