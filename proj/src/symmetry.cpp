// Copyright 2026 The qramsey authors
//
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#include "qramsey/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "qramsey/errors.hpp"

namespace qramsey {

const Sector& SectorDecomposition::sector_with_q(double q, double tol) const {
  for (const Sector& s : sectors) {
    if (std::abs(s.q_value - q) <= tol) return s;
  }
  throw ConfigError("no sector with eigenvalue q = " + std::to_string(q));
}

const Sector& SectorDecomposition::sector_of_basis(std::uint64_t basis_index) const {
  for (const Sector& s : sectors) {
    if (std::binary_search(s.basis_indices.begin(), s.basis_indices.end(), basis_index)) {
      return s;
    }
  }
  throw ConfigError("basis index not covered by any sector");
}

SectorDecomposition decompose(const HamiltonianSpec& q_op, int n_qubits) {
  if (q_op.n_qubits() != n_qubits) {
    throw ConfigError("decompose: q_op qubit count mismatch");
  }
  if (!q_op.is_diagonal()) {
    throw ConfigError("decompose: conserved quantity must be diagonal (I/Z factors only)");
  }
  const std::uint64_t dim = std::uint64_t{1} << n_qubits;
  // Group by eigenvalue with 1e-10 absolute tolerance.
  std::vector<std::pair<double, std::vector<std::uint64_t>>> groups;
  for (std::uint64_t b = 0; b < dim; ++b) {
    const double q = q_op.diagonal_element(b);
    auto it = std::find_if(groups.begin(), groups.end(), [q](const auto& g) {
      return std::abs(g.first - q) <= 1e-10;
    });
    if (it == groups.end()) {
      groups.push_back({q, {b}});
    } else {
      it->second.push_back(b);
    }
  }
  std::sort(groups.begin(), groups.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SectorDecomposition dec{q_op, n_qubits, {}};
  for (auto& [q, indices] : groups) {
    dec.sectors.push_back(Sector{q, std::move(indices)});
  }
  return dec;
}

SectorEigensystem diagonalize_sector(const HamiltonianSpec& h, const Sector& sector,
                                     HamiltonianLabel label,
                                     const HamiltonianSpec& q_op, int dense_cap) {
  if (commutator_norm(h, q_op, dense_cap) > 1e-10) {
    throw PhysicsError("diagonalize_sector: Hamiltonian does not commute with q_op");
  }
  const Eigen::MatrixXcd full = h.materialize(dense_cap);
  const int d = sector.dim();
  Eigen::MatrixXcd block(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      block(r, c) = full(static_cast<Eigen::Index>(sector.basis_indices[static_cast<size_t>(r)]),
                         static_cast<Eigen::Index>(sector.basis_indices[static_cast<size_t>(c)]));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(block);
  if (solver.info() != Eigen::Success) {
    throw PhysicsError("diagonalize_sector: eigensolver failed");
  }

  // Deterministic level labels: ascending energy, near-degenerate pairs
  // ordered by the basis index of their dominant amplitude.
  std::vector<int> order(static_cast<size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  auto dominant_index = [&](int k) {
    int best = 0;
    double mag = -1.0;
    for (int r = 0; r < d; ++r) {
      const double a = std::abs(solver.eigenvectors()(r, k));
      if (a > mag + 1e-12) { mag = a; best = r; }
    }
    return sector.basis_indices[static_cast<size_t>(best)];
  };
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const double ea = solver.eigenvalues()[a], eb = solver.eigenvalues()[b];
    if (std::abs(ea - eb) > 1e-12) return ea < eb;
    return dominant_index(a) < dominant_index(b);
  });

  SectorEigensystem out{sector, label, {}, {}};
  const std::uint64_t full_dim = std::uint64_t{1} << h.n_qubits();
  for (int k : order) {
    Eigen::VectorXcd embedded = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(full_dim));
    for (int r = 0; r < d; ++r) {
      embedded[static_cast<Eigen::Index>(sector.basis_indices[static_cast<size_t>(r)])] =
          solver.eigenvectors()(r, k);
    }
    const double energy = solver.eigenvalues()[k];
    const double residual = (h.apply(embedded) - energy * embedded).norm();
    if (residual > 1e-9) {
      throw PhysicsError("diagonalize_sector: eigenvector residual above 1e-9");
    }
    out.energies.push_back(energy);
    out.states.push_back(StateVector::from_amplitudes(h.n_qubits(), std::move(embedded)));
  }
  return out;
}

ReferenceState select_reference(const SectorDecomposition& dec,
                                const HamiltonianSpec& h_d,
                                const HamiltonianSpec& h_p, int dense_cap) {
  bool found = false;
  ReferenceState best{0.0, 0, StateVector::basis(dec.n_qubits, 0), 0.0, 0.0, {}};
  for (const Sector& sector : dec.sectors) {
    const SectorEigensystem sys_p =
        diagonalize_sector(h_p, sector, HamiltonianLabel::Problem, dec.q_op, dense_cap);
    for (size_t k = 0; k < sys_p.states.size(); ++k) {
      const StateVector& v = sys_p.states[k];
      // Simultaneous eigenstate test: H_D v must be parallel to v.
      const Eigen::VectorXcd hdv = h_d.apply(v.amplitudes());
      const std::complex<double> ed = v.amplitudes().dot(hdv);
      if ((hdv - ed * v.amplitudes()).norm() > 1e-9) continue;
      if (!found || sys_p.energies[k] > best.energy_problem) {
        best = ReferenceState{sector.q_value, static_cast<int>(k), v, ed.real(),
                              sys_p.energies[k], {}};
        found = true;
      }
    }
  }
  if (!found) {
    throw PhysicsError(
        "select_reference: no simultaneous eigenstate of the driver and problem "
        "Hamiltonians found; the conserved quantity does not satisfy the "
        "protocol assumptions");
  }
  // Warn when the reference is not the global maximum of the problem
  // Hamiltonian; reconstruction then misses states above it.
  const Eigen::MatrixXcd mp = h_p.materialize(dense_cap);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(mp, Eigen::EigenvaluesOnly);
  const double global_max = solver.eigenvalues().maxCoeff();
  if (best.energy_problem < global_max - 1e-9) {
    best.warnings.push_back(
        "reference energy " + std::to_string(best.energy_problem) +
        " is below the problem Hamiltonian's maximum " + std::to_string(global_max) +
        "; consider adding a penalty term -lambda*(Q-q)^2");
  }
  return best;
}

}  // namespace qramsey
