// Copyright 2026 The qramsey authors
//
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#include "qramsey/oracle.hpp"

#include <algorithm>

#include "qramsey/errors.hpp"

namespace qramsey {

FullSpectrum exact_diagonalize(const HamiltonianSpec& h, int dense_cap) {
  const Eigen::MatrixXcd m = h.materialize(dense_cap);
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw PhysicsError("exact_diagonalize: materialized matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success) {
    throw PhysicsError("exact_diagonalize: eigensolver failed");
  }
  FullSpectrum out{solver.eigenvalues(), solver.eigenvectors()};
  const double residual =
      (m * out.states - out.states * out.energies.asDiagonal()).cwiseAbs().maxCoeff();
  if (residual > 1e-9) {
    throw PhysicsError("exact_diagonalize: residual " + std::to_string(residual) +
                       " above 1e-9");
  }
  return out;
}

std::vector<GapEntry> gap_table(const FullSpectrum& spectrum, double ref_energy) {
  std::vector<GapEntry> out;
  out.reserve(static_cast<size_t>(spectrum.energies.size()));
  for (int k = 0; k < spectrum.energies.size(); ++k) {
    out.push_back(GapEntry{k, ref_energy - spectrum.energies[k]});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const GapEntry& a, const GapEntry& b) { return a.gap > b.gap; });
  return out;
}

}  // namespace qramsey
