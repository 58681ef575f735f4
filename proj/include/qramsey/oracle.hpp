// Copyright 2026 The qramsey authors
//
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#pragma once
#include <Eigen/Dense>
#include <vector>

#include "qramsey/pauli.hpp"

namespace qramsey {

/// Full dense eigensystem; the ground truth every other module is checked
/// against. energies ascending; states(:, k) is the k-th eigenvector.
struct FullSpectrum {
  Eigen::VectorXd energies;
  Eigen::MatrixXcd states;
};

/// Dense diagonalization of the materialized spec. Residuals and
/// orthonormality are verified before returning.
FullSpectrum exact_diagonalize(const HamiltonianSpec& h,
                               int dense_cap = kDefaultDenseCap);

struct GapEntry {
  int level;
  double gap;  // ref_energy - energy(level)
};

/// Gaps from a reference energy to every level, sorted descending by gap.
std::vector<GapEntry> gap_table(const FullSpectrum& spectrum, double ref_energy);

}  // namespace qramsey
