// Copyright 2026 The qramsey authors
//
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#include "qramsey/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include "qramsey/errors.hpp"

namespace qramsey {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};

void check_qubits(int n) {
  if (n < 1 || n > 62) {
    throw ConfigError("n_qubits must be in [1, 62], got " + std::to_string(n));
  }
}
}  // namespace

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default:
      throw ConfigError(std::string("invalid Pauli factor '") + c +
                        "', expected one of I, X, Y, Z");
  }
}

PauliString::PauliString(int n_qubits) : n_(n_qubits) {
  check_qubits(n_qubits);
  factors_.assign(static_cast<size_t>(n_qubits), Pauli::I);
}

PauliString::PauliString(int n_qubits, std::vector<Pauli> factors)
    : n_(n_qubits), factors_(std::move(factors)) {
  check_qubits(n_qubits);
  if (factors_.size() != static_cast<size_t>(n_qubits)) {
    throw ConfigError("factor count " + std::to_string(factors_.size()) +
                      " does not match n_qubits " + std::to_string(n_qubits));
  }
  rebuild_masks();
}

PauliString PauliString::from_label(std::string_view label) {
  std::vector<Pauli> fs;
  fs.reserve(label.size());
  for (char c : label) fs.push_back(pauli_from_char(c));
  return PauliString(static_cast<int>(label.size()), std::move(fs));
}

PauliString PauliString::single(int n_qubits, int qubit, Pauli p) {
  PauliString s(n_qubits);
  s.set_factor(qubit, p);
  return s;
}

void PauliString::set_factor(int qubit, Pauli p) {
  if (qubit < 0 || qubit >= n_) {
    throw ConfigError("qubit index " + std::to_string(qubit) + " out of range");
  }
  factors_[static_cast<size_t>(qubit)] = p;
  rebuild_masks();
}

void PauliString::rebuild_masks() {
  x_mask_ = y_mask_ = z_mask_ = 0;
  for (int i = 0; i < n_; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    switch (factors_[static_cast<size_t>(i)]) {
      case Pauli::X: x_mask_ |= bit; break;
      case Pauli::Y: y_mask_ |= bit; break;
      case Pauli::Z: z_mask_ |= bit; break;
      case Pauli::I: break;
    }
  }
}

std::string PauliString::label() const {
  std::string out;
  out.reserve(static_cast<size_t>(n_));
  for (Pauli p : factors_) out.push_back(pauli_char(p));
  return out;
}

bool PauliString::is_identity() const { return (x_mask_ | y_mask_ | z_mask_) == 0; }

bool PauliString::is_diagonal() const { return (x_mask_ | y_mask_) == 0; }

// Bit value 1 means sigma^z = +1, so Z contributes +1 on set bits and -1 on
// clear bits; Y additionally flips the bit with phase +/-i (Y = iXZ).
std::complex<double> PauliString::phase_for(std::uint64_t b) const {
  const std::uint64_t zy = z_mask_ | y_mask_;
  const int zy_count = std::popcount(zy);
  const int ones = std::popcount(b & zy);
  const int sign = ((zy_count - ones) & 1) ? -1 : 1;
  const int y_count = std::popcount(y_mask_) & 3;
  std::complex<double> phase(sign, 0.0);
  for (int k = 0; k < y_count; ++k) phase *= kI;
  return phase;
}

double PauliString::diagonal_phase(std::uint64_t b) const {
  const int zeros = std::popcount(z_mask_) - std::popcount(b & z_mask_);
  return (zeros & 1) ? -1.0 : 1.0;
}

std::pair<std::complex<double>, PauliString> multiply(const PauliString& a,
                                                      const PauliString& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw ConfigError("Pauli string qubit counts differ");
  }
  // Single-qubit products: rows indexed by (a, b), giving (phase, result).
  // XY = iZ, YZ = iX, ZX = iY, and reversed order picks up -i.
  static const Pauli result_table[4][4] = {
      {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z},
      {Pauli::X, Pauli::I, Pauli::Z, Pauli::Y},
      {Pauli::Y, Pauli::Z, Pauli::I, Pauli::X},
      {Pauli::Z, Pauli::Y, Pauli::X, Pauli::I}};
  // Power of i for each pair.
  static const int phase_table[4][4] = {
      {0, 0, 0, 0}, {0, 0, 1, 3}, {0, 3, 0, 1}, {0, 1, 3, 0}};
  std::vector<Pauli> out(static_cast<size_t>(a.n_qubits()));
  int ipow = 0;
  for (int q = 0; q < a.n_qubits(); ++q) {
    const int fa = static_cast<int>(a.factor(q));
    const int fb = static_cast<int>(b.factor(q));
    out[static_cast<size_t>(q)] = result_table[fa][fb];
    ipow = (ipow + phase_table[fa][fb]) & 3;
  }
  static const std::complex<double> ipows[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return {ipows[ipow], PauliString(a.n_qubits(), std::move(out))};
}

HamiltonianSpec::HamiltonianSpec(int n_qubits, std::vector<Term> terms)
    : n_(n_qubits), terms_(std::move(terms)) {
  check_qubits(n_qubits);
  for (const Term& t : terms_) {
    if (t.string.n_qubits() != n_) {
      throw ConfigError("term '" + t.string.label() +
                        "' does not act on n_qubits = " + std::to_string(n_));
    }
    if (!std::isfinite(t.coefficient)) {
      throw ConfigError("non-finite coefficient on term '" + t.string.label() + "'");
    }
  }
}

HamiltonianSpec HamiltonianSpec::canonical() const {
  std::map<std::vector<Pauli>, double> merged;
  for (const Term& t : terms_) merged[t.string.factors()] += t.coefficient;
  std::vector<Term> out;
  out.reserve(merged.size());
  for (const auto& [factors, coeff] : merged) {
    if (coeff == 0.0) continue;
    out.push_back(Term{coeff, PauliString(n_, factors)});
  }
  return HamiltonianSpec(n_, std::move(out));
}

Eigen::VectorXcd HamiltonianSpec::apply(const Eigen::VectorXcd& amplitudes) const {
  const auto d = static_cast<Eigen::Index>(dim());
  if (amplitudes.size() != d) {
    throw ConfigError("state dimension " + std::to_string(amplitudes.size()) +
                      " does not match 2^" + std::to_string(n_));
  }
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(d);
  for (const Term& t : terms_) {
    if (t.string.is_diagonal()) {
      for (Eigen::Index b = 0; b < d; ++b) {
        out[b] += t.coefficient *
                  t.string.diagonal_phase(static_cast<std::uint64_t>(b)) *
                  amplitudes[b];
      }
    } else {
      const std::uint64_t flip = t.string.flip_mask();
      for (Eigen::Index b = 0; b < d; ++b) {
        const auto src = static_cast<std::uint64_t>(b);
        out[static_cast<Eigen::Index>(src ^ flip)] +=
            t.coefficient * t.string.phase_for(src) * amplitudes[b];
      }
    }
  }
  return out;
}

double HamiltonianSpec::expectation(const Eigen::VectorXcd& amplitudes) const {
  const std::complex<double> val = amplitudes.dot(apply(amplitudes));
  if (std::abs(val.imag()) > 1e-10) {
    throw PhysicsError("expectation value has imaginary part " +
                       std::to_string(val.imag()) +
                       "; spec is not Hermitian");
  }
  return val.real();
}

Eigen::MatrixXcd HamiltonianSpec::materialize(int dense_cap) const {
  if (n_ > dense_cap) {
    throw ConfigError("materialize: " + std::to_string(n_) +
                      " qubits exceeds dense cap " + std::to_string(dense_cap));
  }
  const auto d = static_cast<Eigen::Index>(dim());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (const Term& t : terms_) {
    const std::uint64_t flip = t.string.flip_mask();
    for (Eigen::Index b = 0; b < d; ++b) {
      const auto src = static_cast<std::uint64_t>(b);
      m(static_cast<Eigen::Index>(src ^ flip), b) +=
          t.coefficient * t.string.phase_for(src);
    }
  }
  return m;
}

bool HamiltonianSpec::is_diagonal() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return t.string.is_diagonal(); });
}

double HamiltonianSpec::diagonal_element(std::uint64_t basis_index) const {
  double val = 0.0;
  for (const Term& t : terms_) {
    if (!t.string.is_diagonal()) {
      throw ConfigError("diagonal_element called on non-diagonal spec");
    }
    val += t.coefficient * t.string.diagonal_phase(basis_index);
  }
  return val;
}

HamiltonianSpec HamiltonianSpec::scaled(double factor) const {
  std::vector<Term> out = terms_;
  for (Term& t : out) t.coefficient *= factor;
  return HamiltonianSpec(n_, std::move(out));
}

HamiltonianSpec HamiltonianSpec::plus(const HamiltonianSpec& other) const {
  if (other.n_ != n_) throw ConfigError("cannot add specs on different qubit counts");
  std::vector<Term> out = terms_;
  out.insert(out.end(), other.terms_.begin(), other.terms_.end());
  return HamiltonianSpec(n_, std::move(out)).canonical();
}

double commutator_norm(const HamiltonianSpec& a, const HamiltonianSpec& b,
                       int dense_cap) {
  if (a.n_qubits() != b.n_qubits()) {
    throw ConfigError("commutator_norm: qubit counts differ");
  }
  const Eigen::MatrixXcd ma = a.materialize(dense_cap);
  const Eigen::MatrixXcd mb = b.materialize(dense_cap);
  return (ma * mb - mb * ma).cwiseAbs().maxCoeff();
}

}  // namespace qramsey
