// Copyright 2026 The qramsey authors
//
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#include <complex>

#include "doctest.h"
#include "qramsey/errors.hpp"
#include "qramsey/models.hpp"
#include "qramsey/pauli.hpp"
#include "qramsey/state.hpp"
#include "test_util.hpp"

using namespace qramsey;
using qramsey::testing::random_spec;
using qramsey::testing::random_state;

TEST_SUITE("operators") {

TEST_CASE("pauli string label round trip") {
  const PauliString s = PauliString::from_label("XYZI");
  CHECK(s.n_qubits() == 4);
  CHECK(s.factor(0) == Pauli::X);
  CHECK(s.factor(1) == Pauli::Y);
  CHECK(s.factor(2) == Pauli::Z);
  CHECK(s.factor(3) == Pauli::I);
  CHECK(s.label() == "XYZI");
  CHECK_THROWS_AS(PauliString::from_label("XQ"), ConfigError);
}

TEST_CASE("identity spec leaves states unchanged") {
  const HamiltonianSpec h(3, {Term{1.0, PauliString(3)}});
  const Eigen::VectorXcd v = random_state(3, 11);
  CHECK((h.apply(v) - v).norm() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("Z eigenvalue convention: bit 1 means +1") {
  const HamiltonianSpec z0(2, {Term{1.0, PauliString::single(2, 0, Pauli::Z)}});
  const StateVector set = StateVector::basis(2, 1);    // qubit 0 bit set
  const StateVector clear = StateVector::basis(2, 2);  // qubit 0 bit clear
  CHECK(z0.expectation(set.amplitudes()) == doctest::Approx(1.0));
  CHECK(z0.expectation(clear.amplitudes()) == doctest::Approx(-1.0));
}

TEST_CASE("XX+YY annihilates the aligned pair state") {
  const HamiltonianSpec h(2, {Term{1.0, PauliString::from_label("XX")},
                              Term{1.0, PauliString::from_label("YY")}});
  const StateVector both = StateVector::basis(2, 3);
  CHECK(h.apply(both.amplitudes()).norm() == doctest::Approx(0.0).epsilon(1e-14));
  const StateVector none = StateVector::basis(2, 0);
  CHECK(h.apply(none.amplitudes()).norm() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("string multiplication phases") {
  const auto [p1, s1] = multiply(PauliString::from_label("X"), PauliString::from_label("Y"));
  CHECK(s1.label() == "Z");
  CHECK(p1 == std::complex<double>(0.0, 1.0));
  const auto [p2, s2] = multiply(PauliString::from_label("Y"), PauliString::from_label("X"));
  CHECK(s2.label() == "Z");
  CHECK(p2 == std::complex<double>(0.0, -1.0));
  const auto [p3, s3] = multiply(PauliString::from_label("ZZ"), PauliString::from_label("ZZ"));
  CHECK(s3.is_identity());
  CHECK(p3 == std::complex<double>(1.0, 0.0));
}

TEST_CASE("apply matches dense materialization on random specs") {
  for (int n = 3; n <= 5; ++n) {
    const HamiltonianSpec h = random_spec(n, 12, 100 + static_cast<std::uint64_t>(n));
    const Eigen::MatrixXcd m = h.materialize();
    CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    const Eigen::VectorXcd v = random_state(n, 200 + static_cast<std::uint64_t>(n));
    CHECK((h.apply(v) - m * v).norm() < 1e-10);
    const std::complex<double> dense = v.dot(m * v);
    CHECK(h.expectation(v) == doctest::Approx(dense.real()).epsilon(1e-10));
  }
}

TEST_CASE("materialize column by column equals apply on basis vectors") {
  const HamiltonianSpec h = random_spec(3, 10, 7);
  const Eigen::MatrixXcd m = h.materialize();
  for (std::uint64_t b = 0; b < 8; ++b) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(8);
    e[static_cast<Eigen::Index>(b)] = 1.0;
    CHECK((h.apply(e) - m.col(static_cast<Eigen::Index>(b))).norm() < 1e-12);
  }
}

TEST_CASE("single Z materializes as diag(-1, +1)") {
  const HamiltonianSpec h(1, {Term{1.0, PauliString::single(1, 0, Pauli::Z)}});
  const Eigen::MatrixXcd m = h.materialize();
  CHECK(m(0, 0).real() == doctest::Approx(-1.0));
  CHECK(m(1, 1).real() == doctest::Approx(1.0));
  CHECK(std::abs(m(0, 1)) == doctest::Approx(0.0));
}

TEST_CASE("canonicalization merges duplicates exactly") {
  const HamiltonianSpec h(2, {Term{0.75, PauliString::from_label("XZ")},
                              Term{0.25, PauliString::from_label("XZ")},
                              Term{-1.0, PauliString::from_label("XZ")},
                              Term{0.5, PauliString::from_label("YI")}});
  const HamiltonianSpec c = h.canonical();
  CHECK(c.terms().size() == 1);  // the XZ terms cancel to exactly zero
  CHECK((h.materialize() - c.materialize()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("expectation of identity is one") {
  const HamiltonianSpec h(2, {Term{1.0, PauliString(2)}});
  CHECK(h.expectation(random_state(2, 3)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("commutator norms") {
  const HamiltonianSpec a = random_spec(3, 8, 17);
  CHECK(commutator_norm(a, a) == doctest::Approx(0.0).epsilon(1e-12));
  const HamiltonianSpec x0(1, {Term{1.0, PauliString::single(1, 0, Pauli::X)}});
  const HamiltonianSpec z0(1, {Term{1.0, PauliString::single(1, 0, Pauli::Z)}});
  CHECK(commutator_norm(x0, z0) == doctest::Approx(2.0));
}

TEST_CASE("dimension mismatches are rejected") {
  const HamiltonianSpec h(2, {Term{1.0, PauliString(2)}});
  CHECK_THROWS_AS(h.apply(random_state(3, 1)), ConfigError);
  const HamiltonianSpec g(3, {Term{1.0, PauliString(3)}});
  CHECK_THROWS_AS(commutator_norm(h, g), ConfigError);
}

TEST_CASE("dense cap is enforced") {
  const HamiltonianSpec h(4, {Term{1.0, PauliString(4)}});
  CHECK_THROWS_AS(h.materialize(3), ConfigError);
}

TEST_CASE("state vector constructors normalize or reject") {
  Eigen::VectorXcd v = Eigen::VectorXcd::Constant(4, 3.0);
  const StateVector s = StateVector::from_amplitudes(2, v);
  CHECK(s.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(StateVector::from_amplitudes(2, Eigen::VectorXcd::Zero(4)),
                  ConfigError);
  CHECK_THROWS_AS(StateVector::from_amplitudes(3, v), ConfigError);
}

}  // TEST_SUITE
