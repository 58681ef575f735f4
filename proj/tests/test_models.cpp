// Copyright 2026 The qramsey authors
//
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#include <bit>
#include <cmath>
#include <set>

#include "doctest.h"
#include "qramsey/errors.hpp"
#include "qramsey/models.hpp"
#include "qramsey/oracle.hpp"
#include "qramsey/state.hpp"

using namespace qramsey;

namespace {

ModelConfig reference_model() { return parse_model_file(QRAMSEY_MODEL_FILE); }

}  // namespace

TEST_SUITE("models") {

TEST_CASE("heisenberg term counts") {
  HeisenbergParams p;
  p.n_qubits = 4;
  p.j = 1.0;
  p.b_prime = {-0.24, -0.34, -0.62, -0.09};
  p.boundary = Boundary::Periodic;
  CHECK(build_heisenberg(p).terms().size() == 16);
  p.boundary = Boundary::Open;
  CHECK(build_heisenberg(p).terms().size() == 13);
}

TEST_CASE("two-qubit pure-field heisenberg eigenvalues") {
  HeisenbergParams p;
  p.n_qubits = 2;
  p.j = 0.0;
  p.b_prime = {0.7, -0.3};
  const FullSpectrum s = exact_diagonalize(build_heisenberg(p));
  // Eigenvalues are +/- b1 +/- b2.
  const std::vector<double> expected = {-1.0, -0.4, 0.4, 1.0};
  for (int k = 0; k < 4; ++k) {
    CHECK(s.energies[k] == doctest::Approx(expected[static_cast<size_t>(k)]));
  }
}

TEST_CASE("driver ground state is |1100> with energy -4") {
  const ModelConfig cfg = reference_model();
  const FullSpectrum s = exact_diagonalize(cfg.driver);
  CHECK(s.energies[0] == doctest::Approx(-4.0).epsilon(1e-12));
  // |1100>: qubits 0 and 1 set, basis index 3.
  CHECK(std::abs(s.states(3, 0)) == doctest::Approx(1.0).epsilon(1e-10));
  // Eigenvector check for the basis state directly.
  const Eigen::VectorXcd e3 = StateVector::basis(4, 3).amplitudes();
  CHECK((cfg.driver.apply(e3) + 4.0 * e3).norm() < 1e-12);
}

TEST_CASE("driver pair-block spectrum matches closed form") {
  DriverParams p;
  p.n_qubits = 2;
  p.j_pair = {0.4};
  p.b = {-0.9, 0.6};
  const FullSpectrum s = exact_diagonalize(build_driver(p));
  // Aligned basis states give +/-(b0 + b1); the one-flip block gives
  // +/- sqrt((b0 - b1)^2 + 4 j^2).
  const double aligned = p.b[0] + p.b[1];
  const double mixed = std::sqrt((p.b[0] - p.b[1]) * (p.b[0] - p.b[1]) +
                                 4.0 * p.j_pair[0] * p.j_pair[0]);
  std::multiset<double> expected = {-std::abs(aligned), std::abs(aligned),
                                    -mixed, mixed};
  std::multiset<double> got;
  for (int k = 0; k < 4; ++k) got.insert(std::round(s.energies[k] * 1e9) / 1e9);
  auto it = expected.begin();
  for (double e : got) {
    CHECK(e == doctest::Approx(*it).epsilon(1e-9));
    ++it;
  }
}

TEST_CASE("penalty annihilates the target eigenstate") {
  const HamiltonianSpec q = build_total_magnetization(3);
  const HamiltonianSpec pen = build_penalty(q, 3.0, 2.5);
  CHECK(pen.diagonal_element(0b111) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(pen.diagonal_element(0b000) == doctest::Approx(-2.5 * 36.0).epsilon(1e-12));
}

TEST_CASE("penalty expansion for two qubits") {
  const HamiltonianSpec pen = build_penalty(build_total_magnetization(2), 0.0, 1.0);
  // -(Z1 + Z2)^2 = -2 I - 2 Z1 Z2
  const Eigen::MatrixXcd m = pen.materialize();
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
  expected.diagonal() << -4.0, 0.0, 0.0, -4.0;
  CHECK((m - expected).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(commutator_norm(pen, build_total_magnetization(2)) < 1e-12);
}

TEST_CASE("penalty shifts each sector uniformly") {
  const ModelConfig cfg = reference_model();
  const HamiltonianSpec q = cfg.conserved;
  const HamiltonianSpec pen = build_penalty(q, -4.0, 1.5);
  const FullSpectrum plain = exact_diagonalize(cfg.problem);
  const FullSpectrum shifted = exact_diagonalize(cfg.problem.plus(pen));
  // Every eigenvector of the plain problem lives in one magnetization
  // sector; its energy moves by exactly -lambda (q' - q)^2.
  for (int k = 0; k < plain.energies.size(); ++k) {
    const Eigen::VectorXcd v = plain.states.col(k);
    const std::complex<double> qval = v.dot(q.apply(v));
    const double shift = -1.5 * (qval.real() + 4.0) * (qval.real() + 4.0);
    const std::complex<double> e = v.dot(cfg.problem.plus(pen).apply(v));
    CHECK(e.real() == doctest::Approx(plain.energies[k] + shift).epsilon(1e-9));
  }
  CHECK(plain.energies.size() == shifted.energies.size());
}

TEST_CASE("staged preparation hamiltonians") {
  const GhzHamiltonians h = build_ghz_hamiltonians(4, 1.0, 1.0, 1.0,
                                                   {0.3, -0.2, 0.5, 0.4});
  CHECK(commutator_norm(h.h3, h.h4) < 1e-12);
  // H2 ground space for B2 > 0 is the fully polarized pair.
  const FullSpectrum s2 = exact_diagonalize(h.h2);
  CHECK(s2.energies[0] == doctest::Approx(-16.0));
  CHECK(s2.energies[1] == doctest::Approx(-16.0));
  CHECK(s2.energies[2] > -16.0 + 1e-9);
  const double pop = std::norm(s2.states(0, 0)) + std::norm(s2.states(15, 0)) +
                     std::norm(s2.states(0, 1)) + std::norm(s2.states(15, 1));
  CHECK(pop == doctest::Approx(2.0).epsilon(1e-9));
  // H1 ground for B1 > 0 is the all-minus product: amplitudes (-1)^popcount / 4.
  const FullSpectrum s1 = exact_diagonalize(h.h1);
  CHECK(s1.energies[0] == doctest::Approx(-4.0));
  for (int b = 0; b < 16; ++b) {
    const double expected_sign = std::popcount(static_cast<unsigned>(b)) % 2 ? -1.0 : 1.0;
    const std::complex<double> ratio = s1.states(b, 0) / s1.states(0, 0);
    CHECK(ratio.real() == doctest::Approx(expected_sign).epsilon(1e-9));
  }
}

TEST_CASE("model file parses to the documented configuration") {
  const ModelConfig cfg = reference_model();
  CHECK(cfg.n_qubits == 4);
  CHECK(cfg.driver_params.has_value());
  HeisenbergParams p;
  p.n_qubits = 4;
  p.j = 1.0;
  p.b_prime = {-0.2422582, -0.3415001, -0.6274529, -0.098764};
  p.boundary = Boundary::Open;
  CHECK((cfg.problem.materialize() - build_heisenberg(p).materialize())
            .cwiseAbs()
            .maxCoeff() < 1e-14);
  CHECK(commutator_norm(cfg.conserved, cfg.problem) < 1e-12);
  CHECK(commutator_norm(cfg.conserved, cfg.driver) < 1e-12);
}

TEST_CASE("model parsing rejects bad input") {
  CHECK_THROWS_AS(parse_model_file("/nonexistent/path.model"), IoError);
  CHECK_THROWS_WITH_AS(parse_model_json("{\"n_qubits\": 2,"),
                       doctest::Contains("line"), ConfigError);
  // Empty terms list.
  CHECK_THROWS_AS(
      parse_model_json(R"({"n_qubits":2,"problem":{"terms":[]},)"
                       R"("driver":{"terms":[[1.0,"XX"]]},)"
                       R"("conserved":{"builtin":"total_magnetization"}})"),
      ConfigError);
  // Unknown key.
  CHECK_THROWS_AS(
      parse_model_json(R"({"n_qubits":2,"problem":{"terms":[[1.0,"ZZ"]]},)"
                       R"("driver":{"terms":[[1.0,"XX"]]},)"
                       R"("conserved":{"builtin":"total_magnetization"},)"
                       R"("surprise":1})"),
      ConfigError);
  // Declared conserved quantity that does not commute with the problem.
  CHECK_THROWS_AS(
      parse_model_json(R"({"n_qubits":2,"problem":{"terms":[[1.0,"ZI"]]},)"
                       R"("driver":{"terms":[[1.0,"ZZ"]]},)"
                       R"("conserved":{"terms":[[1.0,"XI"],[1.0,"IX"]]}})"),
      ConfigError);
}

}  // TEST_SUITE
