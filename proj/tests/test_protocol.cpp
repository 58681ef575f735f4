// Copyright 2026 The qramsey authors
//
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "qramsey/errors.hpp"
#include "qramsey/models.hpp"
#include "qramsey/oracle.hpp"
#include "qramsey/protocol.hpp"

using namespace qramsey;

namespace {

ModelConfig reference_model() { return parse_model_file(QRAMSEY_MODEL_FILE); }

RamseyOptions fast_options() {
  RamseyOptions opt;
  opt.T = 2.0;
  opt.grid = TauGrid{0.0, 10.0, 64};
  opt.settings.steps_per_unit_time = 300;
  return opt;
}

}  // namespace

TEST_SUITE("protocol") {

TEST_CASE("tau grid formula and validation") {
  const TauGrid g{1.0, 5.0, 2};
  g.validate();
  CHECK(g.tau(0) == doctest::Approx(1.0));
  CHECK(g.tau(1) == doctest::Approx(5.0));
  CHECK_THROWS_AS((TauGrid{0.0, 10.0, 1}.validate()), ConfigError);
  CHECK_THROWS_AS((TauGrid{5.0, 1.0, 10}.validate()), ConfigError);
  CHECK_THROWS_AS((TauGrid{-1.0, 10.0, 10}.validate()), ConfigError);
}

TEST_CASE("engine builds an equal superposition of ground and reference") {
  const ModelConfig cfg = reference_model();
  const RamseyEngine eng(cfg, fast_options());
  CHECK(eng.ground_sector_q() == doctest::Approx(0.0));
  CHECK(eng.reference().energy_problem == doctest::Approx(4.3099752).epsilon(1e-6));
  const Eigen::VectorXcd& ini = eng.initial_state().amplitudes();
  const double w_ground = std::norm(eng.ground_branch().amplitudes().dot(ini));
  const double w_ref = std::norm(eng.reference().state.amplitudes().dot(ini));
  CHECK(w_ground == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(w_ref == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("cached sweep matches faithful re-simulation") {
  const ModelConfig cfg = reference_model();
  const RamseyEngine eng(cfg, fast_options());
  for (double tau : {0.0, 1.7, 6.3, 10.0}) {
    const double fast = eng.run_once(tau, false);
    const double slow = eng.run_once(tau, true);
    CHECK(fast == doctest::Approx(slow).epsilon(1e-9));
    CHECK(fast >= -1e-12);
    CHECK(fast <= 1.0 + 1e-12);
  }
}

TEST_CASE("probabilities stay in range across a sweep") {
  const ModelConfig cfg = reference_model();
  RamseyOptions opt = fast_options();
  opt.threads = 2;
  const RamseySeries s = RamseyEngine(cfg, opt).sweep();
  REQUIRE(s.tau.size() == 64);
  CHECK(!s.sampled);
  for (double p : s.p) {
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
  }
  // Threading must not change the values.
  RamseyOptions serial = fast_options();
  const RamseySeries s1 = RamseyEngine(cfg, serial).sweep();
  for (size_t k = 0; k < s.p.size(); ++k) {
    CHECK(s.p[k] == doctest::Approx(s1.p[k]).epsilon(1e-14));
  }
}

TEST_CASE("the reference sector is not a valid ground branch") {
  const ModelConfig cfg = reference_model();
  RamseyOptions opt = fast_options();
  opt.sector_q = -4.0;  // the reference state's own sector
  CHECK_THROWS_AS(RamseyEngine(cfg, opt), ConfigError);
}

TEST_CASE("sampling is reproducible and unbiased") {
  const ModelConfig cfg = reference_model();
  RamseyOptions opt = fast_options();
  opt.shots = ShotOptions{20000, 7};
  const RamseySeries a = RamseyEngine(cfg, opt).sweep();
  const RamseySeries b = RamseyEngine(cfg, opt).sweep();
  CHECK(a.sampled);
  REQUIRE(a.p.size() == b.p.size());
  for (size_t k = 0; k < a.p.size(); ++k) CHECK(a.p[k] == b.p[k]);

  opt.shots = ShotOptions{20000, 8};
  const RamseySeries c = RamseyEngine(cfg, opt).sweep();
  bool differs = false;
  for (size_t k = 0; k < a.p.size(); ++k) {
    if (a.p[k] != c.p[k]) differs = true;
  }
  CHECK(differs);

  RamseyOptions exact = fast_options();
  const RamseySeries e = RamseyEngine(cfg, exact).sweep();
  for (size_t k = 0; k < a.p.size(); ++k) {
    CHECK(std::abs(a.p[k] - e.p[k]) < 5.0 / std::sqrt(20000.0));
  }
}

TEST_CASE("baseline estimator limits") {
  const ModelConfig cfg = reference_model();
  PropagationSettings st;
  st.steps_per_unit_time = 400;
  // Sudden quench: the state has no time to move, so the estimate is the
  // driver-ground expectation of the problem Hamiltonian.
  const FullSpectrum driver = exact_diagonalize(cfg.driver);
  const double frozen = cfg.problem.expectation(driver.states.col(0));
  CHECK(conventional_estimate(cfg, 1e-4, st) == doctest::Approx(frozen).epsilon(1e-3));
  // Slow ramp: approaches the true ground energy.
  const double slow = conventional_estimate(cfg, 200.0, st);
  CHECK(std::abs(slow - (-6.524593)) < 5e-3);
}

TEST_CASE("adiabatic criterion on an avoided crossing") {
  // H_D = -a Z + g X, H_P = a Z + g X: dH/ds = 2 a Z, minimum gap 2g at
  // s = 1/2, where the criterion evaluates to a / (2 g^2).
  const double a = 2.0, g = 0.7;
  ModelConfig toy;
  toy.n_qubits = 1;
  toy.driver = HamiltonianSpec(1, {Term{-a, PauliString::from_label("Z")},
                                   Term{g, PauliString::from_label("X")}});
  toy.problem = HamiltonianSpec(1, {Term{a, PauliString::from_label("Z")},
                                    Term{g, PauliString::from_label("X")}});
  toy.conserved = HamiltonianSpec(1, {Term{1.0, PauliString(1)}});
  const double got = adiabatic_criterion(toy, 401);
  CHECK(got == doctest::Approx(a / (2.0 * g * g)).epsilon(1e-6));
  // Refining the grid barely moves the estimate.
  const double fine = adiabatic_criterion(toy, 801);
  CHECK(std::abs(fine - got) / fine < 1e-2);
}

TEST_CASE("adiabatic criterion vanishes for identical hamiltonians") {
  ModelConfig toy;
  toy.n_qubits = 1;
  toy.driver = HamiltonianSpec(1, {Term{1.0, PauliString::from_label("Z")},
                                   Term{0.5, PauliString::from_label("X")}});
  toy.problem = toy.driver;
  toy.conserved = HamiltonianSpec(1, {Term{1.0, PauliString(1)}});
  CHECK(adiabatic_criterion(toy) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("pipeline rejects grids too short to transform") {
  const ModelConfig cfg = reference_model();
  RamseyOptions opt = fast_options();
  opt.grid.L = 4;
  CHECK_THROWS_AS(run_sweep_pipeline(cfg, opt, SpectralOptions{}), ConfigError);
}

TEST_CASE("short pipeline run finds the dominant beat frequency") {
  const ModelConfig cfg = reference_model();
  RamseyOptions opt;
  opt.T = 3.0;
  opt.grid = TauGrid{0.0, 40.0, 400};
  opt.settings.steps_per_unit_time = 400;
  SpectralOptions spectral;
  spectral.peak_threshold = 0.05;
  const SweepResult res = run_sweep_pipeline(cfg, opt, spectral);
  CHECK(res.reference_energy == doctest::Approx(4.3099752).epsilon(1e-6));
  REQUIRE(!res.report.estimates.empty());
  // The ground-state line must be present and accurate to the grid scale.
  const EnergyEstimate& ground = res.report.estimates.front();
  CHECK(ground.matched_level == 0);
  CHECK(std::abs(ground.energy - (-6.524593)) < 5e-3);
}

TEST_CASE("sector scan covers every sector and finds the global minimum") {
  const ModelConfig cfg = reference_model();
  RamseyOptions base;
  base.T = 3.0;
  base.grid = TauGrid{0.0, 40.0, 300};
  base.settings.steps_per_unit_time = 250;
  SpectralOptions spectral;
  spectral.peak_threshold = 0.05;
  const ScanReport rep = scan_subspaces(cfg, base, spectral);
  REQUIRE(rep.sectors.size() == 5);
  for (const SectorScanEntry& s : rep.sectors) CHECK(s.error.empty());
  CHECK(rep.sectors.front().classical);  // dim-1 sector
  CHECK(rep.sectors.back().classical);
  CHECK(rep.global_min_q == doctest::Approx(0.0));
  CHECK(std::abs(rep.global_min_energy - (-6.524593)) < 1e-2);
}

TEST_CASE("staged state preparation lands on the target superposition") {
  const ModelConfig cfg = reference_model();
  GhzOptions opt;
  opt.settings.steps_per_unit_time = 150;
  const GhzResult res = prepare_ghz_pipeline(cfg, "GG--", opt);
  const GhzDiagnostics& d = res.diagnostics;
  CHECK(d.parity_initial == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(d.parity_after_stage1 - 1.0) < 1e-6);
  CHECK(std::abs(d.parity_after_stage2 - 1.0) < 1e-6);
  CHECK(d.ghz_branch_pop0 == doctest::Approx(0.5).epsilon(0.02));
  CHECK(d.ghz_branch_pop1 == doctest::Approx(0.5).epsilon(0.02));
  CHECK(d.stage3_commutator < 1e-12);
  CHECK(d.pop_ground > 0.45);
  CHECK(d.pop_reference > 0.45);
  CHECK(d.leakage < 0.05);
}

TEST_CASE("preparation pattern validation") {
  const ModelConfig cfg = reference_model();
  CHECK_THROWS_AS(prepare_ghz_pipeline(cfg, "GQ--"), ConfigError);
  CHECK_THROWS_AS(prepare_ghz_pipeline(cfg, "G+--"), ConfigError);  // odd core
  CHECK_THROWS_AS(prepare_ghz_pipeline(cfg, "++--"), ConfigError);  // no core
  CHECK_THROWS_AS(prepare_ghz_pipeline(cfg, "GG-"), ConfigError);   // wrong length
}

}  // TEST_SUITE
