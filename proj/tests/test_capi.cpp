// Copyright 2026 The qramsey authors
//
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "qramsey_c.h"

namespace {

qramsey_model* load_model() {
  qramsey_model* model = nullptr;
  REQUIRE(qramsey_model_load(QRAMSEY_MODEL_FILE, &model) == QRAMSEY_OK);
  REQUIRE(model != nullptr);
  return model;
}

}  // namespace

TEST_SUITE("capi") {

TEST_CASE("version string is present") {
  const char* v = qramsey_version();
  REQUIRE(v != nullptr);
  CHECK(std::strlen(v) > 0);
}

TEST_CASE("model loading and introspection") {
  qramsey_model* model = load_model();
  int n = 0;
  CHECK(qramsey_model_n_qubits(model, &n) == QRAMSEY_OK);
  CHECK(n == 4);
  double q = 0.0, e_p = 0.0, e_d = 0.0;
  CHECK(qramsey_model_reference(model, &q, &e_p, &e_d) == QRAMSEY_OK);
  CHECK(q == doctest::Approx(-4.0));
  CHECK(e_p == doctest::Approx(4.3099752).epsilon(1e-6));
  qramsey_model_free(model);
}

TEST_CASE("null arguments are configuration errors") {
  CHECK(qramsey_model_load(nullptr, nullptr) == QRAMSEY_ERR_CONFIG);
  int n = 0;
  CHECK(qramsey_model_n_qubits(nullptr, &n) == QRAMSEY_ERR_CONFIG);
}

TEST_CASE("load failures set the error message") {
  qramsey_model* model = nullptr;
  CHECK(qramsey_model_load("/nonexistent/nowhere.model", &model) == QRAMSEY_ERR_IO);
  CHECK(model == nullptr);
  CHECK(std::strlen(qramsey_last_error()) > 0);
  CHECK(qramsey_model_parse("{ not json", &model) == QRAMSEY_ERR_CONFIG);
  CHECK(model == nullptr);
}

TEST_CASE("oracle tables") {
  qramsey_model* model = load_model();
  int n = 0;
  CHECK(qramsey_oracle_energies(model, nullptr, 0, &n) == QRAMSEY_OK);
  REQUIRE(n == 16);
  std::vector<double> energies(16);
  CHECK(qramsey_oracle_energies(model, energies.data(), 16, &n) == QRAMSEY_OK);
  CHECK(energies.front() == doctest::Approx(-6.524593).epsilon(1e-5));
  CHECK(energies.back() == doctest::Approx(4.3099752).epsilon(1e-6));

  std::vector<int> levels(16);
  std::vector<double> gaps(16);
  CHECK(qramsey_oracle_gaps(model, levels.data(), gaps.data(), 16, &n) == QRAMSEY_OK);
  REQUIRE(n == 16);
  CHECK(levels.front() == 0);
  CHECK(gaps.front() == doctest::Approx(10.834568).epsilon(1e-5));
  // Undersized buffer.
  CHECK(qramsey_oracle_energies(model, energies.data(), 4, &n) == QRAMSEY_ERR_CONFIG);
  qramsey_model_free(model);
}

TEST_CASE("sweep round trip through the C surface") {
  qramsey_model* model = load_model();
  qramsey_sweep_options opt;
  qramsey_sweep_options_init(&opt);
  opt.T = 2.5;
  opt.tau_max = 30.0;
  opt.L = 240;
  opt.steps_per_unit_time = 300;
  opt.peak_threshold = 0.05;
  qramsey_sweep* sweep = nullptr;
  REQUIRE(qramsey_sweep_run(model, &opt, &sweep) == QRAMSEY_OK);

  int len = 0;
  CHECK(qramsey_sweep_series_length(sweep, &len) == QRAMSEY_OK);
  REQUIRE(len == 240);
  std::vector<double> tau(240), p(240);
  CHECK(qramsey_sweep_series(sweep, tau.data(), p.data(), 240) == QRAMSEY_OK);
  CHECK(tau.front() == doctest::Approx(0.0));
  CHECK(tau.back() == doctest::Approx(30.0));
  for (double v : p) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
  int sampled = 1;
  CHECK(qramsey_sweep_sampled(sweep, &sampled) == QRAMSEY_OK);
  CHECK(sampled == 0);

  int n_spec = 0;
  CHECK(qramsey_sweep_spectrum_length(sweep, &n_spec) == QRAMSEY_OK);
  CHECK(n_spec >= 64);

  int n_peaks = 0;
  CHECK(qramsey_sweep_peak_count(sweep, &n_peaks) == QRAMSEY_OK);
  REQUIRE(n_peaks >= 1);
  double w_raw = 0, w_ref = 0, mag = 0, unc = 0;
  int refinement = -1;
  CHECK(qramsey_sweep_peak(sweep, 0, &w_raw, &w_ref, &mag, &unc, &refinement) ==
        QRAMSEY_OK);
  CHECK(w_ref > 0.0);
  CHECK(refinement == 1);
  CHECK(qramsey_sweep_peak(sweep, n_peaks, &w_raw, &w_ref, &mag, &unc,
                           &refinement) == QRAMSEY_ERR_CONFIG);

  double e_ref = 0.0;
  CHECK(qramsey_sweep_reference_energy(sweep, &e_ref) == QRAMSEY_OK);
  CHECK(e_ref == doctest::Approx(4.3099752).epsilon(1e-6));

  int n_est = 0;
  CHECK(qramsey_sweep_estimate_count(sweep, &n_est) == QRAMSEY_OK);
  REQUIRE(n_est >= 1);
  double omega = 0, energy = 0, oracle = 0, rel = 0;
  int level = -2, cross = -1;
  CHECK(qramsey_sweep_estimate(sweep, 0, &omega, &energy, &level, &oracle, &rel,
                               &cross) == QRAMSEY_OK);
  CHECK(level == 0);
  CHECK(std::abs(energy - (-6.524593)) < 5e-3);

  qramsey_sweep_free(sweep);
  qramsey_model_free(model);
}

TEST_CASE("invalid sweep options are rejected") {
  qramsey_model* model = load_model();
  qramsey_sweep_options opt;
  qramsey_sweep_options_init(&opt);
  opt.L = 2;
  qramsey_sweep* sweep = nullptr;
  CHECK(qramsey_sweep_run(model, &opt, &sweep) == QRAMSEY_ERR_CONFIG);
  CHECK(sweep == nullptr);
  CHECK(std::strlen(qramsey_last_error()) > 0);
  qramsey_model_free(model);
}

TEST_CASE("baseline estimators through the C surface") {
  qramsey_model* model = load_model();
  double est = 0.0;
  CHECK(qramsey_conventional_estimate(model, 40.0, 200, &est) == QRAMSEY_OK);
  CHECK(est > -6.6);
  CHECK(est < 0.0);
  double crit = 0.0;
  CHECK(qramsey_adiabatic_criterion(model, 101, &crit) == QRAMSEY_OK);
  CHECK(crit > 0.0);
  CHECK(qramsey_conventional_estimate(model, -1.0, 200, &est) == QRAMSEY_ERR_CONFIG);
  qramsey_model_free(model);
}

TEST_CASE("comparison rejects runtimes shorter than both ramps") {
  qramsey_model* model = load_model();
  qramsey_sweep_options opt;
  qramsey_sweep_options_init(&opt);
  opt.T = 5.0;
  const double runtimes[] = {8.0};
  qramsey_compare* cmp = nullptr;
  CHECK(qramsey_compare_run(model, runtimes, 1, &opt, &cmp) == QRAMSEY_ERR_CONFIG);
  CHECK(cmp == nullptr);
  qramsey_model_free(model);
}

TEST_CASE("preparation pattern errors cross the boundary") {
  qramsey_model* model = load_model();
  qramsey_ghz_options opt;
  qramsey_ghz_options_init(&opt);
  qramsey_ghz* ghz = nullptr;
  CHECK(qramsey_ghz_run(model, "GGX-", &opt, &ghz) == QRAMSEY_ERR_CONFIG);
  CHECK(ghz == nullptr);
  qramsey_model_free(model);
}

}  // TEST_SUITE
