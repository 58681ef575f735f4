// Copyright 2026 The qramsey authors
//
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#include "qramsey/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qramsey/errors.hpp"

namespace qramsey {

namespace {

void validate_series(const std::vector<double>& tau, const std::vector<double>& p) {
  if (tau.empty()) throw ConfigError("spectral: empty series");
  if (tau.size() != p.size()) {
    throw ConfigError("spectral: tau/probability length mismatch");
  }
}

std::vector<double> preprocess(const std::vector<double>& p, const DftOptions& opt) {
  std::vector<double> sig = p;
  if (opt.mean_subtract) {
    const double mean = std::accumulate(sig.begin(), sig.end(), 0.0) /
                        static_cast<double>(sig.size());
    for (double& v : sig) v -= mean;
  }
  if (opt.hann) {
    const size_t n = sig.size();
    for (size_t k = 0; k < n; ++k) {
      const double w = n > 1 ? 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi *
                                                     static_cast<double>(k) /
                                                     static_cast<double>(n - 1)))
                             : 1.0;
      sig[k] *= w;
    }
  }
  return sig;
}

std::complex<double> dft_at(const std::vector<double>& tau,
                            const std::vector<double>& sig, double omega) {
  std::complex<double> acc{0.0, 0.0};
  for (size_t n = 0; n < tau.size(); ++n) {
    acc += sig[n] * std::polar(1.0, -omega * tau[n]);
  }
  return acc;
}

/// |f| over a regular omega grid via per-sample phase recurrence; used only
/// internally where speed matters more than the last few digits.
std::vector<double> magnitude_grid(const std::vector<double>& tau,
                                   const std::vector<double>& sig,
                                   double omega0, double domega, int n_omega) {
  std::vector<std::complex<double>> acc(static_cast<size_t>(n_omega), {0.0, 0.0});
  for (size_t n = 0; n < tau.size(); ++n) {
    std::complex<double> phase = std::polar(1.0, -omega0 * tau[n]);
    const std::complex<double> step = std::polar(1.0, -domega * tau[n]);
    for (int k = 0; k < n_omega; ++k) {
      acc[static_cast<size_t>(k)] += sig[n] * phase;
      phase *= step;
    }
  }
  std::vector<double> mag(acc.size());
  for (size_t k = 0; k < acc.size(); ++k) mag[k] = std::abs(acc[k]);
  return mag;
}

double quadratic_vertex(double omega_mid, double domega, double y0, double y1,
                        double y2) {
  const double denom = y0 - 2.0 * y1 + y2;
  if (denom == 0.0) return omega_mid;
  double shift = 0.5 * (y0 - y2) / denom;
  shift = std::clamp(shift, -1.0, 1.0);
  return omega_mid + shift * domega;
}

/// One sinusoid model b cos(w t + phi) fitted to a residual signal by
/// Levenberg-Marquardt with the analytic Jacobian.
struct Component {
  double b, w, phi;
};

double model_rss(const std::vector<double>& tau, const std::vector<double>& y,
                 double a0, const std::vector<Component>& comps) {
  double rss = 0.0;
  for (size_t n = 0; n < tau.size(); ++n) {
    double m = a0;
    for (const Component& c : comps) m += c.b * std::cos(c.w * tau[n] + c.phi);
    const double r = m - y[n];
    rss += r * r;
  }
  return rss;
}

/// Joint Levenberg-Marquardt over a0 and all components. fit_offset=false
/// drops a0 from the parameter set (single-component extraction step).
void lm_fit(const std::vector<double>& tau, const std::vector<double>& y,
            double& a0, std::vector<Component>& comps, bool fit_offset,
            int max_iters = 200) {
  const int n_pts = static_cast<int>(tau.size());
  const int n_par = (fit_offset ? 1 : 0) + 3 * static_cast<int>(comps.size());
  double lambda = 1e-3;
  double rss = model_rss(tau, y, a0, comps);
  for (int iter = 0; iter < max_iters; ++iter) {
    Eigen::MatrixXd jac(n_pts, n_par);
    Eigen::VectorXd resid(n_pts);
    for (int n = 0; n < n_pts; ++n) {
      const double t = tau[static_cast<size_t>(n)];
      double m = a0;
      int col = 0;
      if (fit_offset) jac(n, col++) = 1.0;
      for (const Component& c : comps) {
        const double arg = c.w * t + c.phi;
        const double cs = std::cos(arg), sn = std::sin(arg);
        m += c.b * cs;
        jac(n, col++) = cs;
        jac(n, col++) = -c.b * t * sn;
        jac(n, col++) = -c.b * sn;
      }
      resid[n] = m - y[static_cast<size_t>(n)];
    }
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd jtr = jac.transpose() * resid;
    if (jtr.lpNorm<Eigen::Infinity>() < 1e-14 * (1.0 + std::sqrt(rss))) break;
    bool improved = false;
    for (int attempt = 0; attempt < 40 && !improved; ++attempt) {
      Eigen::MatrixXd damped = jtj;
      for (int k = 0; k < n_par; ++k) {
        damped(k, k) += lambda * std::max(jtj(k, k), 1e-12);
      }
      const Eigen::VectorXd delta = damped.ldlt().solve(-jtr);
      double a0_try = a0;
      std::vector<Component> comps_try = comps;
      int col = 0;
      if (fit_offset) a0_try += delta[col++];
      for (Component& c : comps_try) {
        c.b += delta[col++];
        c.w += delta[col++];
        c.phi += delta[col++];
      }
      const double rss_try = model_rss(tau, y, a0_try, comps_try);
      if (rss_try < rss) {
        const double gain = rss - rss_try;
        a0 = a0_try;
        comps = std::move(comps_try);
        rss = rss_try;
        lambda = std::max(lambda * 0.3, 1e-12);
        improved = true;
        if (gain < 1e-16 * (1.0 + rss)) return;
      } else {
        lambda *= 4.0;
        if (lambda > 1e12) return;
      }
    }
    if (!improved) return;
  }
}

}  // namespace

Spectrum dft(const std::vector<double>& tau, const std::vector<double>& p,
             double omega_min, double omega_max, int n_omega,
             const DftOptions& options) {
  validate_series(tau, p);
  if (n_omega < 2) throw ConfigError("dft: need at least 2 omega samples");
  if (!(omega_min < omega_max)) throw ConfigError("dft: need omega_min < omega_max");
  const std::vector<double> sig = preprocess(p, options);
  const auto [tmin, tmax] = std::minmax_element(tau.begin(), tau.end());
  Spectrum spec;
  spec.mean_subtracted = options.mean_subtract;
  spec.tau_span = *tmax - *tmin;
  spec.n_samples = static_cast<int>(tau.size());
  spec.omega.resize(static_cast<size_t>(n_omega));
  spec.values.resize(static_cast<size_t>(n_omega));
  const double domega = (omega_max - omega_min) / (n_omega - 1);
  for (int k = 0; k < n_omega; ++k) {
    const double w = omega_min + k * domega;
    spec.omega[static_cast<size_t>(k)] = w;
    spec.values[static_cast<size_t>(k)] = dft_at(tau, sig, w);
  }
  return spec;
}

std::vector<PeakEstimate> find_peaks(const Spectrum& spec,
                                     double threshold_fraction,
                                     double min_separation) {
  const size_t n = spec.omega.size();
  if (n < 3) throw ConfigError("find_peaks: spectrum too short");
  if (threshold_fraction <= 0.0 || threshold_fraction >= 1.0) {
    throw ConfigError("find_peaks: threshold_fraction must lie in (0, 1)");
  }
  std::vector<double> mag(n);
  for (size_t k = 0; k < n; ++k) mag[k] = std::abs(spec.values[k]);
  const double global_max = *std::max_element(mag.begin(), mag.end());
  const double threshold = threshold_fraction * global_max;

  std::vector<size_t> candidates;
  for (size_t k = 1; k + 1 < n; ++k) {
    if (mag[k] > mag[k - 1] && mag[k] >= mag[k + 1] && mag[k] > threshold) {
      candidates.push_back(k);
    }
  }
  if (candidates.empty()) {
    throw PhysicsError("find_peaks: no peak above threshold");
  }
  // Greedy by magnitude, enforcing the separation.
  std::sort(candidates.begin(), candidates.end(),
            [&](size_t a, size_t b) { return mag[a] > mag[b]; });
  std::vector<size_t> kept;
  for (size_t k : candidates) {
    const bool clear = std::all_of(kept.begin(), kept.end(), [&](size_t j) {
      return std::abs(spec.omega[k] - spec.omega[j]) >= min_separation;
    });
    if (clear) kept.push_back(k);
  }
  std::sort(kept.begin(), kept.end());

  const double domega = spec.omega[1] - spec.omega[0];
  const double uncertainty = spec.tau_span > 0.0 ? 1.0 / spec.tau_span : 0.0;
  std::vector<PeakEstimate> peaks;
  for (size_t k : kept) {
    PeakEstimate pe;
    pe.omega_raw = spec.omega[k];
    pe.omega_refined = quadratic_vertex(spec.omega[k], domega, mag[k - 1], mag[k],
                                        mag[k + 1]);
    pe.magnitude = mag[k];
    pe.uncertainty = uncertainty;
    pe.refinement = Refinement::Quadratic;
    peaks.push_back(pe);
  }
  return peaks;
}

std::vector<PeakEstimate> refine_least_squares(const std::vector<double>& tau,
                                               const std::vector<double>& p,
                                               const Spectrum& spec,
                                               std::vector<PeakEstimate> peaks) {
  validate_series(tau, p);
  if (peaks.empty()) return peaks;
  if (spec.omega.size() < 3) throw ConfigError("refine_least_squares: spectrum too short");

  const double mean = std::accumulate(p.begin(), p.end(), 0.0) /
                      static_cast<double>(p.size());
  std::vector<double> sig(p.size());
  for (size_t n = 0; n < p.size(); ++n) sig[n] = p[n] - mean;

  const double omega0 = spec.omega.front();
  const int n_omega = static_cast<int>(spec.omega.size());
  const double domega = (spec.omega.back() - omega0) / (n_omega - 1);

  // Subtract-and-repeat extraction of dominant cosines, largest first.
  std::vector<double> residual = sig;
  std::vector<Component> comps;
  const std::vector<double> mag0 = magnitude_grid(tau, sig, omega0, domega, n_omega);
  const double floor_mag =
      0.004 * *std::max_element(mag0.begin(), mag0.end());
  constexpr int kMaxComponents = 30;
  for (int it = 0; it < kMaxComponents; ++it) {
    const std::vector<double> mag =
        magnitude_grid(tau, residual, omega0, domega, n_omega);
    const size_t i = static_cast<size_t>(
        std::max_element(mag.begin(), mag.end()) - mag.begin());
    if (mag[i] < floor_mag || i == 0 || i + 1 == mag.size()) break;
    const double w0 =
        quadratic_vertex(spec.omega[i], domega, mag[i - 1], mag[i], mag[i + 1]);
    Component c{2.0 * mag[i] / static_cast<double>(tau.size()), w0,
                std::arg(dft_at(tau, residual, w0))};
    std::vector<Component> one{c};
    double zero = 0.0;
    lm_fit(tau, residual, zero, one, false);
    comps.push_back(one[0]);
    for (size_t n = 0; n < residual.size(); ++n) {
      residual[n] -= one[0].b * std::cos(one[0].w * tau[n] + one[0].phi);
    }
  }
  if (comps.empty()) return peaks;

  // Joint fit of the full multi-cosine model against the raw series.
  double a0 = mean;
  lm_fit(tau, p, a0, comps, true, 400);

  for (PeakEstimate& pe : peaks) {
    double best = std::numeric_limits<double>::infinity();
    double w = pe.omega_refined;
    for (const Component& c : comps) {
      const double wc = std::abs(c.w);
      if (std::abs(wc - pe.omega_refined) < best) {
        best = std::abs(wc - pe.omega_refined);
        w = wc;
      }
    }
    // Never accept a fitted frequency from a different peak's basin.
    if (best <= domega * 2.0 + pe.uncertainty) {
      pe.omega_refined = w;
      pe.refinement = Refinement::LeastSquares;
    }
  }
  return peaks;
}

EnergyReport reconstruct(const std::vector<PeakEstimate>& peaks,
                         double reference_energy,
                         const std::vector<double>* oracle_energies) {
  if (peaks.empty()) throw ConfigError("reconstruct: no peaks");
  EnergyReport report;
  report.reference_energy = reference_energy;
  for (const PeakEstimate& pe : peaks) {
    EnergyEstimate est;
    est.omega = pe.omega_refined;
    est.energy = reference_energy - pe.omega_refined;
    if (est.energy >= reference_energy) {
      throw PhysicsError(
          "reconstruct: estimate at or above the reference energy; the "
          "reference is expected to be maximal");
    }
    report.estimates.push_back(est);
  }
  std::sort(report.estimates.begin(), report.estimates.end(),
            [](const EnergyEstimate& a, const EnergyEstimate& b) {
              return a.energy < b.energy;
            });
  if (oracle_energies && !oracle_energies->empty()) {
    // Greedy nearest matching, smallest distance first, each level once.
    struct Pair {
      double dist;
      size_t est;
      int level;
    };
    std::vector<Pair> pairs;
    for (size_t e = 0; e < report.estimates.size(); ++e) {
      for (size_t l = 0; l < oracle_energies->size(); ++l) {
        pairs.push_back(Pair{std::abs(report.estimates[e].energy -
                                      (*oracle_energies)[l]),
                             e, static_cast<int>(l)});
      }
    }
    std::sort(pairs.begin(), pairs.end(),
              [](const Pair& a, const Pair& b) { return a.dist < b.dist; });
    std::vector<bool> est_used(report.estimates.size(), false);
    std::vector<bool> level_used(oracle_energies->size(), false);
    for (const Pair& pr : pairs) {
      if (est_used[pr.est] || level_used[static_cast<size_t>(pr.level)]) continue;
      est_used[pr.est] = true;
      level_used[static_cast<size_t>(pr.level)] = true;
      EnergyEstimate& est = report.estimates[pr.est];
      est.matched_level = pr.level;
      est.oracle_energy = (*oracle_energies)[static_cast<size_t>(pr.level)];
      const double scale = std::abs(est.oracle_energy);
      est.relative_error = scale > 0.0 ? std::abs(est.energy - est.oracle_energy) / scale
                                       : std::abs(est.energy - est.oracle_energy);
    }
    for (EnergyEstimate& est : report.estimates) {
      if (est.matched_level < 0) est.cross_term = true;
    }
  }
  return report;
}

}  // namespace qramsey
