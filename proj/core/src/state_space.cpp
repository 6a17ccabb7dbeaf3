#include "svmix/state_space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "svmix/errors.hpp"
#include "svmix/rng.hpp"

namespace svmix {

void SsmSpec::validate() const {
  if (n == 0) throw std::invalid_argument("SsmSpec: n must be positive");
  if (obs_mean.size() != n || obs_sd.size() != n || state_intercept.size() != n ||
      state_obs_loading.size() != n || state_sd.size() != n) {
    throw std::invalid_argument("SsmSpec: per-step vectors must have length n");
  }
  if (!(std::abs(state_ar) < 1.0)) throw std::invalid_argument("SsmSpec: |state_ar| must be < 1");
  if (!(init_var > 0.0)) throw std::invalid_argument("SsmSpec: init_var must be positive");
  for (std::size_t t = 0; t < n; ++t) {
    if (!(obs_sd[t] > 0.0)) throw std::invalid_argument("SsmSpec: obs_sd must be positive");
    if (!(state_sd[t] >= 0.0)) throw std::invalid_argument("SsmSpec: state_sd must be >= 0");
  }
}

namespace {

const double kLogTwoPi = std::log(2.0 * std::numbers::pi);

// Forward pass. Conditioning on y*_t fixes z1_t given h_t, which turns the
// correlated transition into h_{t+1} = c'_t + phi'_t h_t + N(0, q_t).
struct FilterPass {
  std::vector<double> filtered_mean;
  std::vector<double> filtered_var;
  std::vector<double> trans_intercept;  // c'_t
  std::vector<double> trans_ar;         // phi'_t
  std::vector<double> trans_var;        // q_t
  std::vector<double> next_pred_mean;   // E[h_{t+1} | y*_1..t]
  std::vector<double> next_pred_var;
  double loglik = 0.0;
};

FilterPass run_filter(const SsmSpec& spec, std::span<const double> ystar, bool store = true) {
  if (ystar.size() != spec.n) {
    throw std::invalid_argument("kalman filter: spec.n=" + std::to_string(spec.n) +
                                " but ystar has " + std::to_string(ystar.size()) + " entries");
  }
  const std::size_t n = spec.n;
  FilterPass f;
  if (store) {
    f.filtered_mean.resize(n);
    f.filtered_var.resize(n);
    f.trans_intercept.assign(n, 0.0);
    f.trans_ar.assign(n, 0.0);
    f.trans_var.assign(n, 0.0);
    f.next_pred_mean.assign(n, 0.0);
    f.next_pred_var.assign(n, 0.0);
  }

  double pred_mean = spec.init_mean;
  double pred_var = spec.init_var;
  // log det accumulated as a running product, flushed every few steps
  double det_prod = 1.0;
  double quad = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const double osd = spec.obs_sd[t];
    const double obs_var = osd * osd;
    const double innov_var = pred_var + obs_var;
    if (!(innov_var > 0.0) || !std::isfinite(innov_var)) {
      throw NumericalError("kalman filter: non-positive prediction variance at t=" +
                           std::to_string(t + 1));
    }
    const double centered = ystar[t] - spec.obs_mean[t];
    const double innov = centered - pred_mean;
    const double inv_innov = 1.0 / innov_var;
    quad += innov * innov * inv_innov;
    det_prod *= innov_var;
    if ((t & 31) == 31 || det_prod > 1e200 || det_prod < 1e-200) {
      f.loglik -= 0.5 * std::log(det_prod);
      det_prod = 1.0;
    }

    const double gain = pred_var * inv_innov;
    const double fmean = pred_mean + gain * innov;
    const double fvar = std::max(pred_var * obs_var * inv_innov, kVarianceFloor);
    if (store) {
      f.filtered_mean[t] = fmean;
      f.filtered_var[t] = fvar;
    }

    if (t + 1 < n) {
      const double loading = spec.state_obs_loading[t] / osd;
      const double c = spec.state_intercept[t] + loading * centered;
      const double ar = spec.state_ar - loading;
      const double q = spec.state_sd[t] * spec.state_sd[t];
      pred_mean = c + ar * fmean;
      pred_var = std::max(ar * ar * fvar + q, kVarianceFloor);
      if (store) {
        f.trans_intercept[t] = c;
        f.trans_ar[t] = ar;
        f.trans_var[t] = q;
        f.next_pred_mean[t] = pred_mean;
        f.next_pred_var[t] = pred_var;
      }
    }
  }
  f.loglik -= 0.5 * (std::log(det_prod) + quad + static_cast<double>(n) * kLogTwoPi);
  if (!std::isfinite(f.loglik)) {
    throw NumericalError("kalman filter: non-finite log-likelihood");
  }
  return f;
}

}  // namespace

double kalman_loglik(const SsmSpec& spec, std::span<const double> ystar) {
  return run_filter(spec, ystar, false).loglik;
}

LatentPath simulation_smoother(const SsmSpec& spec, std::span<const double> ystar, Rng& rng) {
  const FilterPass f = run_filter(spec, ystar);
  const std::size_t n = spec.n;
  LatentPath h(n);
  h[n - 1] = f.filtered_mean[n - 1] + std::sqrt(f.filtered_var[n - 1]) * rng.normal();
  for (std::size_t t = n - 1; t-- > 0;) {
    const double ar = f.trans_ar[t];
    const double pvar = f.next_pred_var[t];
    const double gain = f.filtered_var[t] * ar / pvar;
    const double mean = f.filtered_mean[t] + gain * (h[t + 1] - f.next_pred_mean[t]);
    const double var = std::max(f.filtered_var[t] * f.trans_var[t] / pvar, kVarianceFloor);
    h[t] = mean + std::sqrt(var) * rng.normal();
  }
  return h;
}

SmoothedMoments smoother_moments(const SsmSpec& spec, std::span<const double> ystar) {
  const FilterPass f = run_filter(spec, ystar);
  const std::size_t n = spec.n;
  SmoothedMoments out;
  out.mean.resize(n);
  out.variance.resize(n);
  out.mean[n - 1] = f.filtered_mean[n - 1];
  out.variance[n - 1] = f.filtered_var[n - 1];
  for (std::size_t t = n - 1; t-- > 0;) {
    const double gain = f.filtered_var[t] * f.trans_ar[t] / f.next_pred_var[t];
    out.mean[t] = f.filtered_mean[t] + gain * (out.mean[t + 1] - f.next_pred_mean[t]);
    out.variance[t] = std::max(
        f.filtered_var[t] + gain * gain * (out.variance[t + 1] - f.next_pred_var[t]), kVarianceFloor);
  }
  return out;
}

}  // namespace svmix
