#include "svmix/particle_filter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "svmix/errors.hpp"
#include "svmix/rng.hpp"

namespace svmix {

namespace {

const double kHalfLogTwoPi = 0.5 * std::log(2.0 * std::numbers::pi);

double log_f(double y, double h, double beta) {
  const double z = y * std::exp(-0.5 * h) - beta;
  return -kHalfLogTwoPi - 0.5 * h - 0.5 * z * z;
}

double cdf_f(double y, double h, double beta) {
  const double z = y * std::exp(-0.5 * h) - beta;
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

// Normalized probabilities from log weights; returns log sum exp.
double normalize(std::span<const double> logw, std::vector<double>& prob) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : logw) m = std::max(m, v);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (std::size_t i = 0; i < logw.size(); ++i) {
    prob[i] = std::exp(logw[i] - m);
    s += prob[i];
  }
  for (double& p : prob) p /= s;
  return m + std::log(s);
}

void resample(std::span<const double> prob, Resampling scheme, Rng& rng,
              std::vector<std::size_t>& idx) {
  const std::size_t n = prob.size();
  const double dn = static_cast<double>(n);
  if (scheme == Resampling::systematic) {
    const double u0 = rng.uniform() / dn;
    double cum = prob[0];
    std::size_t j = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double u = u0 + static_cast<double>(i) / dn;
      while (u >= cum && j + 1 < n) cum += prob[++j];
      idx[i] = j;
    }
    return;
  }
  std::vector<double> cum(n);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) cum[i] = (s += prob[i]);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.uniform() * s;
    const auto it = std::upper_bound(cum.begin(), cum.end(), u);
    idx[i] = std::min<std::size_t>(static_cast<std::size_t>(it - cum.begin()), n - 1);
  }
}

}  // namespace

std::string_view to_string(Resampling r) {
  return r == Resampling::systematic ? "systematic" : "multinomial";
}

Resampling parse_resampling(std::string_view name) {
  if (name == "systematic") return Resampling::systematic;
  if (name == "multinomial") return Resampling::multinomial;
  throw ConfigError("unknown resampling scheme '" + std::string(name) + "'");
}

void PfConfig::validate() const {
  if (n_particles < 2) throw ConfigError("particle filter needs at least 2 particles");
}

PfOutput apf_loglik(std::span<const double> y, const SvmParams& params, const PfConfig& config,
                    Rng& rng) {
  config.validate();
  params.validate();
  const std::size_t n = y.size();
  const std::size_t np = config.n_particles;
  const double dnp = static_cast<double>(np);
  const double beta = params.beta;
  const double rho = params.rho_or_zero();
  const double sigma = params.sigma();
  const double rho_sigma = rho * sigma;
  const double step_sd = sigma * std::sqrt(1.0 - rho * rho);

  PfOutput out;
  out.log_wbar.resize(n);
  out.cdf.resize(n);
  if (n == 0) return out;

  std::vector<double> h(np), h_next(np), mu_next(np), logw(np), prob(np), logg(np), qprob(np);
  std::vector<double> lf_mu(np), parent_scale(np);
  std::vector<std::size_t> idx(np);

  const double sd0 = sigma / std::sqrt(1.0 - params.phi * params.phi);
  double cdf_sum = 0.0;
  for (std::size_t i = 0; i < np; ++i) {
    h[i] = params.mu + sd0 * rng.normal();
    logw[i] = log_f(y[0], h[i], beta);
    cdf_sum += cdf_f(y[0], h[i], beta);
  }
  double lse = normalize(logw, prob);
  if (!std::isfinite(lse)) throw NumericalError("particle filter: all weights zero at t=1");
  out.log_wbar[0] = lse - std::log(dnp);
  out.cdf[0] = cdf_sum / dnp;

  for (std::size_t t = 0; t + 1 < n; ++t) {
    const double yt = y[t];
    const double yn = y[t + 1];
    // First stage: q_i proportional to f(y_{t+1} | mu^i_{t+1}) pi^i_t.
    for (std::size_t i = 0; i < np; ++i) {
      double m = params.mu + params.phi * (h[i] - params.mu);
      if (rho_sigma != 0.0) m += rho_sigma * (yt * std::exp(-0.5 * h[i]) - beta);
      mu_next[i] = m;
      lf_mu[i] = log_f(yn, m, beta);
      logg[i] = lf_mu[i] + (logw[i] - lse);
    }
    const double log_g = normalize(logg, qprob);
    if (!std::isfinite(log_g)) {
      throw NumericalError("particle filter: all weights zero at t=" + std::to_string(t + 2));
    }
    resample(qprob, config.resampling, rng, idx);

    // Second stage: w = f(y|h) pi / q = f(y|h) G / f(y|mu). The predictive
    // cdf carries the same weights, scaled by the smallest f(y|mu).
    double lf_min = std::numeric_limits<double>::infinity();
    for (double v : lf_mu) lf_min = std::min(lf_min, v);
    for (std::size_t i = 0; i < np; ++i) parent_scale[i] = std::exp(lf_min - lf_mu[i]);
    cdf_sum = 0.0;
    for (std::size_t i = 0; i < np; ++i) {
      const std::size_t k = idx[i];
      const double hn = mu_next[k] + step_sd * rng.normal();
      h_next[i] = hn;
      const double z = yn * std::exp(-0.5 * hn) - beta;
      logw[i] = -kHalfLogTwoPi - 0.5 * hn - 0.5 * z * z + (log_g - lf_mu[k]);
      cdf_sum += 0.5 * std::erfc(-z / std::numbers::sqrt2) * parent_scale[k];
    }
    lse = normalize(logw, prob);
    if (!std::isfinite(lse)) {
      throw NumericalError("particle filter: all weights zero at t=" + std::to_string(t + 2));
    }
    out.log_wbar[t + 1] = lse - std::log(dnp);
    out.cdf[t + 1] =
        std::clamp(std::exp(std::log(cdf_sum / dnp) + log_g - lf_min), 0.0, 1.0);
    h.swap(h_next);
  }
  out.loglik = 0.0;
  for (double v : out.log_wbar) out.loglik += v;
  return out;
}

}  // namespace svmix
