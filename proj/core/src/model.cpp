#include "svmix/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "svmix/errors.hpp"
#include "svmix/rng.hpp"

namespace svmix {

namespace {

const double kLogTwoPi = std::log(2.0 * std::numbers::pi);

double log_normal_pdf(double x, double mean, double var) {
  const double d = x - mean;
  return -0.5 * (kLogTwoPi + std::log(var) + d * d / var);
}

}  // namespace

std::string_view to_string(ModelKind k) {
  switch (k) {
    case ModelKind::sv: return "sv";
    case ModelKind::svm: return "svm";
    case ModelKind::svl: return "svl";
    case ModelKind::svml: return "svml";
  }
  return "unknown";
}

ModelKind parse_model_kind(std::string_view name) {
  if (name == "sv") return ModelKind::sv;
  if (name == "svm") return ModelKind::svm;
  if (name == "svl") return ModelKind::svl;
  if (name == "svml") return ModelKind::svml;
  throw ConfigError("unknown model '" + std::string(name) + "' (expected sv, svm, svl or svml)");
}

double SvmParams::sigma() const { return std::sqrt(sigma2); }

void SvmParams::validate() const {
  if (!std::isfinite(mu) || !std::isfinite(beta)) {
    throw std::domain_error("SvmParams: mu and beta must be finite");
  }
  if (!(std::abs(phi) < 1.0)) throw std::domain_error("SvmParams: |phi| must be < 1");
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) {
    throw std::domain_error("SvmParams: sigma2 must be positive");
  }
  if (rho && !(std::abs(*rho) < 1.0)) throw std::domain_error("SvmParams: |rho| must be < 1");
}

void PriorSpec::validate() const {
  if (!(mu_var > 0.0) || !(phi_a > 0.0) || !(phi_b > 0.0) || !(sigma2_n0 > 0.0) ||
      !(sigma2_s0 > 0.0) || !(beta_var > 0.0)) {
    throw ConfigError("prior hyperparameters must be positive");
  }
}

TransformedData transform(std::span<const double> y, double c) {
  if (!(c > 0.0)) throw std::domain_error("transform: offset c must be positive");
  TransformedData out;
  out.c = c;
  out.ystar.resize(y.size());
  out.d.resize(y.size());
  for (std::size_t t = 0; t < y.size(); ++t) {
    out.ystar[t] = std::log(y[t] * y[t] + c);
    out.d[t] = y[t] >= 0.0 ? 1.0 : -1.0;
  }
  return out;
}

double log_obs_density(double y, double h, const SvmParams& params) {
  const double r = y * std::exp(-0.5 * h) - params.beta;
  return -0.5 * kLogTwoPi - 0.5 * h - 0.5 * r * r;
}

double log_state_transition(double h_next, double h, double y, const SvmParams& params) {
  const double rho = params.rho_or_zero();
  const double sigma = params.sigma();
  const double eps = y * std::exp(-0.5 * h) - params.beta;
  const double mean = params.mu + params.phi * (h - params.mu) + rho * sigma * eps;
  return log_normal_pdf(h_next, mean, params.sigma2 * (1.0 - rho * rho));
}

double log_prior(const SvmParams& params, const PriorSpec& priors, ModelKind kind) {
  params.validate();
  double lp = log_normal_pdf(params.mu, priors.mu_mean, priors.mu_var);

  // (phi + 1)/2 ~ Beta(a, b); the change of variables contributes log(1/2).
  const double x = 0.5 * (params.phi + 1.0);
  lp += (priors.phi_a - 1.0) * std::log(x) + (priors.phi_b - 1.0) * std::log1p(-x) +
        std::lgamma(priors.phi_a + priors.phi_b) - std::lgamma(priors.phi_a) -
        std::lgamma(priors.phi_b) - std::numbers::ln2;

  const double shape = 0.5 * priors.sigma2_n0;
  const double scale = 0.5 * priors.sigma2_s0;
  lp += shape * std::log(scale) - std::lgamma(shape) - (shape + 1.0) * std::log(params.sigma2) -
        scale / params.sigma2;

  if (has_beta(kind)) lp += log_normal_pdf(params.beta, priors.beta_mean, priors.beta_var);
  if (has_leverage(kind)) lp -= std::numbers::ln2;
  return lp;
}

double log_complete_likelihood(std::span<const double> y, std::span<const double> h,
                               const SvmParams& params) {
  if (y.size() != h.size() || y.empty()) {
    throw std::invalid_argument("log_complete_likelihood: y and h must be non-empty and equal length");
  }
  params.validate();
  const std::size_t n = y.size();
  double lp = log_normal_pdf(h[0], params.mu, params.sigma2 / (1.0 - params.phi * params.phi));
  for (std::size_t t = 0; t < n; ++t) {
    lp += log_obs_density(y[t], h[t], params);
    if (t + 1 < n) lp += log_state_transition(h[t + 1], h[t], y[t], params);
  }
  return lp;
}

double log_posterior(std::span<const double> h, const SvmParams& params, const PriorSpec& priors,
                     std::span<const double> y, ModelKind kind) {
  return log_prior(params, priors, kind) + log_complete_likelihood(y, h, params);
}

CompleteDataKernel::CompleteDataKernel(std::span<const double> y, std::span<const double> h)
    : h_(h.begin(), h.end()), scaled_y_(y.size()) {
  if (y.size() != h.size() || y.empty()) {
    throw std::invalid_argument("CompleteDataKernel: y and h must be non-empty and equal length");
  }
  for (std::size_t t = 0; t < y.size(); ++t) {
    scaled_y_[t] = y[t] * std::exp(-0.5 * h[t]);
    sum_h_ += h[t];
  }
}

double CompleteDataKernel::log_density(const SvmParams& params) const {
  const std::size_t n = h_.size();
  const double rho = params.rho_or_zero();
  const double sigma = params.sigma();
  const double trans_var = params.sigma2 * (1.0 - rho * rho);
  const double phi = params.phi;
  const double mu = params.mu;

  double obs_ss = 0.0;
  double trans_ss = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const double eps = scaled_y_[t] - params.beta;
    obs_ss += eps * eps;
    if (t + 1 < n) {
      const double r = h_[t + 1] - mu - phi * (h_[t] - mu) - rho * sigma * eps;
      trans_ss += r * r;
    }
  }
  const double nd = static_cast<double>(n);
  double lp = log_normal_pdf(h_[0], mu, params.sigma2 / (1.0 - phi * phi));
  lp += -0.5 * nd * kLogTwoPi - 0.5 * sum_h_ - 0.5 * obs_ss;
  lp += -0.5 * (nd - 1.0) * (kLogTwoPi + std::log(trans_var)) - 0.5 * trans_ss / trans_var;
  return lp;
}

SimulatedSeries simulate(const SvmParams& params, std::size_t n, Rng& rng) {
  if (n == 0) throw std::domain_error("simulate: n must be at least 1");
  params.validate();
  const double rho = params.rho_or_zero();
  const double sigma = params.sigma();
  const double rho_c = std::sqrt(1.0 - rho * rho);

  SimulatedSeries out;
  out.y.resize(n);
  out.h.resize(n);
  double h = params.mu + std::sqrt(params.sigma2 / (1.0 - params.phi * params.phi)) * rng.normal();
  for (std::size_t t = 0; t < n; ++t) {
    out.h[t] = h;
    const double eps = rng.normal();
    const double scale = std::exp(0.5 * h);
    out.y[t] = params.beta * scale + eps * scale;
    if (t + 1 < n) {
      const double eta = sigma * (rho * eps + rho_c * rng.normal());
      h = params.mu + params.phi * (h - params.mu) + eta;
    }
  }
  return out;
}

}  // namespace svmix
