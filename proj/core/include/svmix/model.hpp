#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "svmix/state_space.hpp"

namespace svmix {

class Rng;

// SV: no mean term, no leverage. SVM: beta exp(h/2) in the mean.
// SVL / SVML: the same pair with leverage correlation rho.
enum class ModelKind { sv, svm, svl, svml };

constexpr bool has_beta(ModelKind k) { return k == ModelKind::svm || k == ModelKind::svml; }
constexpr bool has_leverage(ModelKind k) { return k == ModelKind::svl || k == ModelKind::svml; }

std::string_view to_string(ModelKind k);
// Throws ConfigError on an unknown name.
ModelKind parse_model_kind(std::string_view name);

// theta = (mu, phi, sigma^2, beta[, rho]).
struct SvmParams {
  double mu = 0.0;
  double phi = 0.9;
  double sigma2 = 0.1;
  double beta = 0.0;
  std::optional<double> rho;

  double sigma() const;
  double rho_or_zero() const { return rho.value_or(0.0); }
  bool leverage() const { return rho.has_value(); }
  // Throws std::domain_error unless |phi| < 1, sigma2 > 0 and |rho| < 1.
  void validate() const;
};

// mu ~ N(mu_mean, mu_var), (phi + 1)/2 ~ Beta(phi_a, phi_b),
// sigma^2 ~ IG(sigma2_n0 / 2, sigma2_s0 / 2), beta ~ N(beta_mean, beta_var),
// rho ~ U(-1, 1) for the leverage models.
struct PriorSpec {
  double mu_mean = 0.0;
  double mu_var = 9.0;
  double phi_a = 1.0;
  double phi_b = 1.0;
  double sigma2_n0 = 0.001;
  double sigma2_s0 = 0.001;
  double beta_mean = 0.0;
  double beta_var = 1.0;

  void validate() const;
};

struct TransformedData {
  std::vector<double> ystar;  // log(y_t^2 + c)
  std::vector<double> d;      // +1 if y_t >= 0, else -1
  double c = 1e-7;
};

inline constexpr double kDefaultOffset = 1e-7;

TransformedData transform(std::span<const double> y, double c = kDefaultOffset);

// log f(y_t | h_t, theta): y_t ~ N(beta exp(h_t/2), exp(h_t)).
double log_obs_density(double y, double h, const SvmParams& params);

// log f(h_{t+1} | h_t, y_t, theta). With leverage the mean gains
// rho sigma exp(-h_t/2)(y_t - beta exp(h_t/2)) and the variance is
// sigma^2 (1 - rho^2).
double log_state_transition(double h_next, double h, double y, const SvmParams& params);

// Normalized log prior density on the original parameterization.
double log_prior(const SvmParams& params, const PriorSpec& priors, ModelKind kind);

// log f(y, h | theta), normalized.
double log_complete_likelihood(std::span<const double> y, std::span<const double> h,
                               const SvmParams& params);

// log pi(h, theta | y) up to an additive constant. Throws std::domain_error
// when params violate their constraints.
double log_posterior(std::span<const double> h, const SvmParams& params, const PriorSpec& priors,
                     std::span<const double> y, ModelKind kind);

// log f(y, h | theta) with the h-dependent quantities cached, for repeated
// evaluation over theta at a fixed latent path.
class CompleteDataKernel {
 public:
  CompleteDataKernel(std::span<const double> y, std::span<const double> h);
  double log_density(const SvmParams& params) const;

 private:
  std::vector<double> h_;
  std::vector<double> scaled_y_;  // y_t exp(-h_t/2)
  double sum_h_ = 0.0;
};

struct SimulatedSeries {
  std::vector<double> y;
  LatentPath h;
};

SimulatedSeries simulate(const SvmParams& params, std::size_t n, Rng& rng);

}  // namespace svmix
