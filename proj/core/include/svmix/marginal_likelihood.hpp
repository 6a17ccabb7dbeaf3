#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "svmix/model.hpp"
#include "svmix/particle_filter.hpp"
#include "svmix/samplers.hpp"

namespace svmix {

class Rng;

struct OrdinateConfig {
  std::size_t n_proposal_draws = 5000;  // denominator draws from q
  std::size_t reduced_burnin = 500;     // h-step burn-in at theta*
  std::size_t n_batches = 10;
  std::size_t pf_replications = 10;
};

struct OrdinateEstimate {
  double log_ordinate = 0.0;
  double std_error = 0.0;
};

// log alpha(x -> x*) + log q(x*): one numerator term of the ordinate.
double ordinate_numerator_term(double log_target_draw, double log_target_star, double log_q_draw,
                         double log_q_star);
// log alpha(x* -> x) for a draw x from q.
double ordinate_denominator_term(double log_target_star, double log_target_draw, double log_q_star,
                           double log_q_draw);

// log of mean(exp(num)) / mean(exp(den)), with a batch-means standard error
// on the log scale. Throws ConfigError when either array has fewer than two
// entries per batch.
OrdinateEstimate posterior_ordinate(std::span<const double> log_num_terms,
                             std::span<const double> log_den_terms, std::size_t n_batches);

double log_mean_exp(std::span<const double> v);

struct MarglikResult {
  double log_marglik = 0.0;
  double loglik = 0.0;
  double log_prior = 0.0;
  double log_posterior_ordinate = 0.0;
  double std_error = 0.0;
  double loglik_std_error = 0.0;
  double ordinate_std_error = 0.0;
  SvmParams theta_star;
};

// Posterior mean of theta over a chain.
SvmParams posterior_mean(const ChainOutput& chain);

// log m(y) = log f(y|theta*) + log pi(theta*) - log pi(theta*|y) at the
// posterior mean theta*. The chain must come from the ordinate algorithm and
// carry thinned h paths.
MarglikResult estimate_marglik(std::span<const double> y, const PriorSpec& priors,
                           const McmcConfig& mcmc, const ChainOutput& chain,
                           const PfConfig& pf_config, const OrdinateConfig& ord_config, Rng& rng);

}  // namespace svmix
