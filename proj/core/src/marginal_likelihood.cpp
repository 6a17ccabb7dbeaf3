#include "svmix/marginal_likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "svmix/errors.hpp"
#include "svmix/laplace.hpp"
#include "svmix/rng.hpp"

namespace svmix {

double log_mean_exp(std::span<const double> v) {
  if (v.empty()) return -std::numeric_limits<double>::infinity();
  double m = -std::numeric_limits<double>::infinity();
  for (double x : v) m = std::max(m, x);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s / static_cast<double>(v.size()));
}

double ordinate_numerator_term(double log_target_draw, double log_target_star, double log_q_draw,
                         double log_q_star) {
  return log_mh_acceptance(log_target_draw, log_target_star, log_q_draw, log_q_star) + log_q_star;
}

double ordinate_denominator_term(double log_target_star, double log_target_draw, double log_q_star,
                           double log_q_draw) {
  return log_mh_acceptance(log_target_star, log_target_draw, log_q_star, log_q_draw);
}

OrdinateEstimate posterior_ordinate(std::span<const double> log_num_terms,
                             std::span<const double> log_den_terms, std::size_t n_batches) {
  if (n_batches < 2) throw ConfigError("batch means needs at least 2 batches");
  const std::size_t nb_num = log_num_terms.size() / n_batches;
  const std::size_t nb_den = log_den_terms.size() / n_batches;
  if (nb_num < 2 || nb_den < 2) {
    throw ConfigError("ordinate estimate: " + std::to_string(log_num_terms.size()) +
                      " posterior and " + std::to_string(log_den_terms.size()) +
                      " proposal terms are too few for " + std::to_string(n_batches) + " batches");
  }
  OrdinateEstimate est;
  est.log_ordinate = log_mean_exp(log_num_terms) - log_mean_exp(log_den_terms);
  std::vector<double> batch(n_batches);
  double mean = 0.0;
  for (std::size_t b = 0; b < n_batches; ++b) {
    batch[b] = log_mean_exp(log_num_terms.subspan(b * nb_num, nb_num)) -
               log_mean_exp(log_den_terms.subspan(b * nb_den, nb_den));
    mean += batch[b];
  }
  mean /= static_cast<double>(n_batches);
  double ss = 0.0;
  for (double v : batch) ss += (v - mean) * (v - mean);
  const double nb = static_cast<double>(n_batches);
  est.std_error = std::sqrt(ss / (nb - 1.0) / nb);
  return est;
}

SvmParams posterior_mean(const ChainOutput& chain) {
  const std::size_t g = chain.n_draws();
  if (g == 0) throw ConfigError("posterior mean of an empty chain");
  SvmParams p;
  double mu = 0.0, phi = 0.0, s2 = 0.0, beta = 0.0, rho = 0.0;
  for (std::size_t i = 0; i < g; ++i) {
    const SvmParams d = chain.params_at(i);
    mu += d.mu;
    phi += d.phi;
    s2 += d.sigma2;
    beta += d.beta;
    rho += d.rho_or_zero();
  }
  const double n = static_cast<double>(g);
  p.mu = mu / n;
  p.phi = phi / n;
  p.sigma2 = s2 / n;
  p.beta = beta / n;
  if (has_leverage(chain.model)) p.rho = rho / n;
  return p;
}

MarglikResult estimate_marglik(std::span<const double> y, const PriorSpec& priors,
                           const McmcConfig& mcmc, const ChainOutput& chain,
                           const PfConfig& pf_config, const OrdinateConfig& ord_config, Rng& rng) {
  if (chain.algorithm != Algorithm::ordinate) {
    throw ConfigError("marginal likelihood needs a chain from the ordinate algorithm");
  }
  if (!chain.final_theta_proposal) {
    throw ConfigError("chain carries no theta proposal");
  }
  if (chain.h_paths.size() < 2 * ord_config.n_batches) {
    throw ConfigError("chain has " + std::to_string(chain.h_paths.size()) +
                      " stored h paths; need at least " + std::to_string(2 * ord_config.n_batches) +
                      " for " + std::to_string(ord_config.n_batches) + " batches");
  }
  if (ord_config.pf_replications < 2) throw ConfigError("need at least 2 particle-filter runs");
  const ModelKind kind = chain.model;
  const ParamTransform tr(has_beta(kind), has_leverage(kind));

  MarglikResult res;
  res.theta_star = posterior_mean(chain);
  const SvmParams& star = res.theta_star;
  const Eigen::VectorXd x_star = tr.to_unconstrained(star);

  // Likelihood ordinate: replicated particle filters on split streams.
  std::vector<double> lls(ord_config.pf_replications);
  for (std::size_t r = 0; r < lls.size(); ++r) {
    Rng pf_rng = rng.split(r);
    lls[r] = apf_loglik(y, star, pf_config, pf_rng).loglik;
  }
  res.loglik = log_mean_exp(lls);
  {
    double m = 0.0;
    for (double v : lls) m += v;
    m /= static_cast<double>(lls.size());
    double ss = 0.0;
    for (double v : lls) ss += (v - m) * (v - m);
    const double r = static_cast<double>(lls.size());
    res.loglik_std_error = std::sqrt(ss / (r - 1.0) / r);
  }
  res.log_prior = log_prior(star, priors, kind);

  // Fixed proposal: centred at theta*, spread from the last Laplace fit.
  const GaussianProposal q(x_star, chain.final_theta_proposal->cov());
  const double lq_star = q.log_density(x_star);

  // Numerator over posterior (theta, h) pairs.
  const std::size_t thin = std::max<std::size_t>(chain.h_path_thin, 1);
  std::vector<double> num;
  num.reserve(chain.h_paths.size());
  for (std::size_t k = 0; k < chain.h_paths.size(); ++k) {
    const SvmParams draw = chain.params_at(k * thin);
    const CompleteDataKernel kernel(y, chain.h_paths[k]);
    const ThetaGivenHTarget target(tr, kernel, priors, kind);
    const Eigen::VectorXd x = tr.to_unconstrained(draw);
    num.push_back(ordinate_numerator_term(target(x), target(x_star), q.log_density(x), lq_star));
  }

  // Denominator: h from the h-step at fixed theta*, theta from q.
  const TransformedData tdata = transform(y, mcmc.offset);
  const MixtureGrid grid = build_grid(star.beta, mcmc.truncation);
  Rng h_rng = rng.split(ord_config.pf_replications);
  LatentPath h = chain.h_paths.back();
  std::vector<double> den;
  den.reserve(ord_config.n_proposal_draws);
  const std::size_t total = ord_config.reduced_burnin + ord_config.n_proposal_draws;
  for (std::size_t it = 0; it < total; ++it) {
    const IndicatorPath s = draw_indicators(h, star, tdata, grid, h_rng);
    const SsmSpec spec = build_ssm(star, s, tdata, grid);
    LatentPath cand = simulation_smoother(spec, tdata.ystar, h_rng);
    if (correction_mh(star, h, star, cand, y, tdata, grid, h_rng)) h = std::move(cand);
    if (it < ord_config.reduced_burnin) continue;
    const CompleteDataKernel kernel(y, h);
    const ThetaGivenHTarget target(tr, kernel, priors, kind);
    const Eigen::VectorXd x = q.sample(h_rng);
    den.push_back(ordinate_denominator_term(target(x_star), target(x), lq_star, q.log_density(x)));
  }

  const OrdinateEstimate ord = posterior_ordinate(num, den, ord_config.n_batches);
  // Density of theta rather than of the unconstrained coordinates.
  res.log_posterior_ordinate = ord.log_ordinate - tr.log_jacobian(x_star);
  res.ordinate_std_error = ord.std_error;
  res.std_error = std::hypot(res.loglik_std_error, res.ordinate_std_error);
  res.log_marglik = res.loglik + res.log_prior - res.log_posterior_ordinate;
  if (!std::isfinite(res.log_marglik)) {
    throw NumericalError("marginal likelihood: non-finite estimate");
  }
  return res;
}

}  // namespace svmix
