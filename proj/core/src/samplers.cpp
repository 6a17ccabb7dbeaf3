#include "svmix/samplers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "svmix/errors.hpp"
#include "svmix/rng.hpp"

namespace svmix {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
const double kLogTwoPi = std::log(2.0 * std::numbers::pi);
// Mean of log chi^2_1, used to centre the initial log-volatility level.
constexpr double kMeanLogChisq1 = -1.2703628454614782;

// log(1 - tanh(z)^2) = -2 log cosh(z), stable for large |z|.
double log_one_minus_tanh_sq(double z) {
  const double a = std::abs(z);
  return -2.0 * (a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2);
}

bool in_support(const SvmParams& p) {
  return std::isfinite(p.mu) && std::isfinite(p.beta) && std::abs(p.phi) < 1.0 && p.sigma2 > 0.0 &&
         std::isfinite(p.sigma2) && (!p.rho || std::abs(*p.rho) < 1.0);
}

double log_sum_exp(std::span<const double> v) {
  double m = kNegInf;
  for (double x : v) m = std::max(m, x);
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

// Per-component log of p~_k g(y*_t[, h_{t+1}] | h_t, ...), constants included.
void component_log_terms(std::size_t t, std::span<const double> h, const SvmParams& params,
                         const TransformedData& tdata, const MixtureGrid& grid,
                         std::span<double> out) {
  const std::size_t n = h.size();
  const double ht = h[t];
  const double resid0 = tdata.ystar[t] - ht;
  const bool joint = params.leverage() && t + 1 < n;
  double trans_mean_base = 0.0;
  double trans_var = 1.0;
  double rho_sigma = 0.0;
  if (joint) {
    const double rho = *params.rho;
    rho_sigma = rho * params.sigma();
    trans_mean_base = params.mu * (1.0 - params.phi) + params.phi * ht;
    trans_var = params.sigma2 * (1.0 - rho * rho);
  }
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const MixtureComponent& c = grid[k];
    if (c.weight == 0.0) {
      out[k] = kNegInf;
      continue;
    }
    const double e = resid0 - c.mean;
    double lt = c.log_weight - 0.5 * kLogTwoPi - std::log(c.sd) - 0.5 * e * e / c.variance;
    if (joint) {
      const double hbar = trans_mean_base +
                          rho_sigma * (tdata.d[t] * c.half_mean_exp * (c.a + c.b * e) - params.beta);
      const double r = h[t + 1] - hbar;
      lt += -0.5 * (kLogTwoPi + std::log(trans_var) + r * r / trans_var);
    }
    out[k] = lt;
  }
}

// log sum_k p~_k g_k at time t.
double log_mixture_term(std::size_t t, std::span<const double> h, const SvmParams& params,
                        const TransformedData& tdata, const MixtureGrid& grid,
                        std::span<double> scratch) {
  component_log_terms(t, h, params, tdata, grid, scratch);
  return log_sum_exp(scratch);
}

// log f(y_t[, h_{t+1}] | h_t, theta) under the exact model.
double log_exact_term(std::size_t t, std::span<const double> h, std::span<const double> y,
                      const SvmParams& params) {
  double lf = log_obs_density(y[t], h[t], params);
  if (params.leverage() && t + 1 < h.size()) {
    lf += log_state_transition(h[t + 1], h[t], y[t], params);
  }
  return lf;
}

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::gms: return "gms";
    case Algorithm::gmh: return "gmh";
    case Algorithm::svml: return "svml";
    case Algorithm::ordinate: return "ordinate";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "gms") return Algorithm::gms;
  if (name == "gmh") return Algorithm::gmh;
  if (name == "svml") return Algorithm::svml;
  if (name == "ordinate") return Algorithm::ordinate;
  throw ConfigError("unknown algorithm '" + std::string(name) +
                    "' (expected gms, gmh, svml or ordinate)");
}

void McmcConfig::validate(std::size_t n_obs) const {
  if (n_obs < 2) throw ConfigError("need at least 2 observations, got " + std::to_string(n_obs));
  if (n_draws == 0) throw ConfigError("n_draws must be positive");
  if (truncation < 0) throw ConfigError("truncation order J must be >= 0");
  if (!(offset > 0.0)) throw ConfigError("offset c must be positive");
  if (!(flat_proposal_scale > 0.0)) throw ConfigError("flat proposal scale c0 must be positive");
  const bool lev = has_leverage(model);
  if (lev && (algorithm == Algorithm::gms || algorithm == Algorithm::gmh)) {
    throw ConfigError("model '" + std::string(to_string(model)) + "' has leverage rho; algorithm '" +
                      std::string(to_string(algorithm)) +
                      "' does not sample rho (use svml or ordinate)");
  }
  if (!lev && algorithm == Algorithm::svml) {
    throw ConfigError("algorithm 'svml' requires a leverage model (svl or svml)");
  }
  for (std::size_t idx : h_indices) {
    if (idx < 1 || idx > n_obs) {
      throw ConfigError("h index " + std::to_string(idx) + " outside 1.." + std::to_string(n_obs));
    }
  }
  if (initial) {
    if (initial->leverage() != lev) {
      throw ConfigError("initial values: rho must be given exactly for leverage models");
    }
    try {
      initial->validate();
    } catch (const std::domain_error& e) {
      throw ConfigError(std::string("initial values: ") + e.what());
    }
  }
}

// ---- ParamTransform ----

ParamTransform::ParamTransform(bool include_beta, bool include_rho)
    : include_beta_(include_beta),
      include_rho_(include_rho),
      dim_(3 + (include_beta ? 1 : 0) + (include_rho ? 1 : 0)) {}

Eigen::VectorXd ParamTransform::to_unconstrained(const SvmParams& p) const {
  Eigen::VectorXd x(dim_);
  x[0] = p.mu;
  x[1] = std::log((1.0 + p.phi) / (1.0 - p.phi));
  x[2] = std::log(p.sigma2);
  Eigen::Index k = 3;
  if (include_beta_) x[k++] = p.beta;
  if (include_rho_) {
    const double r = p.rho_or_zero();
    x[k++] = std::log((1.0 + r) / (1.0 - r));
  }
  return x;
}

SvmParams ParamTransform::to_params(const Eigen::VectorXd& x, const SvmParams& fixed) const {
  SvmParams p = fixed;
  p.mu = x[0];
  p.phi = std::tanh(0.5 * x[1]);
  p.sigma2 = std::exp(x[2]);
  Eigen::Index k = 3;
  if (include_beta_) p.beta = x[k++];
  if (include_rho_) p.rho = std::tanh(0.5 * x[k++]);
  return p;
}

double ParamTransform::log_jacobian(const Eigen::VectorXd& x) const {
  // d phi / dx = (1 - phi^2) / 2, d sigma^2 / dx = sigma^2.
  double lj = log_one_minus_tanh_sq(0.5 * x[1]) - std::numbers::ln2 + x[2];
  if (include_rho_) lj += log_one_minus_tanh_sq(0.5 * x[dim_ - 1]) - std::numbers::ln2;
  return lj;
}

// ---- beta ----

BetaConditional beta_conditional(const SvmParams& params, std::span<const double> h,
                                 std::span<const double> y, const PriorSpec& priors) {
  const std::size_t n = h.size();
  if (y.size() != n || n == 0) throw std::invalid_argument("beta_conditional: size mismatch");
  const double rho = params.rho_or_zero();
  const double sigma = params.sigma();
  const double lev_prec = params.leverage() ? 1.0 / (1.0 - rho * rho) : 1.0;

  // X' Omega^{-1} X and X' Omega^{-1} y~ with X_t = exp(h_t/2).
  double xox = 0.0;
  double xoy = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const double inv_scale = std::exp(-0.5 * h[t]);
    double ytilde = y[t];
    double prec = 1.0;
    if (params.leverage() && t + 1 < n) {
      const double eta = h[t + 1] - params.mu - params.phi * (h[t] - params.mu);
      ytilde -= rho * std::exp(0.5 * h[t]) * eta / sigma;
      prec = lev_prec;
    }
    xox += prec;
    xoy += prec * ytilde * inv_scale;
  }
  const double post_prec = xox + 1.0 / priors.beta_var;
  const double var = 1.0 / post_prec;
  return {var * (xoy + priors.beta_mean / priors.beta_var), var};
}

double draw_beta(const SvmParams& params, std::span<const double> h, std::span<const double> y,
                 const PriorSpec& priors, Rng& rng) {
  const BetaConditional bc = beta_conditional(params, h, y, priors);
  return bc.mean + std::sqrt(bc.variance) * rng.normal();
}

// ---- indicators ----

void indicator_probabilities(std::size_t t, std::span<const double> h, const SvmParams& params,
                             const TransformedData& tdata, const MixtureGrid& grid,
                             std::span<double> out) {
  component_log_terms(t, h, params, tdata, grid, out);
  const double lse = log_sum_exp(out);
  if (!std::isfinite(lse)) {
    // Every component underflowed: fall back to the prior weights.
    for (std::size_t k = 0; k < grid.size(); ++k) out[k] = grid[k].weight;
    return;
  }
  for (double& v : out) v = std::exp(v - lse);
}

IndicatorPath draw_indicators(std::span<const double> h, const SvmParams& params,
                              const TransformedData& tdata, const MixtureGrid& grid, Rng& rng) {
  const std::size_t n = h.size();
  IndicatorPath s(n);
  std::vector<double> prob(grid.size());
  for (std::size_t t = 0; t < n; ++t) {
    indicator_probabilities(t, h, params, tdata, grid, prob);
    const double u = rng.uniform();
    double cum = 0.0;
    int chosen = -1;
    int last_positive = 0;
    for (std::size_t k = 0; k < prob.size(); ++k) {
      if (prob[k] <= 0.0) continue;
      last_positive = static_cast<int>(k);
      cum += prob[k];
      if (u < cum) {
        chosen = static_cast<int>(k);
        break;
      }
    }
    s[t] = chosen >= 0 ? chosen : last_positive;
  }
  return s;
}

void fill_ssm(SsmSpec& out, const SvmParams& params, const IndicatorPath& s,
              const TransformedData& tdata, const MixtureGrid& grid) {
  const std::size_t n = s.size();
  out.n = n;
  out.obs_mean.resize(n);
  out.obs_sd.resize(n);
  out.state_intercept.resize(n);
  out.state_obs_loading.resize(n);
  out.state_sd.resize(n);
  const double rho = params.rho_or_zero();
  const double sigma = params.sigma();
  const double rho_sigma = rho * sigma;
  const double base_intercept = params.mu * (1.0 - params.phi);
  const double state_sd = sigma * std::sqrt(1.0 - rho * rho);
  for (std::size_t t = 0; t < n; ++t) {
    const MixtureComponent& c = grid[static_cast<std::size_t>(s[t])];
    out.obs_mean[t] = c.mean;
    out.obs_sd[t] = c.sd;
    out.state_intercept[t] =
        base_intercept + rho_sigma * (tdata.d[t] * c.a * c.half_mean_exp - params.beta);
    out.state_obs_loading[t] = tdata.d[t] * rho_sigma * c.b * c.sd * c.half_mean_exp;
    out.state_sd[t] = state_sd;
  }
  out.state_ar = params.phi;
  out.init_mean = params.mu;
  out.init_var = params.sigma2 / (1.0 - params.phi * params.phi);
}

SsmSpec build_ssm(const SvmParams& params, const IndicatorPath& s, const TransformedData& tdata,
                  const MixtureGrid& grid) {
  SsmSpec spec;
  fill_ssm(spec, params, s, tdata, grid);
  return spec;
}

// ---- alpha ----

AlphaTarget::AlphaTarget(const ParamTransform& transform, const SvmParams& current,
                         const IndicatorPath& s, const TransformedData& tdata,
                         const MixtureGrid& grid, const PriorSpec& priors, ModelKind kind)
    : transform_(transform),
      fixed_(current),
      s_(s),
      tdata_(tdata),
      grid_(grid),
      priors_(priors),
      kind_(kind) {}

double AlphaTarget::operator()(const Eigen::VectorXd& x) const {
  if (!x.allFinite()) return kNegInf;
  const SvmParams p = transform_.to_params(x, fixed_);
  if (!in_support(p)) return kNegInf;
  fill_ssm(scratch_, p, s_, tdata_, grid_);
  double ll;
  try {
    ll = kalman_loglik(scratch_, tdata_.ystar);
  } catch (const NumericalError&) {
    return kNegInf;
  }
  const double v = ll + log_prior(p, priors_, kind_) + transform_.log_jacobian(x);
  return std::isfinite(v) ? v : kNegInf;
}

namespace {

MhStepResult independence_mh(const LogDensityFn& target, const ParamTransform& tr,
                             const SvmParams& current, double c0, Rng& rng,
                             const Eigen::VectorXd* warm_start,
                             std::optional<GaussianProposal>* keep_proposal = nullptr) {
  const Eigen::VectorXd x_cur = tr.to_unconstrained(current);
  const bool warm = warm_start && warm_start->size() == x_cur.size() && warm_start->allFinite();
  FittedProposal fitted = fit_laplace_proposal(target, warm ? *warm_start : x_cur, c0);
  if (fitted.kind == ProposalKind::random_walk && warm) {
    fitted.proposal = GaussianProposal(x_cur, c0 * Eigen::MatrixXd::Identity(x_cur.size(), x_cur.size()));
  }
  const Eigen::VectorXd x_prop = fitted.proposal.sample(rng);
  const double lt_cur = target(x_cur);
  const double lt_prop = target(x_prop);
  double lq_cur = 0.0;
  double lq_prop = 0.0;
  if (fitted.kind != ProposalKind::random_walk) {
    lq_cur = fitted.proposal.log_density(x_cur);
    lq_prop = fitted.proposal.log_density(x_prop);
  }
  if (keep_proposal) *keep_proposal = fitted.proposal;

  MhStepResult res;
  res.proposal_kind = fitted.kind;
  if (fitted.kind != ProposalKind::random_walk) res.mode = fitted.proposal.mean();
  res.log_acceptance = std::isfinite(lt_cur) ? log_mh_acceptance(lt_cur, lt_prop, lq_cur, lq_prop)
                                             : (std::isfinite(lt_prop) ? 0.0 : kNegInf);
  res.params = current;
  if (std::log(rng.uniform()) < res.log_acceptance) {
    res.params = tr.to_params(x_prop, current);
    res.accepted = true;
  }
  return res;
}

}  // namespace

MhStepResult draw_alpha(const SvmParams& current, const IndicatorPath& s, double beta,
                        const TransformedData& tdata, const MixtureGrid& grid,
                        const PriorSpec& priors, ModelKind kind, double c0, Rng& rng,
                        const Eigen::VectorXd* warm_start) {
  SvmParams cur = current;
  cur.beta = beta;
  const ParamTransform tr(false, cur.leverage());
  const AlphaTarget target(tr, cur, s, tdata, grid, priors, kind);
  return independence_mh(std::cref(target), tr, cur, c0, rng, warm_start);
}

// ---- correction ----

double correction_log_ratio(const SvmParams& current, std::span<const double> h,
                            const SvmParams& candidate, std::span<const double> h_cand,
                            std::span<const double> y, const TransformedData& tdata,
                            const MixtureGrid& grid) {
  const std::size_t n = h.size();
  if (h_cand.size() != n || y.size() != n || tdata.ystar.size() != n) {
    throw std::invalid_argument("correction_log_ratio: length mismatch");
  }
  std::vector<double> scratch(grid.size());
  double log_ratio = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    log_ratio += log_exact_term(t, h_cand, y, candidate) - log_exact_term(t, h, y, current);
    log_ratio += log_mixture_term(t, h, current, tdata, grid, scratch) -
                 log_mixture_term(t, h_cand, candidate, tdata, grid, scratch);
  }
  return log_ratio;
}

bool correction_mh(const SvmParams& current, std::span<const double> h,
                   const SvmParams& candidate, std::span<const double> h_cand,
                   std::span<const double> y, const TransformedData& tdata,
                   const MixtureGrid& grid, Rng& rng) {
  const double lr = correction_log_ratio(current, h, candidate, h_cand, y, tdata, grid);
  const double la = std::isnan(lr) ? kNegInf : std::min(0.0, lr);
  return std::log(rng.uniform()) < la;
}

// ---- theta | h ----

ThetaGivenHTarget::ThetaGivenHTarget(const ParamTransform& transform,
                                     const CompleteDataKernel& kernel, const PriorSpec& priors,
                                     ModelKind kind)
    : transform_(transform), kernel_(kernel), priors_(priors), kind_(kind) {}

double ThetaGivenHTarget::operator()(const Eigen::VectorXd& x) const {
  if (!x.allFinite()) return kNegInf;
  SvmParams fixed;
  fixed.beta = 0.0;
  if (transform_.includes_rho()) fixed.rho = 0.0;
  const SvmParams p = transform_.to_params(x, fixed);
  if (!in_support(p)) return kNegInf;
  const double v = kernel_.log_density(p) + log_prior(p, priors_, kind_) + transform_.log_jacobian(x);
  return std::isfinite(v) ? v : kNegInf;
}

// ---- chains ----

std::vector<std::string> parameter_names(ModelKind kind) {
  std::vector<std::string> names{"mu", "phi", "sigma2", "sigma"};
  if (has_beta(kind)) names.emplace_back("beta");
  if (has_leverage(kind)) names.emplace_back("rho");
  return names;
}

std::vector<double> ChainOutput::column(std::string_view name) const {
  const auto it = std::find(param_names.begin(), param_names.end(), name);
  if (it == param_names.end()) {
    throw std::out_of_range("chain has no parameter '" + std::string(name) + "'");
  }
  const std::size_t j = static_cast<std::size_t>(it - param_names.begin());
  std::vector<double> col(n_draws());
  for (std::size_t g = 0; g < col.size(); ++g) col[g] = theta_at(g, j);
  return col;
}

std::vector<double> ChainOutput::h_column(std::size_t k) const {
  const std::size_t m = h_indices.size();
  if (k >= m) throw std::out_of_range("h column out of range");
  const std::size_t rows = m == 0 ? 0 : h_draws.size() / m;
  std::vector<double> col(rows);
  for (std::size_t g = 0; g < rows; ++g) col[g] = h_draws[g * m + k];
  return col;
}

SvmParams ChainOutput::params_at(std::size_t draw) const {
  SvmParams p;
  p.mu = theta_at(draw, 0);
  p.phi = theta_at(draw, 1);
  p.sigma2 = theta_at(draw, 2);
  std::size_t j = 4;
  p.beta = has_beta(model) ? theta_at(draw, j++) : 0.0;
  if (has_leverage(model)) p.rho = theta_at(draw, j++);
  return p;
}

double ChainOutput::alpha_acceptance_rate() const {
  return alpha_proposals == 0 ? 0.0
                              : static_cast<double>(alpha_accepted) / static_cast<double>(alpha_proposals);
}

double ChainOutput::correction_acceptance_rate() const {
  return correction_proposals == 0 ? 0.0
                                   : static_cast<double>(correction_accepted) /
                                         static_cast<double>(correction_proposals);
}

ChainOutput run_chain(std::span<const double> y, const PriorSpec& priors, const McmcConfig& config,
                      Rng& rng) {
  config.validate(y.size());
  priors.validate();
  for (std::size_t t = 0; t < y.size(); ++t) {
    if (!std::isfinite(y[t])) {
      throw DataError("non-finite observation at row " + std::to_string(t + 1));
    }
  }
  const auto started = std::chrono::steady_clock::now();
  const std::size_t n = y.size();
  const ModelKind kind = config.model;
  const bool sample_beta = has_beta(kind);
  const bool leverage = has_leverage(kind);
  const TransformedData tdata = transform(y, config.offset);

  SvmParams params;
  if (config.initial) {
    params = *config.initial;
  } else {
    params.mu = mean_of(tdata.ystar) - kMeanLogChisq1;
    params.phi = 0.95;
    params.sigma2 = 0.05;
    params.beta = 0.0;
    if (leverage) params.rho = 0.0;
  }
  if (!sample_beta) params.beta = 0.0;
  LatentPath h(n, params.mu);

  ChainOutput out;
  out.model = kind;
  out.algorithm = config.algorithm;
  out.param_names = parameter_names(kind);
  out.h_indices = config.h_indices;
  out.h_path_thin = config.h_path_thin;
  out.seed = rng.seed();
  out.stream = rng.stream();
  out.theta.reserve(config.n_draws * out.param_names.size());
  out.h_draws.reserve(config.n_draws * out.h_indices.size());

  MixtureGrid grid = build_grid(params.beta, config.truncation);
  const bool correct = config.algorithm == Algorithm::gmh ||
                       (config.algorithm == Algorithm::svml && config.leverage_correction) ||
                       config.algorithm == Algorithm::ordinate;
  const ParamTransform theta_transform(sample_beta, leverage);
  // Mode of the previous MH target; starts the next mode search.
  Eigen::VectorXd warm_mode;

  const std::size_t total = config.n_burnin + config.n_draws;
  for (std::size_t iter = 0; iter < total; ++iter) {
    if (config.algorithm == Algorithm::ordinate) {
      // theta | h in one block, then (s, h) with the correction step.
      {
        const CompleteDataKernel kernel(y, h);
        const ThetaGivenHTarget target(theta_transform, kernel, priors, kind);
        std::optional<GaussianProposal> proposal;
        const MhStepResult step =
            independence_mh(std::cref(target), theta_transform, params, config.flat_proposal_scale,
                            rng, warm_mode.size() ? &warm_mode : nullptr,
                            iter + 1 == total ? &proposal : nullptr);
        warm_mode = step.mode;
        ++out.alpha_proposals;
        if (step.accepted) ++out.alpha_accepted;
        if (step.proposal_kind != ProposalKind::laplace) ++out.flat_proposals;
        params = step.params;
        if (proposal) out.final_theta_proposal = std::move(proposal);
      }
      if (sample_beta) grid = build_grid(params.beta, config.truncation);
      const IndicatorPath s = draw_indicators(h, params, tdata, grid, rng);
      const SsmSpec spec = build_ssm(params, s, tdata, grid);
      LatentPath h_cand = simulation_smoother(spec, tdata.ystar, rng);
      ++out.correction_proposals;
      if (correction_mh(params, h, params, h_cand, y, tdata, grid, rng)) {
        ++out.correction_accepted;
        h = std::move(h_cand);
      }
    } else {
      if (sample_beta) {
        params.beta = draw_beta(params, h, y, priors, rng);
        grid = build_grid(params.beta, config.truncation);
      }
      const IndicatorPath s = draw_indicators(h, params, tdata, grid, rng);
      const MhStepResult step =
          draw_alpha(params, s, params.beta, tdata, grid, priors, kind, config.flat_proposal_scale,
                     rng, warm_mode.size() ? &warm_mode : nullptr);
      warm_mode = step.mode;
      ++out.alpha_proposals;
      if (step.accepted) ++out.alpha_accepted;
      if (step.proposal_kind != ProposalKind::laplace) ++out.flat_proposals;
      const SsmSpec spec = build_ssm(step.params, s, tdata, grid);
      LatentPath h_cand = simulation_smoother(spec, tdata.ystar, rng);
      if (correct) {
        ++out.correction_proposals;
        if (correction_mh(params, h, step.params, h_cand, y, tdata, grid, rng)) {
          ++out.correction_accepted;
          params = step.params;
          h = std::move(h_cand);
        }
      } else {
        params = step.params;
        h = std::move(h_cand);
      }
    }

    if (iter >= config.n_burnin) {
      const std::size_t draw = iter - config.n_burnin;
      out.theta.push_back(params.mu);
      out.theta.push_back(params.phi);
      out.theta.push_back(params.sigma2);
      out.theta.push_back(params.sigma());
      if (sample_beta) out.theta.push_back(params.beta);
      if (leverage) out.theta.push_back(*params.rho);
      for (std::size_t idx : out.h_indices) out.h_draws.push_back(h[idx - 1]);
      if (config.h_path_thin > 0 && draw % config.h_path_thin == 0) out.h_paths.push_back(h);
    }
  }
  out.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return out;
}

std::vector<ChainOutput> run_chains(std::span<const double> y, const PriorSpec& priors,
                                    const McmcConfig& config, std::size_t k, const Rng& rng) {
  if (k == 0) throw ConfigError("number of chains must be positive");
  config.validate(y.size());
  std::vector<std::future<ChainOutput>> futures;
  futures.reserve(k);
  for (std::size_t c = 0; c < k; ++c) {
    futures.push_back(std::async(std::launch::async, [&, c] {
      Rng chain_rng = rng.split(c);
      return run_chain(y, priors, config, chain_rng);
    }));
  }
  std::vector<ChainOutput> out;
  out.reserve(k);
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

}  // namespace svmix
