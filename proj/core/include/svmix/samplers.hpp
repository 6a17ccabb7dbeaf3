#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "svmix/laplace.hpp"
#include "svmix/mixture.hpp"
#include "svmix/model.hpp"
#include "svmix/state_space.hpp"

namespace svmix {

class Rng;

// GMS: mixture sampler without correction.
// GMH: GMS plus the exact-correction MH step on (alpha, h).
// SVML: leverage sampler, correction step optional.
// ORDINATE: one-block theta | h MH, then (s, h) with correction.
enum class Algorithm { gms, gmh, svml, ordinate };

std::string_view to_string(Algorithm a);
// Throws ConfigError on an unknown name.
Algorithm parse_algorithm(std::string_view name);

// Mixture component per time step, as a flat grid index
// k = row * (J + 1) + order.
using IndicatorPath = std::vector<int>;

struct McmcConfig {
  ModelKind model = ModelKind::svm;
  Algorithm algorithm = Algorithm::gms;
  std::size_t n_burnin = 10000;
  std::size_t n_draws = 50000;
  int truncation = kDefaultTruncation;
  double offset = kDefaultOffset;
  std::uint64_t seed = 1;
  double flat_proposal_scale = 1.0;  // c0
  bool leverage_correction = true;   // correction step of the svml sampler
  std::vector<std::size_t> h_indices;  // 1-based time indices stored every draw
  std::size_t h_path_thin = 0;         // keep full h every k-th draw; 0 = never
  std::optional<SvmParams> initial;

  // Throws ConfigError on invalid counts or an incompatible model/algorithm pair.
  void validate(std::size_t n_obs) const;
};

// Change of variables between theta and the unconstrained MH coordinates
// (mu, log((1+phi)/(1-phi)), log sigma^2[, beta][, log((1+rho)/(1-rho))]).
class ParamTransform {
 public:
  ParamTransform(bool include_beta, bool include_rho);

  Eigen::Index dim() const { return dim_; }
  bool includes_beta() const { return include_beta_; }
  bool includes_rho() const { return include_rho_; }

  Eigen::VectorXd to_unconstrained(const SvmParams& params) const;
  // Coordinates not carried by the transform (beta when excluded) are taken
  // from `fixed`.
  SvmParams to_params(const Eigen::VectorXd& x, const SvmParams& fixed) const;
  // log |d theta / d x|.
  double log_jacobian(const Eigen::VectorXd& x) const;

 private:
  bool include_beta_;
  bool include_rho_;
  Eigen::Index dim_;
};

// ---- beta block ----

struct BetaConditional {
  double mean;      // b_1
  double variance;  // B_1
};

// Normal full conditional of beta given (alpha, h, y). With leverage y is
// replaced by y~ and the first n-1 precisions are scaled by 1/(1 - rho^2).
BetaConditional beta_conditional(const SvmParams& params, std::span<const double> h,
                                 std::span<const double> y, const PriorSpec& priors);
double draw_beta(const SvmParams& params, std::span<const double> h, std::span<const double> y,
                 const PriorSpec& priors, Rng& rng);

// ---- indicator block ----

// Normalized probabilities over grid components at time t (0-based).
void indicator_probabilities(std::size_t t, std::span<const double> h, const SvmParams& params,
                             const TransformedData& tdata, const MixtureGrid& grid,
                             std::span<double> out);
IndicatorPath draw_indicators(std::span<const double> h, const SvmParams& params,
                              const TransformedData& tdata, const MixtureGrid& grid, Rng& rng);

// Linear Gaussian approximation given indicators s. Leverage enters through
// params.rho.
SsmSpec build_ssm(const SvmParams& params, const IndicatorPath& s, const TransformedData& tdata,
                  const MixtureGrid& grid);
void fill_ssm(SsmSpec& out, const SvmParams& params, const IndicatorPath& s,
              const TransformedData& tdata, const MixtureGrid& grid);

// ---- alpha block ----

// log pi*(x | s, beta, y*) = log m(y* | alpha, s, beta) + log pi(alpha)
// + log |Jacobian| on the unconstrained scale; -inf outside the support.
class AlphaTarget {
 public:
  AlphaTarget(const ParamTransform& transform, const SvmParams& current, const IndicatorPath& s,
              const TransformedData& tdata, const MixtureGrid& grid, const PriorSpec& priors,
              ModelKind kind);
  double operator()(const Eigen::VectorXd& x) const;

 private:
  const ParamTransform& transform_;
  SvmParams fixed_;
  const IndicatorPath& s_;
  const TransformedData& tdata_;
  const MixtureGrid& grid_;
  const PriorSpec& priors_;
  ModelKind kind_;
  mutable SsmSpec scratch_;
};

struct MhStepResult {
  SvmParams params;
  bool accepted = false;
  ProposalKind proposal_kind = ProposalKind::laplace;
  double log_acceptance = 0.0;
  Eigen::VectorXd mode;  // located mode; empty after a failed search
};

// One independence-MH update of alpha targeting pi*(alpha | s, beta, y*).
// The mode search starts at warm_start when given, else at current.
MhStepResult draw_alpha(const SvmParams& current, const IndicatorPath& s, double beta,
                        const TransformedData& tdata, const MixtureGrid& grid,
                        const PriorSpec& priors, ModelKind kind, double c0, Rng& rng,
                        const Eigen::VectorXd* warm_start = nullptr);

// ---- correction step ----

// log of the exact-correction acceptance ratio for replacing (current, h) by
// (candidate, h_cand). Both share beta and the grid built for it.
double correction_log_ratio(const SvmParams& current, std::span<const double> h,
                            const SvmParams& candidate, std::span<const double> h_cand,
                            std::span<const double> y, const TransformedData& tdata,
                            const MixtureGrid& grid);

bool correction_mh(const SvmParams& current, std::span<const double> h,
                   const SvmParams& candidate, std::span<const double> h_cand,
                   std::span<const double> y, const TransformedData& tdata,
                   const MixtureGrid& grid, Rng& rng);

// ---- theta | h block (ORDINATE) ----

// log pi(x | h, y) on the unconstrained scale: complete-data likelihood,
// prior and Jacobian.
class ThetaGivenHTarget {
 public:
  ThetaGivenHTarget(const ParamTransform& transform, const CompleteDataKernel& kernel,
                    const PriorSpec& priors, ModelKind kind);
  double operator()(const Eigen::VectorXd& x) const;

 private:
  const ParamTransform& transform_;
  const CompleteDataKernel& kernel_;
  const PriorSpec& priors_;
  ModelKind kind_;
};

// ---- chains ----

struct ChainOutput {
  ModelKind model = ModelKind::svm;
  Algorithm algorithm = Algorithm::gms;
  std::vector<std::string> param_names;
  std::vector<double> theta;  // row-major n_draws x param_names.size()
  std::vector<std::size_t> h_indices;
  std::vector<double> h_draws;  // row-major n_draws x h_indices.size()
  std::size_t h_path_thin = 0;
  std::vector<LatentPath> h_paths;

  std::size_t alpha_proposals = 0;
  std::size_t alpha_accepted = 0;
  std::size_t correction_proposals = 0;
  std::size_t correction_accepted = 0;
  std::size_t flat_proposals = 0;

  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  double elapsed_seconds = 0.0;

  // Laplace proposal of the last theta | h update (ORDINATE only).
  std::optional<GaussianProposal> final_theta_proposal;

  std::size_t n_draws() const { return param_names.empty() ? 0 : theta.size() / param_names.size(); }
  std::size_t n_params() const { return param_names.size(); }
  double theta_at(std::size_t draw, std::size_t param) const {
    return theta[draw * param_names.size() + param];
  }
  std::vector<double> column(std::string_view name) const;
  std::vector<double> h_column(std::size_t k) const;
  SvmParams params_at(std::size_t draw) const;
  double alpha_acceptance_rate() const;
  double correction_acceptance_rate() const;
};

std::vector<std::string> parameter_names(ModelKind kind);

ChainOutput run_chain(std::span<const double> y, const PriorSpec& priors, const McmcConfig& config,
                      Rng& rng);

// k independent chains on split streams of `rng`, run concurrently.
std::vector<ChainOutput> run_chains(std::span<const double> y, const PriorSpec& priors,
                                    const McmcConfig& config, std::size_t k, const Rng& rng);

}  // namespace svmix
