#pragma once

#include <functional>

#include <Eigen/Dense>

namespace svmix {

class Rng;

using LogDensityFn = std::function<double(const Eigen::VectorXd&)>;

// Multivariate normal N(mean, cov) used as an MH proposal.
class GaussianProposal {
 public:
  GaussianProposal() = default;
  // Throws std::invalid_argument if cov is not symmetric positive definite.
  GaussianProposal(Eigen::VectorXd mean, Eigen::MatrixXd cov);

  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::MatrixXd& cov() const { return cov_; }
  Eigen::Index dim() const { return mean_.size(); }

  double log_density(const Eigen::VectorXd& x) const;
  Eigen::VectorXd sample(Rng& rng) const;

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd cov_;
  Eigen::MatrixXd chol_lower_;
  double log_norm_ = 0.0;
};

enum class ProposalKind {
  laplace,      // N(mode, -H^{-1}) at the located mode
  flat,         // N(mode, c0 I): Hessian at the mode not negative definite
  random_walk,  // N(current, c0 I): mode search failed
};

struct FittedProposal {
  GaussianProposal proposal;
  ProposalKind kind = ProposalKind::laplace;
  int iterations = 0;
};

struct ModeSearchOptions {
  int max_iterations = 50;
  double step_tolerance = 1e-6;
  double gradient_tolerance = 1e-6;
  double fd_relative_step = 1e-4;
};

// Central finite-difference gradient and Hessian.
void finite_difference_derivatives(const LogDensityFn& f, const Eigen::VectorXd& x, double f_x,
                                   double relative_step, Eigen::VectorXd& gradient,
                                   Eigen::MatrixXd& hessian);

// Locates the mode of log_target by damped Newton ascent with
// finite-difference derivatives started at `start`, and returns the
// Laplace proposal there. Falls back to N(mode, c0 I) when the Hessian at the
// mode is not negative definite and to N(start, c0 I) when the search fails
// to produce a finite target.
FittedProposal fit_laplace_proposal(const LogDensityFn& log_target, const Eigen::VectorXd& start,
                                    double c0, const ModeSearchOptions& options = {});

// log of the MH acceptance probability min{1, ratio} for a move cur -> prop.
double log_mh_acceptance(double log_target_cur, double log_target_prop, double log_q_cur,
                         double log_q_prop);

}  // namespace svmix
