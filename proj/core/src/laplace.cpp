#include "svmix/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "svmix/rng.hpp"

namespace svmix {

GaussianProposal::GaussianProposal(Eigen::VectorXd mean, Eigen::MatrixXd cov)
    : mean_(std::move(mean)), cov_(std::move(cov)) {
  if (cov_.rows() != mean_.size() || cov_.cols() != mean_.size()) {
    throw std::invalid_argument("GaussianProposal: dimension mismatch");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(cov_);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("GaussianProposal: covariance not positive definite");
  }
  chol_lower_ = llt.matrixL();
  const double log_det = 2.0 * chol_lower_.diagonal().array().log().sum();
  log_norm_ = -0.5 * (static_cast<double>(mean_.size()) * std::log(2.0 * std::numbers::pi) + log_det);
}

double GaussianProposal::log_density(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd z =
      chol_lower_.triangularView<Eigen::Lower>().solve(x - mean_);
  return log_norm_ - 0.5 * z.squaredNorm();
}

Eigen::VectorXd GaussianProposal::sample(Rng& rng) const {
  Eigen::VectorXd z(mean_.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = rng.normal();
  return mean_ + chol_lower_ * z;
}

void finite_difference_derivatives(const LogDensityFn& f, const Eigen::VectorXd& x, double f_x,
                                   double relative_step, Eigen::VectorXd& gradient,
                                   Eigen::MatrixXd& hessian) {
  const Eigen::Index d = x.size();
  gradient.resize(d);
  hessian.resize(d, d);
  Eigen::VectorXd step(d);
  for (Eigen::Index i = 0; i < d; ++i) step[i] = relative_step * std::max(1.0, std::abs(x[i]));

  Eigen::VectorXd plus(d), minus(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    Eigen::VectorXd xp = x, xm = x;
    xp[i] += step[i];
    xm[i] -= step[i];
    plus[i] = f(xp);
    minus[i] = f(xm);
    gradient[i] = (plus[i] - minus[i]) / (2.0 * step[i]);
    hessian(i, i) = (plus[i] - 2.0 * f_x + minus[i]) / (step[i] * step[i]);
  }
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j) {
      Eigen::VectorXd xpp = x, xpm = x, xmp = x, xmm = x;
      xpp[i] += step[i]; xpp[j] += step[j];
      xpm[i] += step[i]; xpm[j] -= step[j];
      xmp[i] -= step[i]; xmp[j] += step[j];
      xmm[i] -= step[i]; xmm[j] -= step[j];
      const double h = (f(xpp) - f(xpm) - f(xmp) + f(xmm)) / (4.0 * step[i] * step[j]);
      hessian(i, j) = h;
      hessian(j, i) = h;
    }
  }
}

namespace {

bool all_finite(const Eigen::VectorXd& v) { return v.allFinite(); }

FittedProposal flat_at(const Eigen::VectorXd& center, double c0, ProposalKind kind, int iterations) {
  const Eigen::Index d = center.size();
  return {GaussianProposal(center, c0 * Eigen::MatrixXd::Identity(d, d)), kind, iterations};
}

}  // namespace

FittedProposal fit_laplace_proposal(const LogDensityFn& log_target, const Eigen::VectorXd& start,
                                    double c0, const ModeSearchOptions& options) {
  if (!(c0 > 0.0)) throw std::invalid_argument("fit_laplace_proposal: c0 must be positive");
  Eigen::VectorXd x = start;
  double fx = log_target(x);
  if (!std::isfinite(fx)) return flat_at(start, c0, ProposalKind::random_walk, 0);

  const Eigen::Index d = x.size();
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
  int iter = 0;
  bool converged = false;
  bool hess_at_x = false;
  for (; iter < options.max_iterations; ++iter) {
    finite_difference_derivatives(log_target, x, fx, options.fd_relative_step, grad, hess);
    if (!all_finite(grad) || !hess.allFinite()) break;
    if (grad.lpNorm<Eigen::Infinity>() < options.gradient_tolerance) {
      converged = true;
      hess_at_x = true;
      break;
    }

    // Levenberg-damped Newton direction: solve (-H + lambda I) dx = g.
    Eigen::VectorXd direction;
    double damping = 0.0;
    const double scale = std::max(1.0, hess.diagonal().cwiseAbs().maxCoeff());
    for (int attempt = 0; attempt < 30; ++attempt) {
      const Eigen::MatrixXd m = -hess + damping * Eigen::MatrixXd::Identity(d, d);
      Eigen::LLT<Eigen::MatrixXd> llt(m);
      if (llt.info() == Eigen::Success) {
        direction = llt.solve(grad);
        break;
      }
      damping = damping == 0.0 ? 1e-6 * scale : damping * 10.0;
    }
    if (direction.size() != d || !all_finite(direction)) break;

    double t = 1.0;
    double f_new = log_target(x + direction);
    while (!(std::isfinite(f_new) && f_new >= fx) && t > 1e-6) {
      t *= 0.5;
      f_new = log_target(x + t * direction);
    }
    if (!(std::isfinite(f_new) && f_new >= fx)) {
      converged = true;  // no ascent direction left at working precision
      break;
    }
    const double moved = t * direction.lpNorm<Eigen::Infinity>();
    x += t * direction;
    fx = f_new;
    if (moved < options.step_tolerance) {
      converged = true;
      break;
    }
  }
  if (!converged) return flat_at(start, c0, ProposalKind::random_walk, iter);

  if (!hess_at_x) {
    finite_difference_derivatives(log_target, x, fx, options.fd_relative_step, grad, hess);
  }
  if (hess.allFinite()) {
    Eigen::LLT<Eigen::MatrixXd> llt(-hess);
    if (llt.info() == Eigen::Success) {
      Eigen::MatrixXd cov = llt.solve(Eigen::MatrixXd::Identity(d, d));
      cov = 0.5 * (cov + cov.transpose());
      try {
        return {GaussianProposal(x, cov), ProposalKind::laplace, iter};
      } catch (const std::invalid_argument&) {
        // fall through to the flat proposal
      }
    }
  }
  return flat_at(x, c0, ProposalKind::flat, iter);
}

double log_mh_acceptance(double log_target_cur, double log_target_prop, double log_q_cur,
                         double log_q_prop) {
  if (!std::isfinite(log_target_prop)) return -std::numeric_limits<double>::infinity();
  const double r = (log_target_prop - log_target_cur) + (log_q_cur - log_q_prop);
  return std::min(0.0, r);
}

}  // namespace svmix
