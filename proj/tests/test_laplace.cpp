#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "svmix/laplace.hpp"
#include "svmix/rng.hpp"

using namespace svmix;

namespace {

Eigen::MatrixXd spd3() {
  Eigen::MatrixXd s(3, 3);
  s << 2.0, 0.3, -0.4,
       0.3, 0.5, 0.1,
      -0.4, 0.1, 1.2;
  return s;
}

}  // namespace

TEST(Laplace, GaussianTargetIsRecoveredExactly) {
  Eigen::VectorXd m(3);
  m << 1.5, -0.7, 3.0;
  const Eigen::MatrixXd cov = spd3();
  const Eigen::MatrixXd prec = cov.inverse();
  LogDensityFn f = [&](const Eigen::VectorXd& x) {
    const Eigen::VectorXd d = x - m;
    return -0.5 * d.dot(prec * d);
  };
  const FittedProposal fp = fit_laplace_proposal(f, Eigen::VectorXd::Zero(3), 1.0);
  EXPECT_EQ(fp.kind, ProposalKind::laplace);
  EXPECT_LT((fp.proposal.mean() - m).cwiseAbs().maxCoeff(), 1e-6);
  EXPECT_LT((fp.proposal.cov() - cov).cwiseAbs().maxCoeff(), 1e-5);
}

TEST(Laplace, SmoothNonGaussianTarget) {
  // log-gamma-like target in x = log s: a x - b e^x, mode at log(a/b),
  // second derivative -a there
  const double a = 4.0, b = 2.0;
  LogDensityFn f = [&](const Eigen::VectorXd& x) { return a * x[0] - b * std::exp(x[0]); };
  const FittedProposal fp = fit_laplace_proposal(f, Eigen::VectorXd::Constant(1, -2.0), 1.0);
  EXPECT_EQ(fp.kind, ProposalKind::laplace);
  EXPECT_NEAR(fp.proposal.mean()[0], std::log(a / b), 1e-6);
  EXPECT_NEAR(fp.proposal.cov()(0, 0), 1.0 / a, 1e-5);
}

TEST(Laplace, NonConcaveModeFallsBackToFlat) {
  // flat along the second coordinate, so the Hessian is singular
  LogDensityFn f = [](const Eigen::VectorXd& x) { return -0.5 * x[0] * x[0]; };
  const FittedProposal fp = fit_laplace_proposal(f, Eigen::VectorXd::Constant(2, 0.3), 0.7);
  EXPECT_EQ(fp.kind, ProposalKind::flat);
  EXPECT_NEAR(fp.proposal.cov()(0, 0), 0.7, 1e-12);
  EXPECT_NEAR(fp.proposal.cov()(1, 1), 0.7, 1e-12);
  EXPECT_NEAR(fp.proposal.cov()(0, 1), 0.0, 1e-12);
}

TEST(Laplace, NonFiniteStartGivesRandomWalk) {
  LogDensityFn f = [](const Eigen::VectorXd&) { return -std::numeric_limits<double>::infinity(); };
  Eigen::VectorXd start(2);
  start << 0.4, -1.0;
  const FittedProposal fp = fit_laplace_proposal(f, start, 0.25);
  EXPECT_EQ(fp.kind, ProposalKind::random_walk);
  EXPECT_EQ(fp.proposal.mean(), start);
  EXPECT_NEAR(fp.proposal.cov()(1, 1), 0.25, 1e-15);
}

TEST(Laplace, ProposalDensityAndSampling) {
  Eigen::VectorXd m(3);
  m << 0.2, 0.0, -1.0;
  const GaussianProposal q(m, spd3());
  // density at the mean: -(d/2) log 2pi - 0.5 log det
  const double expect = -1.5 * std::log(2.0 * M_PI) - 0.5 * std::log(spd3().determinant());
  EXPECT_NEAR(q.log_density(m), expect, 1e-12);

  Rng rng(11);
  const int n = 100000;
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(3);
  Eigen::MatrixXd sq = Eigen::MatrixXd::Zero(3, 3);
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd x = q.sample(rng) - m;
    sum += x;
    sq += x * x.transpose();
  }
  const Eigen::VectorXd mean = sum / n;
  const Eigen::MatrixXd cov = sq / n - mean * mean.transpose();
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(mean[i], 0.0, 4.0 * std::sqrt(spd3()(i, i) / n));
  }
  EXPECT_LT((cov - spd3()).cwiseAbs().maxCoeff(), 0.03);
}

TEST(Laplace, RejectsIndefiniteCovariance) {
  Eigen::MatrixXd bad(2, 2);
  bad << 1.0, 2.0, 2.0, 1.0;
  EXPECT_THROW(GaussianProposal(Eigen::VectorXd::Zero(2), bad), std::invalid_argument);
}

TEST(Laplace, MhAcceptance) {
  // target ratio 2, proposal ratio 1 -> accept surely
  EXPECT_DOUBLE_EQ(log_mh_acceptance(0.0, std::log(2.0), 0.0, 0.0), 0.0);
  // pi(prop) q(cur) / (pi(cur) q(prop)) = e^{-1} e^{0.5} / (1 e^{0})
  EXPECT_NEAR(log_mh_acceptance(0.0, -1.0, 0.5, 0.0), -0.5, 1e-15);
  EXPECT_TRUE(std::isinf(log_mh_acceptance(0.0, -std::numeric_limits<double>::infinity(), 0.0, 0.0)));
}
