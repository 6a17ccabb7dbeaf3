#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/special_functions/digamma.hpp>

namespace svmix::oracle {

double cosh_log_chisq1_density(double u, double lambda) {
  const double x = std::exp(u);
  return std::sqrt(x / (2.0 * std::numbers::pi)) * std::exp(-0.5 * (x + lambda)) *
         std::cosh(std::sqrt(lambda * x));
}

double expected_log_chisq1_series(double lambda) {
  const double half = 0.5 * lambda;
  double sum = 0.0;
  double pois = std::exp(-half);
  for (int j = 0; j < 400; ++j) {
    sum += pois * boost::math::digamma(0.5 + j);
    pois *= half / (j + 1.0);
    if (j > half && pois < 1e-18) break;
  }
  return std::numbers::ln2 + sum;
}

JointNormal joint_normal(const SsmSpec& spec) {
  const Eigen::Index n = static_cast<Eigen::Index>(spec.n);
  // shocks: e0, z1_1..z1_n, z2_1..z2_{n-1}
  const Eigen::Index k = 1 + n + (n - 1);
  Eigen::MatrixXd load_h = Eigen::MatrixXd::Zero(n, k);
  Eigen::VectorXd mean_h(n);
  mean_h[0] = spec.init_mean;
  load_h(0, 0) = std::sqrt(spec.init_var);
  for (Eigen::Index t = 0; t + 1 < n; ++t) {
    const std::size_t ts = static_cast<std::size_t>(t);
    mean_h[t + 1] = spec.state_intercept[ts] + spec.state_ar * mean_h[t];
    load_h.row(t + 1) = spec.state_ar * load_h.row(t);
    load_h(t + 1, 1 + t) += spec.state_obs_loading[ts];
    load_h(t + 1, 1 + n + t) += spec.state_sd[ts];
  }
  Eigen::MatrixXd load_y = load_h;
  Eigen::VectorXd mean_y = mean_h;
  for (Eigen::Index t = 0; t < n; ++t) {
    const std::size_t ts = static_cast<std::size_t>(t);
    mean_y[t] += spec.obs_mean[ts];
    load_y(t, 1 + t) += spec.obs_sd[ts];
  }
  Eigen::MatrixXd load(2 * n, k);
  load << load_h, load_y;
  JointNormal j;
  j.mean.resize(2 * n);
  j.mean << mean_h, mean_y;
  j.cov = load * load.transpose();
  return j;
}

double joint_loglik(const SsmSpec& spec, std::span<const double> ystar) {
  const JointNormal j = joint_normal(spec);
  const Eigen::Index n = static_cast<Eigen::Index>(spec.n);
  const Eigen::MatrixXd s = j.cov.bottomRightCorner(n, n);
  Eigen::VectorXd r(n);
  for (Eigen::Index t = 0; t < n; ++t) r[t] = ystar[static_cast<std::size_t>(t)] - j.mean[n + t];
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(s);
  const double logdet = ldlt.vectorD().array().log().sum();
  return -0.5 * (static_cast<double>(n) * std::log(2.0 * std::numbers::pi) + logdet +
                 r.dot(ldlt.solve(r)));
}

SmoothedMoments conditional_moments(const SsmSpec& spec, std::span<const double> ystar) {
  const JointNormal j = joint_normal(spec);
  const Eigen::Index n = static_cast<Eigen::Index>(spec.n);
  const Eigen::MatrixXd shh = j.cov.topLeftCorner(n, n);
  const Eigen::MatrixXd shy = j.cov.topRightCorner(n, n);
  const Eigen::MatrixXd syy = j.cov.bottomRightCorner(n, n);
  Eigen::VectorXd r(n);
  for (Eigen::Index t = 0; t < n; ++t) r[t] = ystar[static_cast<std::size_t>(t)] - j.mean[n + t];
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(syy);
  const Eigen::VectorXd m = j.mean.head(n) + shy * ldlt.solve(r);
  const Eigen::MatrixXd v = shh - shy * ldlt.solve(shy.transpose());
  SmoothedMoments out;
  out.mean.assign(m.data(), m.data() + n);
  out.variance.resize(spec.n);
  for (Eigen::Index t = 0; t < n; ++t) out.variance[static_cast<std::size_t>(t)] = v(t, t);
  return out;
}

BetaConditional gls_beta(const SvmParams& params, std::span<const double> h,
                         std::span<const double> y, const PriorSpec& priors) {
  const Eigen::Index n = static_cast<Eigen::Index>(h.size());
  Eigen::VectorXd x(n), yt(n);
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(n, n);
  const double rho = params.rho_or_zero();
  for (Eigen::Index t = 0; t < n; ++t) {
    const std::size_t ts = static_cast<std::size_t>(t);
    x[t] = std::exp(0.5 * h[ts]);
    yt[t] = y[ts];
    omega(t, t) = std::exp(h[ts]);
    if (params.leverage() && t + 1 < n) {
      const double eta = (h[ts + 1] - params.mu - params.phi * (h[ts] - params.mu)) / params.sigma();
      yt[t] -= rho * x[t] * eta;
      omega(t, t) *= 1.0 - rho * rho;
    }
  }
  const Eigen::MatrixXd oinv = omega.inverse();
  const double prec = x.dot(oinv * x) + 1.0 / priors.beta_var;
  const double var = 1.0 / prec;
  return {var * (x.dot(oinv * yt) + priors.beta_mean / priors.beta_var), var};
}

double grid_loglik(std::span<const double> y, const SvmParams& params, int points) {
  const double sd0 = params.sigma() / std::sqrt(1.0 - params.phi * params.phi);
  const double lo = params.mu - 12.0 * sd0;
  const double hi = params.mu + 12.0 * sd0;
  const int m = points % 2 == 1 ? points : points + 1;
  const double dx = (hi - lo) / (m - 1);
  std::vector<double> grid(m), wts(m);
  for (int i = 0; i < m; ++i) {
    grid[i] = lo + dx * i;
    wts[i] = dx / 3.0 * ((i == 0 || i == m - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0));
  }
  auto npdf = [](double x, double mean, double sd) {
    const double z = (x - mean) / sd;
    return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi));
  };
  auto obs = [&](double yy, double h) { return npdf(yy, params.beta * std::exp(0.5 * h), std::exp(0.5 * h)); };

  // p(h_t, y_1..t) on the grid, rescaled each step.
  std::vector<double> f(m), next(m);
  for (int i = 0; i < m; ++i) f[i] = npdf(grid[i], params.mu, sd0) * obs(y[0], grid[i]);
  double loglik = 0.0;
  auto rescale = [&](std::vector<double>& v) {
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += wts[i] * v[i];
    for (double& e : v) e /= s;
    return std::log(s);
  };
  loglik += rescale(f);
  for (std::size_t t = 1; t < y.size(); ++t) {
    for (int j = 0; j < m; ++j) {
      double acc = 0.0;
      for (int i = 0; i < m; ++i) {
        acc += wts[i] * f[i] *
               npdf(grid[j], params.mu + params.phi * (grid[i] - params.mu), params.sigma());
      }
      next[j] = acc * obs(y[t], grid[j]);
    }
    f.swap(next);
    loglik += rescale(f);
  }
  return loglik;
}

SsmSpec random_spec(std::size_t n, bool leverage, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SsmSpec s;
  s.n = n;
  s.state_ar = 0.95 * u(gen);
  s.init_mean = u(gen);
  s.init_var = 0.2 + std::abs(u(gen));
  for (std::size_t t = 0; t < n; ++t) {
    s.obs_mean.push_back(2.0 * u(gen));
    s.obs_sd.push_back(0.3 + std::abs(u(gen)));
    s.state_intercept.push_back(0.5 * u(gen));
    s.state_obs_loading.push_back(leverage ? 0.4 * u(gen) : 0.0);
    s.state_sd.push_back(0.1 + 0.5 * std::abs(u(gen)));
  }
  return s;
}

}  // namespace svmix::oracle
