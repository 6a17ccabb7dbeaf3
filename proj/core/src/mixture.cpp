#include "svmix/mixture.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "svmix/errors.hpp"
#include "svmix/rng.hpp"

namespace svmix {

namespace {

constexpr int kMaxSeriesTerms = 200;

const double kLogSqrtTwoPi = 0.5 * std::log(2.0 * std::numbers::pi);
const double kLogGammaHalf = 0.5 * std::log(std::numbers::pi);

}  // namespace

const MixtureTable& base_mixture_table() {
  static const MixtureTable table{{{
      {0.00609, 1.92677, 0.11265, 1.01418, 0.50710},
      {0.04775, 1.34744, 0.17788, 1.02248, 0.51124},
      {0.13057, 0.73504, 0.26768, 1.03403, 0.51701},
      {0.20674, 0.02266, 0.40611, 1.05207, 0.52604},
      {0.22715, -0.85173, 0.62699, 1.08153, 0.54076},
      {0.18842, -1.97278, 0.98583, 1.13114, 0.56557},
      {0.12047, -3.46788, 1.57469, 1.21754, 0.60877},
      {0.05591, -5.55246, 2.54498, 1.37454, 0.68728},
      {0.01575, -8.68384, 4.16591, 1.68327, 0.84163},
      {0.00115, -14.65000, 7.33342, 2.50097, 1.25049},
  }}};
  return table;
}

const MixtureComponent& MixtureGrid::at(int row, int order) const {
  if (row < 0 || row >= static_cast<int>(kMixtureRows) || order < 0 || order > truncation_) {
    throw std::out_of_range("mixture component (" + std::to_string(row) + ", " +
                            std::to_string(order) + ") outside grid");
  }
  return components_[flat_index(row, order, truncation_)];
}

MixtureGrid build_grid(double beta, int truncation, const MixtureTable& table) {
  if (truncation < 0) {
    throw std::domain_error("mixture truncation order must be >= 0");
  }
  MixtureGrid grid;
  grid.beta_ = beta;
  grid.lambda_ = beta * beta;
  grid.truncation_ = truncation;

  const double half_lambda = 0.5 * grid.lambda_;
  const double log_half_lambda = half_lambda > 0.0 ? std::log(half_lambda)
                                                   : -std::numeric_limits<double>::infinity();
  const std::size_t orders = static_cast<std::size_t>(truncation) + 1;
  grid.components_.resize(kMixtureRows * orders);

  // log w_ij without the common exp(-lambda/2) Gamma(1/2) factor.
  std::vector<double> log_w(grid.components_.size());
  double max_log_w = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < kMixtureRows; ++i) {
    const MixtureRow& r = table.rows[i];
    for (int j = 0; j <= truncation; ++j) {
      const double dj = static_cast<double>(j);
      double lw = std::log(r.p);
      if (j > 0) {
        // 0^0 = 1: only the j = 0 term survives when lambda = 0.
        lw += r.m * dj + 0.5 * dj * dj * r.v2 + dj * log_half_lambda - dj * std::numbers::ln2 -
              std::lgamma(dj + 1.0) - std::lgamma(dj + 0.5);
      } else {
        lw -= kLogGammaHalf;
      }
      const std::size_t k = MixtureGrid::flat_index(static_cast<int>(i), j, truncation);
      log_w[k] = lw;
      if (lw > max_log_w) max_log_w = lw;

      MixtureComponent& c = grid.components_[k];
      c.row = static_cast<int>(i);
      c.order = j;
      c.mean = r.m + dj * r.v2;
      c.variance = r.v2;
      c.sd = std::sqrt(r.v2);
      c.a = r.a;
      c.b = r.b;
      c.half_mean_exp = std::exp(0.5 * c.mean);
    }
  }

  double scaled_sum = 0.0;
  for (double lw : log_w) scaled_sum += std::exp(lw - max_log_w);
  const double log_total = max_log_w + std::log(scaled_sum);
  for (std::size_t k = 0; k < log_w.size(); ++k) {
    MixtureComponent& c = grid.components_[k];
    c.log_weight = log_w[k] - log_total;
    c.weight = std::exp(c.log_weight);
  }
  // Normalize once more in linear space so the weights sum to one to rounding.
  double weight_sum = 0.0;
  for (const auto& c : grid.components_) weight_sum += c.weight;
  for (auto& c : grid.components_) {
    c.weight /= weight_sum;
    c.log_weight = c.weight > 0.0 ? std::log(c.weight) : -std::numeric_limits<double>::infinity();
  }
  if (half_lambda == 0.0) {
    // only the order-0 terms survive; take the table weights as given
    for (auto& c : grid.components_) {
      if (c.order == 0) {
        c.weight = table.rows[static_cast<std::size_t>(c.row)].p;
        c.log_weight = std::log(c.weight);
      }
    }
  }
  grid.unnormalized_mass_ = std::exp(log_total - half_lambda + kLogGammaHalf);
  return grid;
}

double central_log_chisq1_density(double u) {
  return std::exp(0.5 * (u - std::exp(u)) - kLogSqrtTwoPi);
}

double exact_log_chisq1_density(double u, double lambda, double tol) {
  if (!std::isfinite(u) || !std::isfinite(lambda) || lambda < 0.0) {
    throw std::domain_error("exact_log_chisq1_density: requires finite u and lambda >= 0");
  }
  if (!(tol > 0.0)) {
    throw std::domain_error("exact_log_chisq1_density: tol must be positive");
  }
  const double log_f0 = 0.5 * (u - std::exp(u)) - kLogSqrtTwoPi;
  if (lambda == 0.0) return std::exp(log_f0);

  // term_j = Pois(j; lambda/2) (e^u / 2)^j Gamma(1/2) / Gamma(1/2 + j) f(u; 0);
  // term_{j+1} / term_j = lambda e^u / (4 (j + 1) (j + 1/2)), decreasing in j,
  // so once the ratio r < 1 the tail after term_j is at most term_j r / (1 - r).
  const double x = std::exp(u);
  double log_term = -0.5 * lambda + log_f0;
  double sum = 0.0;
  for (int j = 0; j <= kMaxSeriesTerms; ++j) {
    const double term = std::exp(log_term);
    sum += term;
    const double dj = static_cast<double>(j);
    const double ratio = lambda * x / (4.0 * (dj + 1.0) * (dj + 0.5));
    if (ratio < 1.0 && term * ratio / (1.0 - ratio) < tol) return sum;
    log_term += std::log(ratio);
  }
  throw NumericalError("exact_log_chisq1_density: series did not reach tolerance within " +
                       std::to_string(kMaxSeriesTerms) + " terms at u=" + std::to_string(u));
}

double approx_density(double u, const MixtureGrid& grid) {
  double sum = 0.0;
  for (const auto& c : grid.components()) {
    if (c.weight == 0.0) continue;
    const double z = (u - c.mean) / c.sd;
    sum += c.weight * std::exp(-0.5 * z * z - kLogSqrtTwoPi) / c.sd;
  }
  return sum;
}

MonteCarloEstimate expected_log_chisq1(double beta, std::size_t n_mc, Rng& rng) {
  if (n_mc < 10000) {
    throw std::domain_error("expected_log_chisq1: n_mc must be at least 10^4");
  }
  // Welford accumulation.
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t i = 0; i < n_mc; ++i) {
    const double e = beta + rng.normal();
    const double v = std::log(e * e);
    const double delta = v - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (v - mean);
  }
  const double n = static_cast<double>(n_mc);
  return {mean, std::sqrt(m2 / (n - 1.0) / n)};
}

}  // namespace svmix
