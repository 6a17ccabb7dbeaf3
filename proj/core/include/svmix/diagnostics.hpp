#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "svmix/state_space.hpp"

namespace svmix {

class Rng;

// Sample autocorrelations rho_0..rho_max_lag (rho_0 = 1). Empty for a
// constant chain.
std::vector<double> autocorrelation(std::span<const double> chain, std::size_t max_lag);

// 1 + 2 sum_s K(s/B) rho_s with the Parzen window K and bandwidth
// B = floor(sqrt(N)) unless given. nullopt for a constant chain.
std::optional<double> inefficiency_factor(std::span<const double> chain,
                                          std::optional<std::size_t> bandwidth = std::nullopt);

double parzen_kernel(double x);

// Linear-interpolation (type 7) quantile of sorted data.
double sorted_quantile(std::span<const double> sorted, double p);

struct ChainSummary {
  double mean = 0.0;
  double sd = 0.0;
  double lower = 0.0;   // 2.5%
  double median = 0.0;
  double upper = 0.0;   // 97.5%
  std::optional<double> inefficiency;
  double prob_positive = 0.0;
};

// Throws std::invalid_argument on an empty chain.
ChainSummary summarize(std::span<const double> chain);

// z_t = log(y_t^2 + offset) - E[log chi^2_1(beta_hat^2)], averaged over
// t-w..t+w; edge windows use the terms available.
std::vector<double> volatility_proxy(std::span<const double> y, double beta_hat, std::size_t n_mc,
                                     Rng& rng, std::size_t half_width = 10, double offset = 0.0);

struct VolatilityBand {
  std::vector<double> lower;
  std::vector<double> median;
  std::vector<double> upper;
};

// Per-t 2.5%, 50% and 97.5% quantiles over stored latent paths.
VolatilityBand volatility_band(const std::vector<LatentPath>& paths);

}  // namespace svmix
