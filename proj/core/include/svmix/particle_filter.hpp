#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "svmix/model.hpp"

namespace svmix {

class Rng;

enum class Resampling { systematic, multinomial };

std::string_view to_string(Resampling r);
// Throws ConfigError on an unknown name.
Resampling parse_resampling(std::string_view name);

struct PfConfig {
  std::size_t n_particles = 80000;
  Resampling resampling = Resampling::systematic;

  // Throws ConfigError when n_particles < 2.
  void validate() const;
};

struct PfOutput {
  double loglik = 0.0;            // sum_t log w-bar_t
  std::vector<double> log_wbar;   // log f^(y_t | Y_{t-1}, theta)
  std::vector<double> cdf;        // F^(y_t | Y_{t-1}, theta)
};

// Auxiliary particle filter for the exact SVM likelihood. Leverage is taken
// from params.rho. Throws NumericalError naming t when every weight vanishes.
PfOutput apf_loglik(std::span<const double> y, const SvmParams& params, const PfConfig& config,
                    Rng& rng);

}  // namespace svmix
