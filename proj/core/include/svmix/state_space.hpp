#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace svmix {

class Rng;

// Scalar-state linear Gaussian model, conditional on mixture indicators:
//
//   y*_t    = obs_mean_t + h_t + obs_sd_t z1_t,                      t = 1..n
//   h_{t+1} = state_intercept_t + state_ar h_t
//             + state_obs_loading_t z1_t + state_sd_t z2_t,           t = 1..n-1
//   h_1     ~ N(init_mean, init_var),  (z1_t, z2_t) ~ N(0, I_2).
//
// The shared shock z1_t carries the leverage correlation; without leverage
// state_obs_loading is identically zero. Per-step vectors have length n; the
// state entries at t = n are unused.
struct SsmSpec {
  std::size_t n = 0;
  std::vector<double> obs_mean;
  std::vector<double> obs_sd;
  std::vector<double> state_intercept;
  double state_ar = 0.0;
  std::vector<double> state_obs_loading;
  std::vector<double> state_sd;
  double init_mean = 0.0;
  double init_var = 1.0;

  // Throws std::invalid_argument if lengths disagree or constraints fail.
  void validate() const;
};

using LatentPath = std::vector<double>;

struct SmoothedMoments {
  std::vector<double> mean;
  std::vector<double> variance;
};

// Variance floor applied to filtered and predicted variances.
inline constexpr double kVarianceFloor = 1e-12;

// log m(y* | spec) by the Kalman filter prediction-error decomposition.
// Throws NumericalError if a prediction variance is not positive.
double kalman_loglik(const SsmSpec& spec, std::span<const double> ystar);

// One exact draw of h from its Gaussian smoothing distribution
// (forward filtering, backward sampling).
LatentPath simulation_smoother(const SsmSpec& spec, std::span<const double> ystar, Rng& rng);

// Exact smoothed means and variances of h_t given all of y*.
SmoothedMoments smoother_moments(const SsmSpec& spec, std::span<const double> ystar);

}  // namespace svmix
