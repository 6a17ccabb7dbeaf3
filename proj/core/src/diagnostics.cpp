#include "svmix/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "svmix/mixture.hpp"

namespace svmix {

std::vector<double> autocorrelation(std::span<const double> chain, std::size_t max_lag) {
  const std::size_t n = chain.size();
  if (n < 2) return {};
  double mean = 0.0;
  for (double v : chain) mean += v;
  mean /= static_cast<double>(n);
  std::vector<double> c(n);
  double c0 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    c[i] = chain[i] - mean;
    c0 += c[i] * c[i];
  }
  if (!(c0 > 0.0)) return {};
  const std::size_t lags = std::min(max_lag, n - 1);
  std::vector<double> rho(lags + 1);
  rho[0] = 1.0;
  for (std::size_t s = 1; s <= lags; ++s) {
    double acc = 0.0;
    for (std::size_t i = 0; i + s < n; ++i) acc += c[i] * c[i + s];
    rho[s] = acc / c0;
  }
  return rho;
}

double parzen_kernel(double x) {
  const double a = std::abs(x);
  if (a <= 0.5) return 1.0 - 6.0 * a * a + 6.0 * a * a * a;
  if (a <= 1.0) return 2.0 * (1.0 - a) * (1.0 - a) * (1.0 - a);
  return 0.0;
}

std::optional<double> inefficiency_factor(std::span<const double> chain,
                                          std::optional<std::size_t> bandwidth) {
  const std::size_t n = chain.size();
  if (n < 2) return std::nullopt;
  std::size_t b = bandwidth.value_or(static_cast<std::size_t>(std::sqrt(static_cast<double>(n))));
  b = std::clamp<std::size_t>(b, 1, n - 1);
  const std::vector<double> rho = autocorrelation(chain, b);
  if (rho.empty()) return std::nullopt;
  double s = 0.0;
  for (std::size_t k = 1; k < rho.size(); ++k) {
    s += parzen_kernel(static_cast<double>(k) / static_cast<double>(b)) * rho[k];
  }
  return 1.0 + 2.0 * s;
}

double sorted_quantile(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty data");
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

ChainSummary summarize(std::span<const double> chain) {
  const std::size_t n = chain.size();
  if (n == 0) throw std::invalid_argument("summarize: empty chain");
  std::vector<double> sorted(chain.begin(), chain.end());
  std::sort(sorted.begin(), sorted.end());
  ChainSummary s;
  // Sum in sorted order so the result does not depend on draw order.
  double sum = 0.0;
  std::size_t positive = 0;
  for (double v : sorted) {
    sum += v;
    if (v > 0.0) ++positive;
  }
  s.mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (double v : sorted) ss += (v - s.mean) * (v - s.mean);
  s.sd = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
  s.lower = sorted_quantile(sorted, 0.025);
  s.median = sorted_quantile(sorted, 0.5);
  s.upper = sorted_quantile(sorted, 0.975);
  s.prob_positive = static_cast<double>(positive) / static_cast<double>(n);
  s.inefficiency = inefficiency_factor(chain);
  return s;
}

std::vector<double> volatility_proxy(std::span<const double> y, double beta_hat, std::size_t n_mc,
                                     Rng& rng, std::size_t half_width, double offset) {
  const std::size_t n = y.size();
  const double e = expected_log_chisq1(beta_hat, n_mc, rng).mean;
  std::vector<double> z(n);
  for (std::size_t t = 0; t < n; ++t) z[t] = std::log(y[t] * y[t] + offset) - e;
  std::vector<double> out(n);
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t lo = t >= half_width ? t - half_width : 0;
    const std::size_t hi = std::min(n - 1, t + half_width);
    double acc = 0.0;
    for (std::size_t s = lo; s <= hi; ++s) acc += z[s];
    out[t] = acc / static_cast<double>(hi - lo + 1);
  }
  return out;
}

VolatilityBand volatility_band(const std::vector<LatentPath>& paths) {
  VolatilityBand band;
  if (paths.empty()) return band;
  const std::size_t n = paths.front().size();
  band.lower.resize(n);
  band.median.resize(n);
  band.upper.resize(n);
  std::vector<double> col(paths.size());
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t g = 0; g < paths.size(); ++g) col[g] = paths[g].at(t);
    std::sort(col.begin(), col.end());
    band.lower[t] = sorted_quantile(col, 0.025);
    band.median[t] = sorted_quantile(col, 0.5);
    band.upper[t] = sorted_quantile(col, 0.975);
  }
  return band;
}

}  // namespace svmix
