#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "svmix/diagnostics.hpp"
#include "svmix/mixture.hpp"
#include "svmix/rng.hpp"

using namespace svmix;

namespace {

std::vector<double> ar1(double a, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> x(n);
  x[0] = rng.normal() / std::sqrt(1.0 - a * a);
  for (std::size_t t = 1; t < n; ++t) x[t] = a * x[t - 1] + rng.normal();
  return x;
}

}  // namespace

TEST(Diagnostics, ParzenKernel) {
  EXPECT_DOUBLE_EQ(parzen_kernel(0.0), 1.0);
  EXPECT_DOUBLE_EQ(parzen_kernel(0.5), 0.25);
  EXPECT_DOUBLE_EQ(parzen_kernel(-0.5), 0.25);
  EXPECT_DOUBLE_EQ(parzen_kernel(1.0), 0.0);
  EXPECT_DOUBLE_EQ(parzen_kernel(1.7), 0.0);
  EXPECT_NEAR(parzen_kernel(0.75), 2.0 * 0.25 * 0.25 * 0.25, 1e-15);
}

TEST(Diagnostics, AutocorrelationOfKnownSequence) {
  const std::vector<double> x{1.0, -1.0, 1.0, -1.0};
  const std::vector<double> r = autocorrelation(x, 10);
  ASSERT_EQ(r.size(), 4u);
  EXPECT_DOUBLE_EQ(r[0], 1.0);
  EXPECT_DOUBLE_EQ(r[1], -0.75);
  EXPECT_DOUBLE_EQ(r[2], 0.5);
  EXPECT_DOUBLE_EQ(r[3], -0.25);
  EXPECT_TRUE(autocorrelation(std::vector<double>(5, 2.0), 3).empty());
}

TEST(Diagnostics, IidChainHasUnitInefficiency) {
  const std::vector<double> x = ar1(0.0, 100000, 1);
  const double f = *inefficiency_factor(x);
  EXPECT_GT(f, 0.9);
  EXPECT_LT(f, 1.2);
}

TEST(Diagnostics, Ar1Inefficiency) {
  for (double a : {0.5, 0.9}) {
    const std::vector<double> x = ar1(a, 1000000, a == 0.5 ? 2 : 3);
    const double want = (1.0 + a) / (1.0 - a);
    EXPECT_NEAR(*inefficiency_factor(x), want, 0.15 * want) << "a=" << a;
  }
}

TEST(Diagnostics, ConstantChainHasNoInefficiency) {
  EXPECT_FALSE(inefficiency_factor(std::vector<double>(100, 3.0)).has_value());
  EXPECT_FALSE(inefficiency_factor(std::vector<double>{1.0}).has_value());
}

TEST(Diagnostics, InefficiencyIsAffineInvariant) {
  std::vector<double> x = ar1(0.7, 5000, 4);
  const double f = *inefficiency_factor(x);
  for (double& v : x) v = 3.5 * v - 12.0;
  EXPECT_NEAR(*inefficiency_factor(x), f, 1e-10);
}

TEST(Diagnostics, ExplicitBandwidth) {
  const std::vector<double> x{1.0, -1.0, 1.0, -1.0};
  // B = 2: 1 + 2 (K(1/2) rho_1 + K(1) rho_2) = 1 + 2 (0.25 * -0.75)
  EXPECT_NEAR(*inefficiency_factor(x, 2), 1.0 - 0.375, 1e-15);
}

TEST(Diagnostics, SummaryOfConstantChain) {
  const std::vector<double> x{1.0, 1.0, 1.0};
  const ChainSummary s = summarize(x);
  EXPECT_DOUBLE_EQ(s.mean, 1.0);
  EXPECT_DOUBLE_EQ(s.sd, 0.0);
  EXPECT_DOUBLE_EQ(s.lower, 1.0);
  EXPECT_DOUBLE_EQ(s.median, 1.0);
  EXPECT_DOUBLE_EQ(s.upper, 1.0);
  EXPECT_DOUBLE_EQ(s.prob_positive, 1.0);
  EXPECT_FALSE(s.inefficiency.has_value());
}

TEST(Diagnostics, SummaryOfTwoPoints) {
  const std::vector<double> x{-1.0, 1.0};
  const ChainSummary s = summarize(x);
  EXPECT_DOUBLE_EQ(s.mean, 0.0);
  EXPECT_DOUBLE_EQ(s.sd, std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(s.median, 0.0);
  EXPECT_DOUBLE_EQ(s.lower, -0.95);
  EXPECT_DOUBLE_EQ(s.upper, 0.95);
  EXPECT_DOUBLE_EQ(s.prob_positive, 0.5);
}

TEST(Diagnostics, SummaryOfNormalDraws) {
  Rng rng(7);
  std::vector<double> x(1000000);
  for (double& v : x) v = 2.0 + 0.5 * rng.normal();
  const ChainSummary s = summarize(x);
  EXPECT_NEAR(s.mean, 2.0, 0.002);
  EXPECT_NEAR(s.sd, 0.5, 0.002);
  EXPECT_NEAR(s.lower, 2.0 - 1.959964 * 0.5, 0.005);
  EXPECT_NEAR(s.median, 2.0, 0.003);
  EXPECT_NEAR(s.upper, 2.0 + 1.959964 * 0.5, 0.005);
  // P(N(2, 0.25) > 0) = Phi(4)
  EXPECT_NEAR(s.prob_positive, 1.0 - 3.167e-5, 3e-5);
  EXPECT_NEAR(*s.inefficiency, 1.0, 0.1);
}

TEST(Diagnostics, SummaryIgnoresOrder) {
  std::vector<double> x = ar1(0.3, 1001, 8);
  const ChainSummary a = summarize(x);
  std::mt19937_64 gen(1);
  std::shuffle(x.begin(), x.end(), gen);
  const ChainSummary b = summarize(x);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.sd, b.sd);
  EXPECT_EQ(a.lower, b.lower);
  EXPECT_EQ(a.median, b.median);
  EXPECT_EQ(a.upper, b.upper);
  EXPECT_EQ(a.prob_positive, b.prob_positive);
  EXPECT_THROW(summarize(std::vector<double>{}), std::invalid_argument);
}

TEST(Diagnostics, QuantileInterpolates) {
  const std::vector<double> s{0.0, 10.0, 20.0, 30.0};
  EXPECT_DOUBLE_EQ(sorted_quantile(s, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(sorted_quantile(s, 1.0), 30.0);
  EXPECT_DOUBLE_EQ(sorted_quantile(s, 0.5), 15.0);
  EXPECT_NEAR(sorted_quantile(s, 0.1), 3.0, 1e-12);
}

TEST(Diagnostics, ProxyOfConstantSeries) {
  const std::vector<double> y(50, 0.8);
  Rng rng(9);
  const std::vector<double> z = volatility_proxy(y, 0.0, 1000000, rng, 10);
  for (double v : z) EXPECT_NEAR(v, std::log(0.64) + 1.27036, 0.01);
}

TEST(Diagnostics, ProxyUsesShrinkingWindow) {
  const std::vector<double> y{1.0, 2.0, 3.0, 4.0, 5.0};
  Rng r1(10), r2(10);
  const std::vector<double> z = volatility_proxy(y, 0.3, 10000, r1, 1);
  const double e = expected_log_chisq1(0.3, 10000, r2).mean;
  auto l = [&](int t) { return std::log(y[t] * y[t]) - e; };
  EXPECT_NEAR(z[0], (l(0) + l(1)) / 2, 1e-12);
  EXPECT_NEAR(z[2], (l(1) + l(2) + l(3)) / 3, 1e-12);
  EXPECT_NEAR(z[4], (l(3) + l(4)) / 2, 1e-12);
}

TEST(Diagnostics, ProxyIsReversalSymmetric) {
  std::vector<double> y(40);
  Rng g(11);
  for (double& v : y) v = g.normal();
  std::vector<double> rev(y.rbegin(), y.rend());
  Rng r1(12), r2(12);
  const std::vector<double> a = volatility_proxy(y, 0.2, 10000, r1, 5);
  const std::vector<double> b = volatility_proxy(rev, 0.2, 10000, r2, 5);
  for (std::size_t t = 0; t < y.size(); ++t) EXPECT_NEAR(a[t], b[y.size() - 1 - t], 1e-12);
}

TEST(Diagnostics, ProxyOffsetForSmallBeta) {
  // E[log chi^2_1(0.06^2)] is about -1.27
  const std::vector<double> y(5, 1.0);
  Rng rng(13);
  const std::vector<double> z = volatility_proxy(y, 0.06, 1000000, rng, 2);
  EXPECT_NEAR(z[2], 1.27, 0.01);
}

TEST(Diagnostics, BandIsOrdered) {
  std::vector<LatentPath> paths;
  Rng rng(14);
  for (int g = 0; g < 500; ++g) {
    LatentPath h(20);
    for (double& v : h) v = rng.normal();
    paths.push_back(h);
  }
  const VolatilityBand band = volatility_band(paths);
  ASSERT_EQ(band.median.size(), 20u);
  for (std::size_t t = 0; t < 20; ++t) {
    EXPECT_LE(band.lower[t], band.median[t]);
    EXPECT_LE(band.median[t], band.upper[t]);
  }
  EXPECT_TRUE(volatility_band({}).median.empty());
}
