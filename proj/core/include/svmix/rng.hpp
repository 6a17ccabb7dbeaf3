#pragma once

#include <cstdint>
#include <random>

namespace svmix {

// Seeded random stream. Two streams built from the same (seed, stream) pair
// produce identical sequences; distinct stream ids give independent streams
// for concurrent chains or particle-filter replications.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  double normal();
  double normal(double mean, double sd) { return mean + sd * normal(); }
  // Uniform on [0, 1).
  double uniform();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  // Deterministic child stream, e.g. for chain k of a multi-chain run.
  Rng split(std::uint64_t child) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace svmix
