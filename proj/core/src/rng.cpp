#include "svmix/rng.hpp"

namespace svmix {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(make_engine(seed, stream)) {}

double Rng::normal() { return normal_(engine_); }

double Rng::uniform() { return uniform_(engine_); }

Rng Rng::split(std::uint64_t child) const {
  // Mix the child id into the stream so children of different parents differ.
  const std::uint64_t mixed = (stream_ + 1) * 0x9E3779B97F4A7C15ULL ^ (child + 0x632BE59BD9B4E019ULL);
  return Rng(seed_, mixed);
}

}  // namespace svmix
