#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace dtrp {

/// SplitMix64 finalizer: a bijective 64-bit mix with strong avalanche
/// behaviour, used to decorrelate nearby seeds and stream indices.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed for a named substream of a master seed.  Consumers that must not
/// share randomness derive their own stream from a distinct label/index.
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::string_view label,
                                    std::uint64_t index = 0) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a over the label
  for (const char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return mix64(mix64(master) ^ mix64(h + index));
}

/// Engine for stream `stream` of the given seed.  Engines for different
/// streams are decorrelated, so per-sample substreams can be opened at will.
inline std::mt19937_64 make_engine(std::uint64_t seed,
                                   std::uint64_t stream = 0) {
  return std::mt19937_64{mix64(seed ^ ((stream + 1) * 0x9E3779B97F4A7C15ULL))};
}

}  // namespace dtrp
