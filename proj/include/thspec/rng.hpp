#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

namespace thspec {

std::uint64_t splitmix64(std::uint64_t& state);

/// xoshiro256** (Blackman & Vigna) seeded through splitmix64.
///
/// Streams: generator (seed, stream) seeds splitmix64 with
/// `seed ^ splitmix64(stream)` and draws the four state words from it, so
/// distinct streams of one master seed are statistically independent and the
/// output is identical on every platform. Monte Carlo trial t uses stream t.
class Rng {
 public:
  using result_type = std::uint64_t;
  static constexpr std::string_view kName = "xoshiro256**+splitmix64/v1";

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  // [0, 1) with 53 random bits.
  double uniform();
  // (0, 1]
  double uniform_positive();
  // Box-Muller; one normal per call.
  double normal();

 private:
  std::uint64_t s_[4];
};

}  // namespace thspec
