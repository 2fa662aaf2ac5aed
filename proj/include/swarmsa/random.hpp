#ifndef SWARMSA_RANDOM_HPP_
#define SWARMSA_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <utility>

namespace swarmsa {

// SplitMix64 finalizer; used to derive independent stream seeds from a master seed.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// A single-owner pseudo-random stream. Streams are derived from a master seed
// and a counter, so stream k of seed s is the same no matter which thread
// consumes it or in what order streams are created.
class RandomStream {
 public:
  using result_type = std::mt19937_64::result_type;

  explicit RandomStream(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  static RandomStream derive(std::uint64_t master_seed, std::uint64_t index) {
    return RandomStream(master_seed ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
  }

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound) by multiply-shift; bias is below bound / 2^64.
  std::size_t below(std::size_t bound) {
    __extension__ using wide_t = unsigned __int128;
    const auto wide = static_cast<wide_t>(engine_()) * bound;
    return static_cast<std::size_t>(wide >> 64);
  }

  // Two independent indices from one draw: [0, first_bound) and [0, second_bound).
  // Bounds must fit in 32 bits; bias is below bound / 2^32.
  std::pair<std::size_t, std::size_t> below_pair(std::uint32_t first_bound,
                                                 std::uint32_t second_bound) {
    const std::uint64_t x = engine_();
    return {static_cast<std::size_t>(((x >> 32) * first_bound) >> 32),
            static_cast<std::size_t>(((x & 0xFFFFFFFFULL) * second_bound) >> 32)};
  }

  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace swarmsa

#endif
