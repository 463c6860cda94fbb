#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace sklab {

/// Identifies one reproducible random stream: (master_seed, stream_id) fully
/// determines every sample, and distinct stream ids give independent streams.
struct RngStream {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
}  // namespace detail

/// Deterministic generator for one stream. Normal variates use Box-Muller on
/// 53-bit uniforms, so samples are bit-identical across platforms and thread
/// counts for a fixed stream.
class Rng {
 public:
  explicit Rng(RngStream s) {
    std::uint64_t x = s.master_seed;
    const std::uint64_t h1 = detail::splitmix64(x);
    x ^= 0xD1B54A32D192ED03ULL * (s.stream_id + 1);
    const std::uint64_t h2 = detail::splitmix64(x);
    const std::uint64_t h3 = detail::splitmix64(x);
    std::seed_seq seq{static_cast<std::uint32_t>(h1), static_cast<std::uint32_t>(h1 >> 32),
                      static_cast<std::uint32_t>(h2), static_cast<std::uint32_t>(h2 >> 32),
                      static_cast<std::uint32_t>(h3), static_cast<std::uint32_t>(h3 >> 32)};
    gen_.seed(seq);
  }
  Rng(std::uint64_t master_seed, std::uint64_t stream_id)
      : Rng(RngStream{master_seed, stream_id}) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1] so the log is finite.
    const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = uniform();
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * std::numbers::pi * u2;
    spare_ = rad * std::sin(ang);
    have_spare_ = true;
    return rad * std::cos(ang);
  }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace sklab
