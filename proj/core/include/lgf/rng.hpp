#pragma once

// Counter-based random number generation. Every sampler in the library is a
// pure function of (arguments, RngSeed); distinct (seed, stream_id) pairs
// give independent streams, so replicates can run on any number of workers
// without shared generator state.

#include <cmath>
#include <cstdint>

namespace lgf {

struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  // Derived stream for sub-sampling tasks (replicate k of a run, etc.).
  RngSeed stream(std::uint64_t k) const noexcept {
    return RngSeed{seed, stream_id * 0x100000001b3ULL + k + 1};
  }
};

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace detail

// SplitMix64-style generator: output i is a fixed bijective hash of
// (key + i * golden), i.e. a keyed counter. No state beyond the counter.
class CounterRng {
 public:
  explicit CounterRng(RngSeed s) noexcept {
    key_ = detail::mix64(s.seed + 0x9e3779b97f4a7c15ULL);
    key_ = detail::mix64(key_ ^ (s.stream_id + 0x632be59bd9b4e019ULL));
  }

  std::uint64_t next_u64() noexcept {
    ctr_ += 0x9e3779b97f4a7c15ULL;
    return detail::mix64(key_ + ctr_);
  }

  // Uniform on (0, 1), both endpoints excluded.
  double uniform01() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Exact standard normal via Box-Muller (no approximate inverse CDF:
  // tail fidelity matters for exponent estimation).
  double normal() noexcept {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint64_t key_ = 0;
  std::uint64_t ctr_ = 0;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace lgf
