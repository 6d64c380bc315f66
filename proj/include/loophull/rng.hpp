#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace loophull {

// 64-bit finalizer (splitmix64 / Stafford mix 13).
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline constexpr std::uint64_t kGolden64 = 0x9E3779B97F4A7C15ULL;

// Per-sample stream key: seed_k = mix64(master + (k+1)*golden), all mod 2^64.
// Every sample of an experiment gets its own key, so results do not depend
// on how samples are scheduled across workers.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t k) noexcept {
  return mix64(master + (k + 1) * kGolden64);
}

// Retry variant for the rare resample cases (point exactly on a lattice path).
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t k,
                                    std::uint64_t retry) noexcept {
  std::uint64_t s = derive_seed(master, k);
  return retry == 0 ? s : derive_seed(s, retry - 1);
}

struct Philox2x64Output {
  std::uint64_t a;
  std::uint64_t b;
};

// Philox-2x64, 10 rounds (Salmon et al., "Parallel random numbers: as easy
// as 1, 2, 3", SC'11). Multiplier 0xD2B74407B1CE6E93, Weyl key increment
// 0x9E3779B97F4A7C15. Matches the Random123 known-answer vectors, e.g.
// philox2x64_10(0, 0) == {0xca00a0459843d731, 0x66c24222c9a845b5}.
inline Philox2x64Output philox2x64_10(std::uint64_t ctr, std::uint64_t key) noexcept {
  std::uint64_t x0 = ctr;
  std::uint64_t x1 = 0;
  std::uint64_t k = key;
  for (int round = 0; round < 10; ++round) {
    const unsigned __int128 prod =
        static_cast<unsigned __int128>(x0) * 0xD2B74407B1CE6E93ULL;
    const std::uint64_t hi = static_cast<std::uint64_t>(prod >> 64);
    const std::uint64_t lo = static_cast<std::uint64_t>(prod);
    x0 = hi ^ k ^ x1;
    x1 = lo;
    k += kGolden64;
  }
  return {x0, x1};
}

// Counter-based generator: draw i of a stream is philox2x64_10(i, key).
// Streams with distinct keys are disjoint by construction, and a stream's
// output is a pure function of (key, number of calls made so far).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}

  std::uint64_t next_u64() noexcept {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const Philox2x64Output out = philox2x64_10(ctr_++, key_);
    spare_ = out.b;
    have_spare_ = true;
    return out.a;
  }

  // Uniform double in [0,1) with 53 random bits.
  double uniform01() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n), n >= 1 (multiply-shift reduction).
  std::uint64_t below(std::uint64_t n) noexcept {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  // Standard normal pair via Box-Muller; consumes exactly one counter value.
  // u1 is mapped into (0,1] so the log never sees zero.
  void normal_pair(double& z0, double& z1) noexcept {
    const Philox2x64Output out = philox2x64_10(ctr_++, key_);
    const double u1 = (static_cast<double>(out.a >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(out.b >> 11) * 0x1.0p-53;
    const double rho = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * std::numbers::pi * u2;
    z0 = rho * std::cos(ang);
    z1 = rho * std::sin(ang);
  }

  double normal() noexcept {
    if (have_normal_) {
      have_normal_ = false;
      return normal_spare_;
    }
    double a = 0.0;
    double b = 0.0;
    normal_pair(a, b);
    normal_spare_ = b;
    have_normal_ = true;
    return a;
  }

  std::uint64_t key() const noexcept { return key_; }

 private:
  std::uint64_t key_;
  std::uint64_t ctr_ = 0;
  std::uint64_t spare_ = 0;
  bool have_spare_ = false;
  double normal_spare_ = 0.0;
  bool have_normal_ = false;
};

}  // namespace loophull
