#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace ragmi {

/// The repository's single seeded generator: a std::mt19937_64 with
/// hand-rolled bounded draws. uniform_int_distribution and std::shuffle are
/// implementation-defined, so every consumer that must be reproducible
/// across platforms (baselines, synthetic data, fixtures) goes through this.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, n). Rejection sampling, no modulo bias.
  std::uint64_t bounded(std::uint64_t n);

  /// Uniform integer in [lo, hi], inclusive.
  int uniform_int(int lo, int hi);

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

 private:
  std::mt19937_64 engine_;
};

/// Derives a sub-seed from a run seed and a tag (FNV-1a over the tag, mixed
/// with the seed). Stable across platforms; used for per-instance streams.
std::uint64_t mix_seed(std::uint64_t seed, std::string_view tag);

/// In-place Fisher-Yates shuffle driven by SeededRng.
template <typename T>
void fisher_yates(SeededRng& rng, std::vector<T>& items) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.bounded(i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace ragmi
