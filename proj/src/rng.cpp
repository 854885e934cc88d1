#include "ragmi/rng.hpp"

#include <limits>
#include <stdexcept>

namespace ragmi {

std::uint64_t SeededRng::bounded(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("SeededRng::bounded: n must be positive");
  // Rejection sampling over the largest multiple of n below 2^64.
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return x % n;
}

int SeededRng::uniform_int(int lo, int hi) {
  if (lo > hi) throw std::invalid_argument("SeededRng::uniform_int: lo > hi");
  std::uint64_t span = static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) - lo) + 1;
  return lo + static_cast<int>(bounded(span));
}

std::uint64_t mix_seed(std::uint64_t seed, std::string_view tag) {
  std::uint64_t h = 14695981039346656037ull;  // FNV-1a offset basis
  for (unsigned char c : tag) {
    h ^= c;
    h *= 1099511628211ull;
  }
  h ^= seed + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

}  // namespace ragmi
