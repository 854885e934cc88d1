#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ragmi {

/// A bijection on positions 1..K in one-line notation. All positions and
/// document indices are 1-based; at(i) is the document index placed at
/// position i. Immutable after construction.
class Permutation {
 public:
  /// mapping holds 1-based document indices; must be a bijection on 1..K.
  explicit Permutation(std::vector<int> mapping);

  static Permutation identity(int size);

  int size() const { return static_cast<int>(mapping_.size()); }

  /// Document index at 1-based position i.
  int at(int position) const;

  /// The full one-line mapping (1-based values).
  const std::vector<int>& values() const { return mapping_; }

  Permutation inverse() const;

  /// Arranges items so that result[i] = items[at(i+1) - 1].
  template <typename T>
  std::vector<T> apply(std::span<const T> items) const {
    std::vector<T> out;
    out.reserve(mapping_.size());
    for (int v : mapping_) out.push_back(items[static_cast<std::size_t>(v - 1)]);
    return out;
  }

  template <typename T>
  std::vector<T> apply(const std::vector<T>& items) const {
    return apply(std::span<const T>(items));
  }

  bool operator==(const Permutation& other) const = default;

 private:
  std::vector<int> mapping_;
};

/// The rotation placing document k at position 1: position i maps to
/// document ((i + k - 2) mod K) + 1. k = 1 is the identity.
Permutation rotation(int k, int size);

/// (p o q)(i) = p(q(i)). Sizes must match.
Permutation compose(const Permutation& p, const Permutation& q);

/// The K distinct elements of the cyclic group generated by base under the
/// shift sigma: element k is sigma^(k-1) o base, so element 1 equals base.
std::vector<Permutation> cyclic_group(const Permutation& base);

}  // namespace ragmi
