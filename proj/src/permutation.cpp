#include "ragmi/permutation.hpp"

#include <stdexcept>
#include <string>

namespace ragmi {

Permutation::Permutation(std::vector<int> mapping) : mapping_(std::move(mapping)) {
  int k = static_cast<int>(mapping_.size());
  if (k < 1) throw std::invalid_argument("Permutation: size must be at least 1");
  std::vector<bool> seen(static_cast<std::size_t>(k), false);
  for (int v : mapping_) {
    if (v < 1 || v > k) {
      throw std::invalid_argument("Permutation: entry " + std::to_string(v) + " outside 1.." + std::to_string(k));
    }
    if (seen[static_cast<std::size_t>(v - 1)]) {
      throw std::invalid_argument("Permutation: entry " + std::to_string(v) + " repeated");
    }
    seen[static_cast<std::size_t>(v - 1)] = true;
  }
}

Permutation Permutation::identity(int size) {
  std::vector<int> m(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) m[static_cast<std::size_t>(i)] = i + 1;
  return Permutation(std::move(m));
}

int Permutation::at(int position) const {
  if (position < 1 || position > size()) {
    throw std::out_of_range("Permutation::at: position " + std::to_string(position) + " outside 1.." +
                            std::to_string(size()));
  }
  return mapping_[static_cast<std::size_t>(position - 1)];
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(mapping_.size());
  for (int i = 1; i <= size(); ++i) {
    inv[static_cast<std::size_t>(at(i) - 1)] = i;
  }
  return Permutation(std::move(inv));
}

Permutation rotation(int k, int size) {
  if (size < 1) throw std::domain_error("rotation: size must be at least 1");
  if (k < 1 || k > size) {
    throw std::domain_error("rotation: k = " + std::to_string(k) + " outside 1.." + std::to_string(size));
  }
  std::vector<int> m(static_cast<std::size_t>(size));
  for (int i = 1; i <= size; ++i) {
    m[static_cast<std::size_t>(i - 1)] = (i + k - 2) % size + 1;
  }
  return Permutation(std::move(m));
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) throw std::domain_error("compose: size mismatch");
  std::vector<int> m(static_cast<std::size_t>(p.size()));
  for (int i = 1; i <= p.size(); ++i) {
    m[static_cast<std::size_t>(i - 1)] = p.at(q.at(i));
  }
  return Permutation(std::move(m));
}

std::vector<Permutation> cyclic_group(const Permutation& base) {
  int k = base.size();
  std::vector<Permutation> group;
  group.reserve(static_cast<std::size_t>(k));
  group.push_back(base);
  if (k == 1) return group;
  Permutation sigma = rotation(2, k);
  for (int i = 1; i < k; ++i) {
    group.push_back(compose(sigma, group.back()));
  }
  return group;
}

}  // namespace ragmi
