#include "ragmi/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ragmi {

namespace {

void check_sequence(const RealSequence& seq) {
  if (seq.empty()) throw std::domain_error("sequence must have at least one element");
  for (double v : seq) {
    if (!std::isfinite(v)) throw std::domain_error("sequence values must be finite");
  }
}

}  // namespace

double second_difference(const RealSequence& seq, int n) {
  check_sequence(seq);
  int size = static_cast<int>(seq.size());
  if (n < 2 || n > size - 1) {
    throw std::domain_error("second_difference: n = " + std::to_string(n) + " is not interior to 1.." +
                            std::to_string(size));
  }
  std::size_t i = static_cast<std::size_t>(n - 1);
  return 2.0 * seq[i] - seq[i + 1] - seq[i - 1];
}

bool is_convex(const RealSequence& seq) {
  check_sequence(seq);
  for (int n = 2; n + 1 <= static_cast<int>(seq.size()); ++n) {
    if (second_difference(seq, n) > 0.0) return false;
  }
  return true;
}

bool is_u_shaped(const RealSequence& seq) {
  check_sequence(seq);
  double lo = std::min(seq.front(), seq.back());
  for (std::size_t i = 1; i + 1 < seq.size(); ++i) {
    if (seq[i] > lo) return false;
  }
  return true;
}

bool convex_permutation_exists(const RealSequence& seq) {
  check_sequence(seq);
  if (seq.size() > 10) {
    throw std::length_error("convex_permutation_exists: exhaustive search capped at 10 elements");
  }
  RealSequence sorted = seq;
  std::sort(sorted.begin(), sorted.end());
  do {
    if (is_convex(sorted)) return true;
  } while (std::next_permutation(sorted.begin(), sorted.end()));
  return false;
}

double curvature_sum(const RealSequence& seq) {
  check_sequence(seq);
  double total = 0.0;
  for (int n = 2; n + 1 <= static_cast<int>(seq.size()); ++n) {
    total += second_difference(seq, n);
  }
  return total;
}

double endpoint_curvature(const RealSequence& seq) {
  check_sequence(seq);
  double b = std::accumulate(seq.begin(), seq.end(), 0.0);
  return -2.0 * (seq.front() + seq.back()) + b;
}

}  // namespace ragmi
