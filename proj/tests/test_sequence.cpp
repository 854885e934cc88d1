#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ragmi/rng.hpp"
#include "ragmi/sequence.hpp"

using ragmi::RealSequence;

namespace {

// Independent convexity check, written directly from the inequality.
bool convex_by_hand(const RealSequence& seq) {
  for (std::size_t n = 1; n + 1 < seq.size(); ++n) {
    if (2.0 * seq[n] - seq[n + 1] - seq[n - 1] > 0.0) return false;
  }
  return true;
}

// Random convex sequence: sorted increments accumulated from a random start.
RealSequence random_convex_sequence(ragmi::SeededRng& rng, int size) {
  std::vector<double> increments;
  for (int i = 0; i + 1 < size; ++i) increments.push_back(rng.uniform(-2.0, 2.0));
  std::sort(increments.begin(), increments.end());
  RealSequence seq{rng.uniform(-5.0, 5.0)};
  for (double d : increments) seq.push_back(seq.back() + d);
  return seq;
}

}  // namespace

TEST_CASE("second difference follows 2a[n] - a[n+1] - a[n-1]") {
  CHECK(ragmi::second_difference({3, 1, 2}, 2) == doctest::Approx(-3.0));
  CHECK(ragmi::second_difference({0, 1, 0}, 2) == doctest::Approx(2.0));
  CHECK(ragmi::second_difference({5, 5, 5}, 2) == doctest::Approx(0.0));
  CHECK_THROWS_AS(ragmi::second_difference({1, 2, 3}, 1), std::domain_error);
  CHECK_THROWS_AS(ragmi::second_difference({1, 2, 3}, 3), std::domain_error);
}

TEST_CASE("is_convex") {
  CHECK(ragmi::is_convex({3, 1, 2}));
  CHECK_FALSE(ragmi::is_convex({0, 1, 0}));
  CHECK(ragmi::is_convex({1, 1}));
  CHECK(ragmi::is_convex({7}));
}

TEST_CASE("is_u_shaped") {
  CHECK(ragmi::is_u_shaped({5, 1, 2, 4}));
  CHECK_FALSE(ragmi::is_u_shaped({1, 5, 2}));
  CHECK(ragmi::is_u_shaped({2, 2}));
  CHECK(ragmi::is_u_shaped({3, 3, 3}));
}

TEST_CASE("is_u_shaped is invariant under reversal") {
  ragmi::SeededRng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    int size = rng.uniform_int(1, 9);
    RealSequence seq;
    for (int i = 0; i < size; ++i) seq.push_back(static_cast<double>(rng.uniform_int(0, 3)));
    RealSequence reversed(seq.rbegin(), seq.rend());
    CHECK(ragmi::is_u_shaped(seq) == ragmi::is_u_shaped(reversed));
  }
}

TEST_CASE("convex_permutation_exists") {
  CHECK_FALSE(ragmi::convex_permutation_exists({0, 1, 1, 1}));
  CHECK(ragmi::convex_permutation_exists({0, 1}));
  CHECK(ragmi::convex_permutation_exists({3, 1, 2}));
  CHECK_THROWS_AS(ragmi::convex_permutation_exists(RealSequence(11, 0.0)), std::length_error);
}

TEST_CASE("is_convex agrees with the direct inequality on small grids") {
  // All sequences of length <= 5 over {0,1,2}; the acceptance suite extends
  // this to length 7.
  for (int size = 1; size <= 5; ++size) {
    int total = 1;
    for (int i = 0; i < size; ++i) total *= 3;
    for (int code = 0; code < total; ++code) {
      RealSequence seq;
      int rest = code;
      for (int i = 0; i < size; ++i) {
        seq.push_back(static_cast<double>(rest % 3));
        rest /= 3;
      }
      CHECK(ragmi::is_convex(seq) == convex_by_hand(seq));
    }
  }
}

TEST_CASE("curvature sum telescopes to b2 + b[N-1] - b1 - bN") {
  ragmi::SeededRng rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    int size = rng.uniform_int(3, 12);
    RealSequence seq;
    for (int i = 0; i < size; ++i) seq.push_back(rng.uniform(-10.0, 10.0));
    double closed = seq[1] + seq[seq.size() - 2] - seq.front() - seq.back();
    CHECK(std::abs(ragmi::curvature_sum(seq) - closed) < 1e-12);
  }
}

TEST_CASE("endpoint curvature equals the interior sum for length-4 convex permutations") {
  ragmi::SeededRng rng(29);
  int checked = 0;
  while (checked < 300) {
    RealSequence values;
    for (int i = 0; i < 4; ++i) values.push_back(rng.uniform(-5.0, 5.0));
    std::sort(values.begin(), values.end());
    do {
      if (!ragmi::is_convex(values)) continue;
      ++checked;
      CHECK(std::abs(ragmi::curvature_sum(values) - ragmi::endpoint_curvature(values)) < 1e-12);
    } while (std::next_permutation(values.begin(), values.end()));
  }
}

TEST_CASE("convex sequences by construction satisfy both curvature routes") {
  ragmi::SeededRng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    RealSequence seq = random_convex_sequence(rng, rng.uniform_int(3, 12));
    CHECK(ragmi::is_convex(seq));
    CHECK(ragmi::curvature_sum(seq) <= 1e-12);
    double closed = seq[1] + seq[seq.size() - 2] - seq.front() - seq.back();
    CHECK(std::abs(ragmi::curvature_sum(seq) - closed) < 1e-12);
  }
}

TEST_CASE("sequences must be finite and non-empty") {
  CHECK_THROWS_AS(ragmi::is_convex({}), std::domain_error);
  CHECK_THROWS_AS(ragmi::is_u_shaped({1.0, std::nan("")}), std::domain_error);
}
