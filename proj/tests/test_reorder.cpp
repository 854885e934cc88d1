#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include <nlohmann/json.hpp>

#include "ragmi/reorder.hpp"
#include "ragmi/rng.hpp"

using ragmi::Permutation;
using ragmi::PmiProfile;
using ragmi::SeededRng;

namespace {

PmiProfile profile_from(std::vector<double> pmi) {
  PmiProfile p;
  p.question = "q";
  p.log_unconditional = {-1.0};
  for (double v : pmi) p.log_conditional.push_back(v - 1.0);
  p.pmi = std::move(pmi);
  return p;
}

// Independent goldness oracle: scan the rotations for where each document
// lands first and last.
std::vector<double> goldness_by_scan(const PmiProfile& profile, const Permutation& base) {
  int size = base.size();
  std::vector<double> scores(static_cast<std::size_t>(size), 0.0);
  auto group = ragmi::cyclic_group(base);
  for (int doc = 1; doc <= size; ++doc) {
    for (std::size_t k = 0; k < group.size(); ++k) {
      if (group[k].at(1) == doc) scores[doc - 1] += profile.pmi[k];
      if (group[k].at(size) == doc) scores[doc - 1] += profile.pmi[k];
    }
  }
  return scores;
}

}  // namespace

TEST_CASE("method1 picks the rotation with the highest pmi") {
  Permutation base = Permutation::identity(3);
  auto result = ragmi::method1_select(profile_from({-2.89, -2.52, -3.10}), base);
  CHECK(result.chosen == ragmi::rotation(2, 3));
  CHECK(result.method == ragmi::ReorderMethod::pmi_argmax);

  auto tie = ragmi::method1_select(profile_from({-1.0, -1.0}), Permutation::identity(2));
  CHECK(tie.chosen == Permutation::identity(2));

  auto single = ragmi::method1_select(profile_from({-0.5}), Permutation::identity(1));
  CHECK(single.chosen == Permutation::identity(1));

  PmiProfile empty;
  CHECK_THROWS_AS(ragmi::method1_select(empty, Permutation::identity(1)), std::domain_error);
}

TEST_CASE("method1 equals exhaustive argmax over random profiles") {
  SeededRng rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    int size = rng.uniform_int(1, 12);
    std::vector<double> pmi;
    for (int i = 0; i < size; ++i) pmi.push_back(rng.uniform(-5.0, 0.0));
    PmiProfile profile = profile_from(pmi);
    Permutation base = Permutation::identity(size);
    auto chosen = ragmi::method1_select(profile, base).chosen;

    std::size_t best = 0;
    for (std::size_t k = 1; k < pmi.size(); ++k) {
      if (pmi[k] > pmi[best]) best = k;
    }
    CHECK(chosen == ragmi::cyclic_group(base)[best]);

    // The selected rotation is invariant under constant shifts.
    PmiProfile shifted = profile;
    double delta = rng.uniform(-10.0, 10.0);
    for (double& v : shifted.pmi) v += delta;
    CHECK(ragmi::method1_select(shifted, base).chosen == chosen);
  }
}

TEST_CASE("goldness combines the first-place and last-place rotations") {
  auto scores = ragmi::goldness_scores(profile_from({-3.0, -1.0, -2.0}));
  REQUIRE(scores.size() == 3);
  CHECK(scores[0] == doctest::Approx(-4.0));
  CHECK(scores[1] == doctest::Approx(-3.0));
  CHECK(scores[2] == doctest::Approx(-5.0));

  auto constant = ragmi::goldness_scores(profile_from({-2.5, -2.5, -2.5, -2.5}));
  for (double g : constant) CHECK(g == doctest::Approx(-5.0));

  auto lone = ragmi::goldness_scores(profile_from({-1.25}));
  REQUIRE(lone.size() == 1);
  CHECK(lone[0] == doctest::Approx(-2.5));
}

TEST_CASE("goldness agrees with the rotation-scan oracle on random bases") {
  SeededRng rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    int size = rng.uniform_int(1, 10);
    std::vector<int> m(static_cast<std::size_t>(size));
    std::iota(m.begin(), m.end(), 1);
    ragmi::fisher_yates(rng, m);
    Permutation base(m);
    std::vector<double> pmi;
    for (int i = 0; i < size; ++i) pmi.push_back(rng.uniform(-5.0, 0.0));
    PmiProfile profile = profile_from(pmi);
    auto fast = ragmi::goldness_scores(profile, base);
    auto slow = goldness_by_scan(profile, base);
    for (std::size_t i = 0; i < fast.size(); ++i) CHECK(fast[i] == doctest::Approx(slow[i]).epsilon(1e-12));
  }
}

TEST_CASE("method2 sorts documents by descending goldness with stable ties") {
  auto result = ragmi::method2_reorder(profile_from({-3.0, -1.0, -2.0}), Permutation::identity(3));
  CHECK(result.chosen.values() == std::vector<int>{2, 1, 3});
  CHECK(result.method == ragmi::ReorderMethod::curvature);
  REQUIRE(result.goldness.size() == 3);
  CHECK(result.goldness[1] == doctest::Approx(-3.0));

  auto flat = ragmi::method2_reorder(profile_from({-2.0, -2.0, -2.0}), Permutation::identity(3));
  CHECK(flat.chosen == Permutation::identity(3));

  auto pair = ragmi::method2_reorder(profile_from({-1.0, -5.0}), Permutation::identity(2));
  CHECK(pair.chosen == Permutation::identity(2));
}

TEST_CASE("method2 output is always a bijection") {
  SeededRng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    int size = rng.uniform_int(1, 15);
    std::vector<double> pmi;
    for (int i = 0; i < size; ++i) pmi.push_back(rng.uniform(-4.0, 0.0));
    auto result = ragmi::method2_reorder(profile_from(pmi), Permutation::identity(size));
    // The Permutation constructor validates bijectivity; re-check the size.
    CHECK(result.chosen.size() == size);
    std::set<int> seen(result.chosen.values().begin(), result.chosen.values().end());
    CHECK(static_cast<int>(seen.size()) == size);
  }
}

TEST_CASE("method2 recovers a planted gold document") {
  SeededRng rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    int size = rng.uniform_int(3, 15);
    int gold = rng.uniform_int(1, size);
    int first_rot = gold;                  // rotation placing gold first
    int last_rot = gold % size + 1;        // rotation placing gold last
    std::vector<double> pmi;
    for (int k = 1; k <= size; ++k) {
      double margin = rng.uniform(0.2, 1.0);
      pmi.push_back(k == first_rot || k == last_rot ? -1.0 : -1.0 - margin);
    }
    auto result = ragmi::method2_reorder(profile_from(pmi), Permutation::identity(size));
    CHECK(result.chosen.at(1) == gold);
  }
}

TEST_CASE("method2 is invariant under constant pmi shifts") {
  SeededRng rng(47);
  for (int trial = 0; trial < 50; ++trial) {
    int size = rng.uniform_int(2, 10);
    std::vector<double> pmi;
    for (int i = 0; i < size; ++i) pmi.push_back(rng.uniform(-4.0, 0.0));
    auto base_result = ragmi::method2_reorder(profile_from(pmi), Permutation::identity(size));
    for (double& v : pmi) v += 7.31;
    auto shifted = ragmi::method2_reorder(profile_from(pmi), Permutation::identity(size));
    CHECK(base_result.chosen == shifted.chosen);
  }
}

TEST_CASE("method2 can optionally pin the runner-up at the end") {
  auto result =
      ragmi::method2_reorder(profile_from({-3.0, -1.0, -2.0}), Permutation::identity(3), true);
  CHECK(result.chosen.values() == std::vector<int>{2, 3, 1});
}

TEST_CASE("random baseline is deterministic and uniform over small groups") {
  auto first = ragmi::random_baseline(99, 6, 10);
  auto second = ragmi::random_baseline(99, 6, 10);
  REQUIRE(first.size() == 10);
  for (std::size_t i = 0; i < first.size(); ++i) CHECK(first[i] == second[i]);

  auto singles = ragmi::random_baseline(5, 1, 4);
  for (const auto& p : singles) CHECK(p == Permutation::identity(1));

  auto twenty = ragmi::random_baseline(7, 20, 20);
  CHECK(twenty.size() == 20);
  for (const auto& p : twenty) CHECK(p.size() == 20);

  // All 6 arrangements of 3 items show up across 600 draws.
  auto many = ragmi::random_baseline(11, 3, 600);
  std::set<std::vector<int>> seen;
  for (const auto& p : many) seen.insert(p.values());
  CHECK(seen.size() == 6);

  CHECK_THROWS_AS(ragmi::random_baseline(1, 0, 1), std::domain_error);
  CHECK_THROWS_AS(ragmi::random_baseline(1, 3, 0), std::domain_error);
}

TEST_CASE("reorder results serialize with method, permutation, pmi and goldness") {
  auto result = ragmi::method2_reorder(profile_from({-3.0, -1.0, -2.0}), Permutation::identity(3));
  nlohmann::json j = result.to_json();
  CHECK(j["method"] == "curvature");
  CHECK(j["chosen"] == nlohmann::json::array({2, 1, 3}));
  CHECK(j["profile"]["pmi"].size() == 3);
  CHECK(j["goldness"].size() == 3);
}
