#include "ragmi/reorder.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "ragmi/rng.hpp"

namespace ragmi {

std::string to_string(ReorderMethod method) {
  switch (method) {
    case ReorderMethod::pmi_argmax: return "pmi_argmax";
    case ReorderMethod::curvature: return "curvature";
    case ReorderMethod::identity: return "identity";
    case ReorderMethod::random: return "random";
  }
  return "unknown";
}

nlohmann::json ReorderResult::to_json() const {
  nlohmann::json j;
  j["method"] = to_string(method);
  j["chosen"] = chosen.values();
  j["profile"] = profile.to_json();
  if (!goldness.empty()) j["goldness"] = goldness;
  return j;
}

ReorderResult method1_select(const PmiProfile& profile, const Permutation& base) {
  if (profile.size() == 0) throw std::domain_error("method1_select: empty profile");
  if (profile.size() != static_cast<std::size_t>(base.size())) {
    throw std::domain_error("method1_select: profile size does not match base permutation");
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < profile.pmi.size(); ++k) {
    if (profile.pmi[k] > profile.pmi[best]) best = k;
  }
  std::vector<Permutation> group = cyclic_group(base);
  return ReorderResult{group[best], profile, ReorderMethod::pmi_argmax, {}};
}

std::vector<double> goldness_scores(const PmiProfile& profile, const Permutation& base) {
  if (profile.size() == 0) throw std::domain_error("goldness_scores: empty profile");
  if (profile.size() != static_cast<std::size_t>(base.size())) {
    throw std::domain_error("goldness_scores: profile size does not match base permutation");
  }
  int size = base.size();
  std::vector<double> scores(static_cast<std::size_t>(size), 0.0);
  std::vector<Permutation> group = cyclic_group(base);
  for (std::size_t k = 0; k < group.size(); ++k) {
    scores[static_cast<std::size_t>(group[k].at(1) - 1)] += profile.pmi[k];
    scores[static_cast<std::size_t>(group[k].at(size) - 1)] += profile.pmi[k];
  }
  return scores;
}

std::vector<double> goldness_scores(const PmiProfile& profile) {
  return goldness_scores(profile, Permutation::identity(static_cast<int>(profile.size())));
}

ReorderResult method2_reorder(const PmiProfile& profile, const Permutation& base, bool place_runner_up_last) {
  std::vector<double> scores = goldness_scores(profile, base);
  std::vector<int> docs(scores.size());
  std::iota(docs.begin(), docs.end(), 1);
  std::stable_sort(docs.begin(), docs.end(), [&](int a, int b) {
    return scores[static_cast<std::size_t>(a - 1)] > scores[static_cast<std::size_t>(b - 1)];
  });
  if (place_runner_up_last && docs.size() >= 3) {
    std::rotate(docs.begin() + 1, docs.begin() + 2, docs.end());
  }
  return ReorderResult{Permutation(std::move(docs)), profile, ReorderMethod::curvature, std::move(scores)};
}

std::vector<Permutation> random_baseline(std::uint64_t seed, int size, int shuffles) {
  if (size < 1) throw std::domain_error("random_baseline: size must be at least 1");
  if (shuffles < 1) throw std::domain_error("random_baseline: shuffles must be at least 1");
  SeededRng rng(seed);
  std::vector<Permutation> out;
  out.reserve(static_cast<std::size_t>(shuffles));
  for (int s = 0; s < shuffles; ++s) {
    std::vector<int> m(static_cast<std::size_t>(size));
    std::iota(m.begin(), m.end(), 1);
    fisher_yates(rng, m);
    out.emplace_back(std::move(m));
  }
  return out;
}

}  // namespace ragmi
