#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ragmi/permutation.hpp"
#include "ragmi/pmi.hpp"

namespace ragmi {

enum class ReorderMethod { pmi_argmax, curvature, identity, random };

std::string to_string(ReorderMethod method);

/// Outcome of a reordering decision: the chosen document order, the profile
/// it was derived from, and (for the curvature method) the per-document
/// goldness scores.
struct ReorderResult {
  Permutation chosen;
  PmiProfile profile;
  ReorderMethod method = ReorderMethod::identity;
  std::vector<double> goldness;  // empty unless method == curvature

  nlohmann::json to_json() const;
};

/// Selects the rotation with the highest PMI. Ties break toward the smallest
/// rotation index, so the retriever-given order wins when all else is equal.
ReorderResult method1_select(const PmiProfile& profile, const Permutation& base);

/// Per-document goldness: the PMI of the rotation placing the document first
/// plus the PMI of the rotation placing it last. Under the rotation
/// convention with an identity base this is b[d] + b[(d mod K) + 1].
std::vector<double> goldness_scores(const PmiProfile& profile, const Permutation& base);
std::vector<double> goldness_scores(const PmiProfile& profile);

/// Orders documents by descending goldness, stable on ties by original
/// document index; the first document is the one most likely to be gold.
/// place_runner_up_last additionally moves the second-ranked document to the
/// final position (off by default).
ReorderResult method2_reorder(const PmiProfile& profile, const Permutation& base,
                              bool place_runner_up_last = false);

/// Seeded uniform shuffles (Fisher-Yates over SeededRng, the repository's
/// documented generator). Deterministic for a given seed.
std::vector<Permutation> random_baseline(std::uint64_t seed, int size, int shuffles);

}  // namespace ragmi
