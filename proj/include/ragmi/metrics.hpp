#pragma once

#include <string>
#include <vector>

#include "ragmi/pmi.hpp"

namespace ragmi {

/// Lowercases ASCII and collapses whitespace runs to single spaces, trimming
/// the ends.
std::string normalize_text(const std::string& text);

/// 1 iff any reference answer is a substring of the response, both sides
/// normalized; exact_match skips normalization.
int substring_accuracy(const std::string& response, const std::vector<std::string>& answers,
                       bool exact_match = false);

/// Mean PMI over the profile's rotations.
double rho_m(const PmiProfile& profile);

/// Assigns each value to tertile bin 1, 2 or 3 split at the empirical 33.3%
/// and 66.7% quantiles. Ties at a boundary go to the lower bin, so all-equal
/// inputs land in bin 1. Needs at least three values.
std::vector<int> tertile_bins(const std::vector<double>& values);

/// Mean PMI per gold position. profiles hold rotation-indexed PMI over a
/// shared K; gold_positions gives each instance's gold document position in
/// the base order, which aligns rotation k with the position it moves the
/// gold document to.
std::vector<double> eta_k(const std::vector<PmiProfile>& profiles, const std::vector<int>& gold_positions);

/// One instance's per-arrangement sweep: PMI and accuracy indexed the same
/// way (rotations or gold positions).
struct SweepRecord {
  std::vector<double> pmi;
  std::vector<double> accuracy;
};

struct PairedMeans {
  double highest = 0.0;
  double lowest = 0.0;
};

/// Per instance, picks the arrangement with the highest and lowest PMI (ties
/// toward the smallest index) and averages the corresponding accuracies over
/// the corpus.
PairedMeans highest_lowest_comparison(const std::vector<SweepRecord>& records);

}  // namespace ragmi
