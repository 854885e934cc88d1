#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ragmi/scorer.hpp"

namespace ragmi {

/// An exact language model with finite support: an explicit list of
/// (string, probability) pairs summing to 1. Tokenization is character
/// level. Immutable after construction; every probability below is an exact
/// finite sum over the support.
class TableLm {
 public:
  /// Probabilities must be non-negative and sum to 1 within 1e-12.
  explicit TableLm(std::vector<std::pair<std::string, double>> entries);

  /// Total probability of support strings having x as a prefix.
  double prefix_prob(std::string_view x) const;

  /// Total probability of support strings decomposable as x . gap . x2 . tail
  /// with gap and tail arbitrary (possibly empty). Each support string counts
  /// once even if several decompositions exist.
  double infix_prob(std::string_view x, std::string_view x2) const;

  /// Probability of exactly x.
  double string_prob(std::string_view x) const;

  const std::vector<std::pair<std::string, double>>& entries() const { return entries_; }

  /// Distinct characters appearing in the support.
  std::vector<char> alphabet() const;

  static TableLm from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

 private:
  std::vector<std::pair<std::string, double>> entries_;
};

/// Scorer over a TableLm. Tokens are single characters;
/// score(prefix, continuation) chains exact conditional prefix probabilities
/// character by character. generate() is greedy: at each step the highest
/// mass option among stopping and each next character wins (stop wins ties,
/// then lowest byte), until max_tokens characters are emitted.
class TableLmScorer : public Scorer {
 public:
  explicit TableLmScorer(TableLm lm, std::string name = "table");

  ScoreResult score(const std::string& prefix, const std::string& continuation) const override;
  std::string generate(const std::string& prompt, int max_tokens) const override;
  std::string name() const override { return name_; }

  const TableLm& lm() const { return lm_; }

 private:
  TableLm lm_;
  std::string name_;
};

}  // namespace ragmi
