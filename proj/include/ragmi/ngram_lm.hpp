#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ragmi/scorer.hpp"

namespace ragmi {

/// Add-lambda smoothed n-gram model over whitespace tokens. The vocabulary
/// includes an end marker so conditional distributions are proper; corpus
/// counts do not include end events. Tokens outside the vocabulary score at
/// the smoothing floor rather than erroring.
class NGramLm {
 public:
  static constexpr const char* kEndMarker = "</s>";

  /// corpus: one token string per element, whitespace split. order >= 1,
  /// lambda >= 0 (lambda = 0 disables smoothing).
  NGramLm(const std::vector<std::string>& corpus, int order, double lambda);

  int order() const { return order_; }
  double lambda() const { return lambda_; }

  /// Vocabulary size including the end marker.
  std::size_t vocabulary_size() const { return vocab_.size() + 1; }

  /// p(token | last order-1 context tokens), add-lambda smoothed. token may
  /// be kEndMarker.
  double cond_prob(std::span<const std::string> context, const std::string& token) const;

  /// All vocabulary tokens (excluding the end marker), sorted.
  const std::vector<std::string>& vocabulary() const { return sorted_vocab_; }

  static std::vector<std::string> tokenize(std::string_view text);

 private:
  struct ContextCounts {
    std::map<std::string, long> by_token;
    long total = 0;
  };

  std::string context_key(std::span<const std::string> context) const;

  int order_;
  double lambda_;
  std::map<std::string, bool> vocab_;
  std::vector<std::string> sorted_vocab_;
  std::map<std::string, ContextCounts> counts_;
};

/// Scorer over an NGramLm. The full prefix+continuation string is tokenized
/// once; a token straddling the boundary is attributed to the continuation.
/// generate() appends greedy tokens separated by single spaces and stops at
/// the end marker or max_tokens.
class NGramLmScorer : public Scorer {
 public:
  explicit NGramLmScorer(NGramLm lm, std::string name = "ngram");

  ScoreResult score(const std::string& prefix, const std::string& continuation) const override;
  std::string generate(const std::string& prompt, int max_tokens) const override;
  std::string name() const override { return name_; }

  const NGramLm& lm() const { return lm_; }

 private:
  NGramLm lm_;
  std::string name_;
};

}  // namespace ragmi
