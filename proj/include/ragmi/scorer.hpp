#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace ragmi {

struct TokenLogprob {
  std::string token;
  double logprob = 0.0;
};

/// Result of scoring a continuation after a prefix. total_logprob is the sum
/// of the token logprobs attributed to the continuation (natural log).
/// continuation_char_start is the character offset in prefix+continuation at
/// which the first attributed token begins; a token straddling the boundary
/// is attributed to the continuation, so this can be smaller than the prefix
/// length.
struct ScoreResult {
  double total_logprob = 0.0;
  std::vector<TokenLogprob> token_logprobs;
  std::size_t continuation_char_start = 0;
};

/// Abstract scoring backend. Implementations must be safe for concurrent
/// calls (up to a backend-declared in-flight limit for remote scorers) and
/// deterministic whenever the underlying model is.
class Scorer {
 public:
  virtual ~Scorer() = default;

  /// log of the conditional prefix probability of continuation after prefix,
  /// with per-token attribution.
  virtual ScoreResult score(const std::string& prefix, const std::string& continuation) const = 0;

  /// Greedy (temperature 0) completion, capped at max_tokens tokens.
  virtual std::string generate(const std::string& prompt, int max_tokens) const = 0;

  virtual std::string name() const = 0;
};

/// Validated wrapper around Scorer::score: rejects empty continuations and
/// positive total logprobs, and clamps float dust above zero.
ScoreResult conditional_logprob(const Scorer& scorer, const std::string& prefix, const std::string& continuation);

/// Log odds of an answer continuation. value is log(p / (1 - p)) with
/// p = exp(log p(answer | prompt)); p == 0 yields a -infinity value with
/// zero_probability set instead of an error.
struct AnswerLogOdds {
  double value = 0.0;
  double logprob = 0.0;
  bool zero_probability = false;
};

AnswerLogOdds answer_log_odds(const Scorer& scorer, const std::string& prompt, const std::string& answer);

}  // namespace ragmi
