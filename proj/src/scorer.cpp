#include "ragmi/scorer.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ragmi/errors.hpp"

namespace ragmi {

namespace {
// Exact scorers can land a hair above zero through float rounding; anything
// beyond this is a real contract violation.
constexpr double kLogprobSlack = 1e-9;
}  // namespace

ScoreResult conditional_logprob(const Scorer& scorer, const std::string& prefix, const std::string& continuation) {
  if (continuation.empty()) throw std::domain_error("conditional_logprob: continuation must be non-empty");
  ScoreResult result = scorer.score(prefix, continuation);
  if (result.total_logprob > kLogprobSlack) {
    throw ProtocolError("scorer returned positive total logprob", "");
  }
  if (result.total_logprob > 0.0) result.total_logprob = 0.0;
  return result;
}

AnswerLogOdds answer_log_odds(const Scorer& scorer, const std::string& prompt, const std::string& answer) {
  if (answer.empty()) throw std::domain_error("answer_log_odds: answer must be non-empty");
  ScoreResult scored = conditional_logprob(scorer, prompt, answer);
  double logp = scored.total_logprob;
  double p = std::exp(logp);
  AnswerLogOdds out;
  out.logprob = logp;
  if (p >= 1.0) {
    throw std::domain_error("answer_log_odds: p(answer | prompt) = 1, log odds diverge");
  }
  if (p == 0.0) {
    out.value = -std::numeric_limits<double>::infinity();
    out.zero_probability = true;
    return out;
  }
  out.value = logp - std::log1p(-p);
  return out;
}

}  // namespace ragmi
