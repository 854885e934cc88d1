#include "ragmi/ngram_lm.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ragmi {

namespace {

struct TokenSpan {
  std::string token;
  std::size_t begin = 0;
  std::size_t end = 0;
};

std::vector<TokenSpan> tokenize_with_spans(std::string_view text) {
  std::vector<TokenSpan> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size()) break;
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    out.push_back({std::string(text.substr(start, i - start)), start, i});
  }
  return out;
}

}  // namespace

NGramLm::NGramLm(const std::vector<std::string>& corpus, int order, double lambda)
    : order_(order), lambda_(lambda) {
  if (order < 1) throw std::invalid_argument("NGramLm: order must be at least 1");
  if (lambda < 0.0) throw std::invalid_argument("NGramLm: lambda must be non-negative");
  for (const std::string& line : corpus) {
    std::vector<std::string> tokens = tokenize(line);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      vocab_[tokens[i]] = true;
      std::size_t ctx_begin = i >= static_cast<std::size_t>(order_ - 1) ? i - (order_ - 1) : 0;
      std::string key = context_key(std::span<const std::string>(tokens.data() + ctx_begin, i - ctx_begin));
      ContextCounts& cc = counts_[key];
      ++cc.by_token[tokens[i]];
      ++cc.total;
    }
  }
  for (const auto& [tok, _] : vocab_) sorted_vocab_.push_back(tok);
}

std::vector<std::string> NGramLm::tokenize(std::string_view text) {
  std::vector<std::string> out;
  for (const TokenSpan& t : tokenize_with_spans(text)) out.push_back(t.token);
  return out;
}

std::string NGramLm::context_key(std::span<const std::string> context) const {
  std::size_t keep = std::min(context.size(), static_cast<std::size_t>(order_ - 1));
  std::string key;
  for (std::size_t i = context.size() - keep; i < context.size(); ++i) {
    key += context[i];
    key += '\x1f';
  }
  return key;
}

double NGramLm::cond_prob(std::span<const std::string> context, const std::string& token) const {
  std::string key = context_key(context);
  long count = 0;
  long total = 0;
  auto it = counts_.find(key);
  if (it != counts_.end()) {
    total = it->second.total;
    auto jt = it->second.by_token.find(token);
    if (jt != it->second.by_token.end()) count = jt->second;
  }
  double vocab_size = static_cast<double>(vocabulary_size());
  double denom = static_cast<double>(total) + lambda_ * vocab_size;
  if (denom <= 0.0) return 0.0;  // unseen context with lambda = 0
  return (static_cast<double>(count) + lambda_) / denom;
}

NGramLmScorer::NGramLmScorer(NGramLm lm, std::string name) : lm_(std::move(lm)), name_(std::move(name)) {}

ScoreResult NGramLmScorer::score(const std::string& prefix, const std::string& continuation) const {
  std::string full = prefix + continuation;
  std::vector<TokenSpan> spans = tokenize_with_spans(full);
  std::vector<std::string> tokens;
  tokens.reserve(spans.size());
  for (const TokenSpan& t : spans) tokens.push_back(t.token);

  ScoreResult result;
  result.continuation_char_start = prefix.size();
  bool first_attributed = true;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    if (spans[i].end <= prefix.size()) continue;  // fully inside the prefix
    if (first_attributed) {
      result.continuation_char_start = spans[i].begin;
      first_attributed = false;
    }
    std::size_t ctx_begin = i >= static_cast<std::size_t>(lm_.order() - 1) ? i - (lm_.order() - 1) : 0;
    double p = lm_.cond_prob(std::span<const std::string>(tokens.data() + ctx_begin, i - ctx_begin), tokens[i]);
    double lp = p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity();
    result.token_logprobs.push_back({tokens[i], lp});
    result.total_logprob += lp;
  }
  return result;
}

std::string NGramLmScorer::generate(const std::string& prompt, int max_tokens) const {
  if (max_tokens < 1) throw std::domain_error("generate: max_tokens must be at least 1");
  std::vector<std::string> tokens = NGramLm::tokenize(prompt);
  std::string out;
  for (int step = 0; step < max_tokens; ++step) {
    std::span<const std::string> all(tokens);
    std::span<const std::string> context =
        all.size() > static_cast<std::size_t>(lm_.order() - 1) ? all.last(lm_.order() - 1) : all;
    // End marker wins ties, then the lexicographically smallest token.
    std::string best = NGramLm::kEndMarker;
    double best_p = lm_.cond_prob(context, NGramLm::kEndMarker);
    for (const std::string& tok : lm_.vocabulary()) {
      double p = lm_.cond_prob(context, tok);
      if (p > best_p) {
        best_p = p;
        best = tok;
      }
    }
    if (best == NGramLm::kEndMarker) break;
    if (!out.empty()) out += ' ';
    out += best;
    tokens.push_back(best);
  }
  return out;
}

}  // namespace ragmi
