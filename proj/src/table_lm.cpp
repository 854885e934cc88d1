#include "ragmi/table_lm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "ragmi/errors.hpp"

namespace ragmi {

TableLm::TableLm(std::vector<std::pair<std::string, double>> entries) : entries_(std::move(entries)) {
  double total = 0.0;
  for (const auto& [s, p] : entries_) {
    if (p < 0.0) throw ConfigError("TableLm: negative probability for '" + s + "'");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw ConfigError("TableLm: probabilities sum to " + std::to_string(total) + ", expected 1");
  }
}

double TableLm::prefix_prob(std::string_view x) const {
  double total = 0.0;
  for (const auto& [s, p] : entries_) {
    if (s.size() >= x.size() && std::string_view(s).substr(0, x.size()) == x) total += p;
  }
  return total;
}

double TableLm::infix_prob(std::string_view x, std::string_view x2) const {
  double total = 0.0;
  for (const auto& [s, p] : entries_) {
    std::string_view sv(s);
    if (sv.size() < x.size() || sv.substr(0, x.size()) != x) continue;
    if (sv.substr(x.size()).find(x2) != std::string_view::npos) total += p;
  }
  return total;
}

double TableLm::string_prob(std::string_view x) const {
  double total = 0.0;
  for (const auto& [s, p] : entries_) {
    if (s == x) total += p;
  }
  return total;
}

std::vector<char> TableLm::alphabet() const {
  std::set<char> chars;
  for (const auto& [s, p] : entries_) chars.insert(s.begin(), s.end());
  return {chars.begin(), chars.end()};
}

TableLm TableLm::from_json(const nlohmann::json& j) {
  std::vector<std::pair<std::string, double>> entries;
  for (const auto& e : j.at("entries")) {
    entries.emplace_back(e.at(0).get<std::string>(), e.at(1).get<double>());
  }
  return TableLm(std::move(entries));
}

nlohmann::json TableLm::to_json() const {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [s, p] : entries_) entries.push_back(nlohmann::json::array({s, p}));
  return nlohmann::json{{"type", "table"}, {"entries", entries}};
}

TableLmScorer::TableLmScorer(TableLm lm, std::string name) : lm_(std::move(lm)), name_(std::move(name)) {}

ScoreResult TableLmScorer::score(const std::string& prefix, const std::string& continuation) const {
  ScoreResult result;
  result.continuation_char_start = prefix.size();
  double denom = lm_.prefix_prob(prefix);
  if (denom <= 0.0) {
    throw std::domain_error("TableLmScorer: prefix has zero probability, conditional undefined");
  }
  std::string current = prefix;
  double running = denom;
  for (char c : continuation) {
    current.push_back(c);
    double next = lm_.prefix_prob(current);
    double lp = next > 0.0 ? std::log(next / running) : -std::numeric_limits<double>::infinity();
    result.token_logprobs.push_back({std::string(1, c), lp});
    running = next;
  }
  double full = lm_.prefix_prob(prefix + continuation);
  result.total_logprob = full > 0.0 ? std::log(full / denom) : -std::numeric_limits<double>::infinity();
  return result;
}

std::string TableLmScorer::generate(const std::string& prompt, int max_tokens) const {
  if (max_tokens < 1) throw std::domain_error("generate: max_tokens must be at least 1");
  std::string current = prompt;
  std::string out;
  for (int step = 0; step < max_tokens; ++step) {
    double best_mass = lm_.string_prob(current);  // stopping mass; wins ties
    char best_char = 0;
    for (char c : lm_.alphabet()) {
      double mass = lm_.prefix_prob(current + c);
      if (mass > best_mass) {
        best_mass = mass;
        best_char = c;
      }
    }
    if (best_char == 0 || best_mass <= 0.0) break;
    current.push_back(best_char);
    out.push_back(best_char);
  }
  return out;
}

}  // namespace ragmi
