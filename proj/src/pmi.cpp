#include "ragmi/pmi.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

namespace ragmi {

nlohmann::json PmiProfile::to_json() const {
  nlohmann::json j;
  j["question"] = question;
  j["logq_given_context"] = log_conditional;
  if (log_unconditional.size() == 1) {
    j["logq_unconditional"] = log_unconditional[0];
  } else {
    j["logq_unconditional"] = log_unconditional;
  }
  j["pmi"] = pmi;
  return j;
}

PmiProfile PmiProfile::from_json(const nlohmann::json& j) {
  PmiProfile p;
  p.question = j.at("question").get<std::string>();
  p.log_conditional = j.at("logq_given_context").get<std::vector<double>>();
  const auto& uncond = j.at("logq_unconditional");
  if (uncond.is_array()) {
    p.log_unconditional = uncond.get<std::vector<double>>();
  } else {
    p.log_unconditional = {uncond.get<double>()};
  }
  p.pmi = j.at("pmi").get<std::vector<double>>();
  return p;
}

std::vector<Document> arrange(std::span<const Document> docs, const Permutation& perm) {
  if (static_cast<int>(docs.size()) != perm.size()) {
    throw std::domain_error("arrange: permutation size does not match document count");
  }
  return perm.apply(docs);
}

PmiProfile pmi_profile(const Scorer& scorer, const PromptTemplate& tmpl, std::span<const Document> docs,
                       const std::string& question, const Permutation& base) {
  if (docs.empty()) throw std::domain_error("pmi_profile: need at least one document");
  if (static_cast<int>(docs.size()) != base.size()) {
    throw std::domain_error("pmi_profile: base permutation size does not match document count");
  }
  std::string continuation = tmpl.question_continuation(question);
  PmiProfile profile;
  profile.question = question;
  double unconditional = conditional_logprob(scorer, tmpl.scoring_prefix({}), continuation).total_logprob;
  profile.log_unconditional = {unconditional};
  for (const Permutation& rot : cyclic_group(base)) {
    std::vector<Document> ordered = arrange(docs, rot);
    double cond = conditional_logprob(scorer, tmpl.scoring_prefix(ordered), continuation).total_logprob;
    profile.log_conditional.push_back(cond);
    profile.pmi.push_back(cond - unconditional);
  }
  return profile;
}

PmiProfile pmi_context_after_question(const Scorer& scorer, const PromptTemplate& tmpl,
                                      std::span<const Document> docs, const std::string& question,
                                      const Permutation& base) {
  if (docs.empty()) throw std::domain_error("pmi_context_after_question: need at least one document");
  if (static_cast<int>(docs.size()) != base.size()) {
    throw std::domain_error("pmi_context_after_question: base permutation size does not match document count");
  }
  std::string conditioned_prefix = tmpl.reversed_prefix(question);
  std::string unconditioned_prefix = tmpl.reversed_prefix_unconditional();
  PmiProfile profile;
  profile.question = question;
  for (const Permutation& rot : cyclic_group(base)) {
    std::vector<Document> ordered = arrange(docs, rot);
    std::string continuation = tmpl.context_continuation(ordered);
    double cond = conditional_logprob(scorer, conditioned_prefix, continuation).total_logprob;
    double uncond = conditional_logprob(scorer, unconditioned_prefix, continuation).total_logprob;
    profile.log_conditional.push_back(cond);
    profile.log_unconditional.push_back(uncond);
    profile.pmi.push_back(cond - uncond);
  }
  return profile;
}

}  // namespace ragmi
