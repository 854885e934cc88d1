#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ragmi/document.hpp"
#include "ragmi/permutation.hpp"
#include "ragmi/prompt_template.hpp"
#include "ragmi/scorer.hpp"

namespace ragmi {

/// Per-rotation PMI values together with the conditioning pieces they were
/// computed from. pmi[k] = log_conditional[k] - unconditional_for(k), all in
/// nats.
///
/// log_unconditional has size 1 when the unconditional leg is shared across
/// rotations (question scored after context) and size K when it varies per
/// rotation (context scored after question, where the unconditional is the
/// probability of each rotated context).
struct PmiProfile {
  std::string question;
  std::vector<double> log_conditional;
  std::vector<double> log_unconditional;
  std::vector<double> pmi;

  std::size_t size() const { return pmi.size(); }
  double unconditional_for(std::size_t k) const {
    return log_unconditional.size() == 1 ? log_unconditional[0] : log_unconditional[k];
  }

  nlohmann::json to_json() const;
  static PmiProfile from_json(const nlohmann::json& j);
};

/// Arranges docs according to perm: result[i] = docs[perm(i+1) - 1].
std::vector<Document> arrange(std::span<const Document> docs, const Permutation& perm);

/// PMI(question, context) for every rotation in cyclic_group(base):
/// log p(question | context_k) - log p(question | empty context). Issues
/// K + 1 scorer calls (one conditional per rotation plus one shared
/// unconditional). Any scorer failure aborts the whole profile.
PmiProfile pmi_profile(const Scorer& scorer, const PromptTemplate& tmpl, std::span<const Document> docs,
                       const std::string& question, const Permutation& base);

/// PMI computed with the roles exchanged for question-first prompts:
/// log p(context_k | question) - log p(context_k). The unconditional leg
/// depends on the rotation, so this issues 2K scorer calls and fills
/// log_unconditional with K entries.
PmiProfile pmi_context_after_question(const Scorer& scorer, const PromptTemplate& tmpl,
                                      std::span<const Document> docs, const std::string& question,
                                      const Permutation& base);

}  // namespace ragmi
