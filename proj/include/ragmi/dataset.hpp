#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ragmi/document.hpp"

namespace ragmi {

/// One QA instance: a question, its reference answers and the retrieved
/// documents. sub_claims carries the long-form sub-claim strings when the
/// dataset provides them; judging them is an external concern.
struct Instance {
  std::string id;
  std::string question;
  std::vector<std::string> answers;
  std::vector<Document> documents;
  std::vector<std::string> sub_claims;

  static Instance from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// Loads a JSONL dataset (one instance per line, blank lines ignored) and
/// validates each instance: non-empty answers, at least one document, unique
/// document ids, at most one gold flag.
std::vector<Instance> load_dataset_jsonl(const std::filesystem::path& path);

std::vector<Instance> parse_dataset_jsonl(const std::string& text, const std::string& origin);

}  // namespace ragmi
