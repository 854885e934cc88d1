#include "ragmi/dataset.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

#include "ragmi/errors.hpp"
#include "ragmi/text_io.hpp"

namespace ragmi {

Instance Instance::from_json(const nlohmann::json& j) {
  Instance inst;
  inst.id = j.at("id").get<std::string>();
  inst.question = j.at("question").get<std::string>();
  inst.answers = j.at("answers").get<std::vector<std::string>>();
  for (const auto& d : j.at("documents")) {
    Document doc;
    doc.id = d.at("id").get<std::string>();
    doc.title = d.value("title", std::string());
    doc.text = d.at("text").get<std::string>();
    if (d.contains("is_gold")) doc.is_gold = d.at("is_gold").get<bool>();
    inst.documents.push_back(std::move(doc));
  }
  if (j.contains("sub_claims")) inst.sub_claims = j.at("sub_claims").get<std::vector<std::string>>();
  return inst;
}

nlohmann::json Instance::to_json() const {
  nlohmann::json docs = nlohmann::json::array();
  for (const Document& d : documents) {
    nlohmann::json doc{{"id", d.id}, {"title", d.title}, {"text", d.text}};
    if (d.is_gold.has_value()) doc["is_gold"] = *d.is_gold;
    docs.push_back(std::move(doc));
  }
  nlohmann::json j{{"id", id}, {"question", question}, {"answers", answers}, {"documents", docs}};
  if (!sub_claims.empty()) j["sub_claims"] = sub_claims;
  return j;
}

std::vector<Instance> parse_dataset_jsonl(const std::string& text, const std::string& origin) {
  std::vector<Instance> out;
  std::istringstream in(text);
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
      out.push_back(Instance::from_json(j));
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(origin + ":" + std::to_string(line_number) + ": " + e.what());
    }
    const Instance& inst = out.back();
    std::string where = origin + ":" + std::to_string(line_number) + " (" + inst.id + "): ";
    if (inst.answers.empty()) throw ConfigError(where + "answers must be non-empty");
    if (inst.documents.empty()) throw ConfigError(where + "documents must be non-empty");
    try {
      validate_documents(inst.documents);
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  return out;
}

std::vector<Instance> load_dataset_jsonl(const std::filesystem::path& path) {
  return parse_dataset_jsonl(read_text_file(path), path.string());
}

}  // namespace ragmi
