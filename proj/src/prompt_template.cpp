#include "ragmi/prompt_template.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "ragmi/errors.hpp"

namespace ragmi {

namespace {

constexpr const char* kSeparator = "\n\n";

int count_occurrences(const std::string& haystack, const std::string& needle) {
  int count = 0;
  std::size_t pos = 0;
  while ((pos = haystack.find(needle, pos)) != std::string::npos) {
    ++count;
    pos += needle.size();
  }
  return count;
}

std::string replace_once(std::string text, const std::string& placeholder, const std::string& value) {
  std::size_t pos = text.find(placeholder);
  text.replace(pos, placeholder.size(), value);
  return text;
}

void require_placeholder(const std::string& format, const std::string& placeholder, const std::string& field) {
  int n = count_occurrences(format, placeholder);
  if (n != 1) {
    throw ConfigError("template " + field + " must contain " + placeholder + " exactly once (found " +
                      std::to_string(n) + ")");
  }
}

}  // namespace

PromptTemplate::PromptTemplate(Fields fields) : fields_(std::move(fields)) {
  require_placeholder(fields_.document_block_format, "{index}", "document_block_format");
  require_placeholder(fields_.document_block_format, "{title}", "document_block_format");
  require_placeholder(fields_.document_block_format, "{text}", "document_block_format");
  require_placeholder(fields_.question_format, "{question}", "question_format");
}

PromptTemplate PromptTemplate::nq_open_default() {
  Fields f;
  f.instruction =
      "Write a high-quality answer for the given question using only the provided "
      "search results (some of which might be irrelevant).";
  f.document_block_format = "Document [{index}](Title: {title}) {text}";
  f.question_format = "Question: {question}";
  f.answer_stub = "According to the provided documents, the answer is";
  f.order = BlockOrder::context_then_question;
  return PromptTemplate(std::move(f));
}

PromptTemplate PromptTemplate::eli5_default() {
  Fields f;
  f.instruction =
      "Instruction: Write an accurate, engaging, and concise answer for the given "
      "question using only the provided search results (some of which might be "
      "irrelevant). Use an unbiased and journalistic tone.";
  f.document_block_format = "Document [{index}](Title: {title}): {text}";
  f.question_format = "Question: {question}";
  f.answer_stub = "";
  f.order = BlockOrder::context_then_question;
  return PromptTemplate(std::move(f));
}

PromptTemplate PromptTemplate::from_json(const nlohmann::json& j) {
  Fields f;
  f.instruction = j.at("instruction").get<std::string>();
  f.document_block_format = j.at("document_block_format").get<std::string>();
  f.question_format = j.at("question_format").get<std::string>();
  f.answer_stub = j.value("answer_stub", std::string());
  f.order = block_order_from_string(j.value("order", std::string("context_then_question")));
  f.wrapper_prefix = j.value("wrapper_prefix", std::string());
  f.wrapper_suffix = j.value("wrapper_suffix", std::string());
  return PromptTemplate(std::move(f));
}

PromptTemplate PromptTemplate::from_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open template file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed template file " + path.string() + ": " + e.what());
  }
  return from_json(j);
}

nlohmann::json PromptTemplate::to_json() const {
  return nlohmann::json{{"instruction", fields_.instruction},
                        {"document_block_format", fields_.document_block_format},
                        {"question_format", fields_.question_format},
                        {"answer_stub", fields_.answer_stub},
                        {"order", to_string(fields_.order)},
                        {"wrapper_prefix", fields_.wrapper_prefix},
                        {"wrapper_suffix", fields_.wrapper_suffix}};
}

std::string PromptTemplate::document_block(int display_index, const Document& doc) const {
  std::string block = replace_once(fields_.document_block_format, "{index}", std::to_string(display_index));
  block = replace_once(block, "{title}", doc.title);
  return replace_once(block, "{text}", doc.text);
}

std::string PromptTemplate::context_block(std::span<const Document> docs) const {
  std::string out;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (i > 0) out += kSeparator;
    out += document_block(static_cast<int>(i) + 1, docs[i]);
  }
  return out;
}

std::string PromptTemplate::question_block(const std::string& question) const {
  return replace_once(fields_.question_format, "{question}", question);
}

std::string PromptTemplate::scoring_prefix(std::span<const Document> docs) const {
  std::string out = fields_.wrapper_prefix + fields_.instruction;
  if (!docs.empty()) {
    out += kSeparator;
    out += context_block(docs);
  }
  return out;
}

std::string PromptTemplate::question_continuation(const std::string& question) const {
  return kSeparator + question_block(question);
}

std::string PromptTemplate::reversed_prefix(const std::string& question) const {
  return fields_.wrapper_prefix + fields_.instruction + kSeparator + question_block(question);
}

std::string PromptTemplate::reversed_prefix_unconditional() const {
  return fields_.wrapper_prefix + fields_.instruction;
}

std::string PromptTemplate::context_continuation(std::span<const Document> docs) const {
  return kSeparator + context_block(docs);
}

std::string PromptTemplate::render_prompt(std::span<const Document> docs, const std::string& question) const {
  if (fields_.order == BlockOrder::context_then_question) {
    return scoring_prefix(docs) + question_continuation(question);
  }
  std::string out = reversed_prefix(question);
  if (!docs.empty()) out += context_continuation(docs);
  return out;
}

std::string PromptTemplate::render_prompt_with_stub(std::span<const Document> docs,
                                                    const std::string& question) const {
  return render_prompt(docs, question) + answer_leadin();
}

std::string PromptTemplate::answer_leadin() const {
  if (fields_.answer_stub.empty()) return "";
  return kSeparator + fields_.answer_stub;
}

BlockOrder block_order_from_string(const std::string& s) {
  if (s == "context_then_question") return BlockOrder::context_then_question;
  if (s == "question_then_context") return BlockOrder::question_then_context;
  throw ConfigError("unknown template order '" + s + "'");
}

std::string to_string(BlockOrder order) {
  return order == BlockOrder::context_then_question ? "context_then_question" : "question_then_context";
}

}  // namespace ragmi
