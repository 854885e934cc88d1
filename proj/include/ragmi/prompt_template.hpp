#pragma once

#include <filesystem>
#include <span>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "ragmi/document.hpp"

namespace ragmi {

enum class BlockOrder { context_then_question, question_then_context };

/// Renders instruction + document blocks + question (+ answer lead-in) into
/// prompt strings. Rendering is deterministic: identical inputs give byte
/// identical output. Sections are separated by blank lines.
///
/// The strings are also exposed pre-split for likelihood scoring. In the
/// default order the conditioning prefix ends with the context and the scored
/// question continuation starts with the separating newline, so the separator
/// is attributed to the question and stays identical across document orders.
class PromptTemplate {
 public:
  struct Fields {
    std::string instruction;
    /// Must contain {index}, {title} and {text} exactly once each.
    std::string document_block_format;
    /// Must contain {question} exactly once.
    std::string question_format;
    /// Lead-in text placed before a scored answer; may be empty.
    std::string answer_stub;
    BlockOrder order = BlockOrder::context_then_question;
    /// Optional wrapper pair around the whole prompt (chat scaffolding hook).
    /// The suffix is appended to generation prompts only, never scored.
    std::string wrapper_prefix;
    std::string wrapper_suffix;
  };

  explicit PromptTemplate(Fields fields);

  /// The multi-document QA template with short factual answers.
  static PromptTemplate nq_open_default();
  /// The long-form QA template.
  static PromptTemplate eli5_default();

  static PromptTemplate from_json(const nlohmann::json& j);
  static PromptTemplate from_json_file(const std::filesystem::path& path);
  nlohmann::json to_json() const;

  /// One document block with a 1-based display index.
  std::string document_block(int display_index, const Document& doc) const;

  /// All document blocks in the given order, blank-line separated. Empty for
  /// an empty document list.
  std::string context_block(std::span<const Document> docs) const;

  std::string question_block(const std::string& question) const;

  /// Instruction plus documents then question (default order), or question
  /// then documents. No answer stub.
  std::string render_prompt(std::span<const Document> docs, const std::string& question) const;

  /// render_prompt plus the answer lead-in; used for generation and for
  /// scoring answer continuations.
  std::string render_prompt_with_stub(std::span<const Document> docs, const std::string& question) const;

  /// Conditioning prefix for question scoring: wrapper + instruction (+
  /// context when docs is non-empty). Default order only.
  std::string scoring_prefix(std::span<const Document> docs) const;

  /// The scored question continuation: separator + question block.
  std::string question_continuation(const std::string& question) const;

  /// Conditioning prefix and scored continuation for the reversed order,
  /// where the context is the scored string.
  std::string reversed_prefix(const std::string& question) const;
  std::string reversed_prefix_unconditional() const;
  std::string context_continuation(std::span<const Document> docs) const;

  /// Separator + answer stub ("" when the stub is empty).
  std::string answer_leadin() const;

  BlockOrder order() const { return fields_.order; }
  const Fields& fields() const { return fields_; }

 private:
  Fields fields_;
};

BlockOrder block_order_from_string(const std::string& s);
std::string to_string(BlockOrder order);

}  // namespace ragmi
