#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ragmi {

/// One retrieved document. is_gold marks the document containing the ground
/// truth answer; at most one document per instance may carry it.
struct Document {
  std::string id;
  std::string title;  // may be empty
  std::string text;
  std::optional<bool> is_gold;
};

/// Validates the per-instance document invariants (non-empty text, unique
/// ids, at most one gold flag). Throws ConfigError.
void validate_documents(std::span<const Document> docs);

/// Index (1-based) of the document flagged gold, or 0 if none.
int gold_position(std::span<const Document> docs);

}  // namespace ragmi
