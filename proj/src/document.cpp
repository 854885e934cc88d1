#include "ragmi/document.hpp"

#include <set>

#include "ragmi/errors.hpp"

namespace ragmi {

void validate_documents(std::span<const Document> docs) {
  std::set<std::string> ids;
  int gold_count = 0;
  for (const Document& d : docs) {
    if (d.text.empty()) throw ConfigError("document '" + d.id + "' has empty text");
    if (!ids.insert(d.id).second) throw ConfigError("duplicate document id '" + d.id + "'");
    if (d.is_gold.value_or(false)) ++gold_count;
  }
  if (gold_count > 1) throw ConfigError("more than one document flagged gold");
}

int gold_position(std::span<const Document> docs) {
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (docs[i].is_gold.value_or(false)) return static_cast<int>(i) + 1;
  }
  return 0;
}

}  // namespace ragmi
