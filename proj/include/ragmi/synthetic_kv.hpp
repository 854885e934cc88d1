#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ragmi/rng.hpp"
#include "ragmi/scorer.hpp"

namespace ragmi {

/// Synthetic key-value retrieval instance: a brace-delimited mapping of
/// UUID-format strings followed by a query for one key. The queried pair
/// sits at query_index (1-based); everything is deterministic per seed.
struct KvInstance {
  struct Pair {
    std::string key;
    std::string value;
  };

  std::vector<Pair> pairs;  // final order, query pair at query_index
  int query_index = 1;
  std::string query_key;
  std::string gold_value;
  std::string mapping_text;  // the brace-delimited literal
  std::string query_text;    // separator + Key/Value query lines
  std::string prompt;        // mapping_text + query_text

  nlohmann::json to_json() const;
};

/// 32 hex digits in 8-4-4-4-12 grouping with a version-4 shape, drawn from
/// the seeded generator (reproducibility, not RFC randomness).
std::string uuid_like(SeededRng& rng);

/// Builds the instance with the queried pair at key_position (1-based). The
/// same seed yields the same pairs and query key for every position, so a
/// position sweep moves one pair through an otherwise fixed mapping.
KvInstance gen_kv(std::uint64_t seed, int n_pairs, int key_position);

struct KvSweepRow {
  int position = 0;  // 1-based
  double logq_given_context = 0.0;
  double answer_logprob = 0.0;
  bool failed = false;
  std::string error;
};

/// Scores log p(query lines | mapping) and log p(gold value | full prompt)
/// at each position. A scorer failure marks that row failed and moves on.
std::vector<KvSweepRow> kv_sweep(const Scorer& scorer, std::uint64_t seed, int n_pairs,
                                 const std::vector<int>& positions);

/// CSV with header position,logq_given_context,answer_logprob. Failed rows
/// are omitted. index_base 0 emits positions as 0-based key locations (the
/// convention of the reference tables), 1 keeps the library indexing.
std::string kv_sweep_csv(const std::vector<KvSweepRow>& rows, int index_base);

}  // namespace ragmi
