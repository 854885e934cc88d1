#include "ragmi/synthetic_kv.hpp"

#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "ragmi/errors.hpp"
#include "ragmi/text_io.hpp"

namespace ragmi {

namespace {

constexpr char kHex[] = "0123456789abcdef";

}  // namespace

std::string uuid_like(SeededRng& rng) {
  std::string out;
  out.reserve(36);
  for (int group : {8, 4, 4, 4, 12}) {
    if (!out.empty()) out += '-';
    for (int i = 0; i < group; ++i) out += kHex[rng.bounded(16)];
  }
  out[14] = '4';                                   // version nibble
  out[19] = kHex[8 + rng.bounded(4)];              // variant nibble 8..b
  return out;
}

nlohmann::json KvInstance::to_json() const {
  nlohmann::json pairs_json = nlohmann::json::array();
  for (const Pair& p : pairs) pairs_json.push_back(nlohmann::json::array({p.key, p.value}));
  return nlohmann::json{{"pairs", pairs_json},
                        {"query_index", query_index},
                        {"query_key", query_key},
                        {"gold_value", gold_value},
                        {"prompt", prompt}};
}

KvInstance gen_kv(std::uint64_t seed, int n_pairs, int key_position) {
  if (n_pairs < 1) throw std::domain_error("gen_kv: need at least one pair");
  if (key_position < 1 || key_position > n_pairs) {
    throw std::domain_error("gen_kv: key_position " + std::to_string(key_position) + " outside 1.." +
                            std::to_string(n_pairs));
  }
  SeededRng rng(seed);
  std::set<std::string> used;
  auto fresh = [&] {
    std::string s = uuid_like(rng);
    while (!used.insert(s).second) s = uuid_like(rng);
    return s;
  };

  // Generated in a position-independent order: the query pair first, then
  // the distractors; the position only affects the final arrangement.
  KvInstance::Pair query_pair{fresh(), fresh()};
  std::vector<KvInstance::Pair> rest;
  for (int i = 1; i < n_pairs; ++i) rest.push_back({fresh(), fresh()});

  KvInstance inst;
  inst.query_index = key_position;
  inst.query_key = query_pair.key;
  inst.gold_value = query_pair.value;
  inst.pairs = std::move(rest);
  inst.pairs.insert(inst.pairs.begin() + (key_position - 1), query_pair);

  std::string mapping = "{\n";
  for (const KvInstance::Pair& p : inst.pairs) {
    mapping += "    \"" + p.key + "\": \n        \"" + p.value + "\",\n";
  }
  mapping += "}";
  inst.mapping_text = std::move(mapping);
  inst.query_text = "\n\nKey: \"" + inst.query_key + "\"\nValue:";
  inst.prompt = inst.mapping_text + inst.query_text;
  return inst;
}

std::vector<KvSweepRow> kv_sweep(const Scorer& scorer, std::uint64_t seed, int n_pairs,
                                 const std::vector<int>& positions) {
  std::vector<KvSweepRow> rows;
  for (int position : positions) {
    KvInstance inst = gen_kv(seed, n_pairs, position);
    KvSweepRow row;
    row.position = position;
    try {
      row.logq_given_context = conditional_logprob(scorer, inst.mapping_text, inst.query_text).total_logprob;
      row.answer_logprob =
          conditional_logprob(scorer, inst.prompt, " \"" + inst.gold_value + "\"").total_logprob;
    } catch (const ScorerError& e) {
      row.failed = true;
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string kv_sweep_csv(const std::vector<KvSweepRow>& rows, int index_base) {
  if (index_base != 0 && index_base != 1) throw std::invalid_argument("kv_sweep_csv: index_base must be 0 or 1");
  std::string out = "position,logq_given_context,answer_logprob\n";
  for (const KvSweepRow& row : rows) {
    if (row.failed) continue;
    out += std::to_string(row.position - (index_base == 0 ? 1 : 0));
    out += ',';
    out += format_double(row.logq_given_context);
    out += ',';
    out += format_double(row.answer_logprob);
    out += '\n';
  }
  return out;
}

}  // namespace ragmi
