#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ragmi/dataset.hpp"
#include "ragmi/metrics.hpp"
#include "ragmi/pmi.hpp"
#include "ragmi/prompt_template.hpp"
#include "ragmi/scorer.hpp"

namespace ragmi {

/// identity: keep the retriever order. random: one seeded shuffle per
/// instance. pmi_argmax / curvature: the two reordering methods. gold_first:
/// gold document moved to the front (upper bound; needs gold flags).
/// gold_sweep: evaluate every gold position and record per-position curves.
enum class Strategy { identity, random, pmi_argmax, curvature, gold_first, gold_sweep };

Strategy strategy_from_string(const std::string& s);
std::string to_string(Strategy strategy);

struct RunOptions {
  Strategy strategy = Strategy::identity;
  std::uint64_t seed = 0;
  int workers = 1;
  int max_tokens = 100;
  bool exact_match = false;          // disable answer normalization
  bool place_runner_up_last = false; // curvature variant
};

struct InstanceRecord {
  std::string id;
  bool failed = false;
  std::string error;

  std::vector<int> chosen;  // 1-based document order used for generation
  int k_star = 1;           // argmax rotation (or gold position) of the profile
  double pmi_max = 0.0;
  double pmi_min = 0.0;
  double rho = 0.0;
  double accuracy = 0.0;  // per-position mean for gold_sweep
  std::string generated;  // single-arrangement strategies only
  PmiProfile profile;

  // gold_sweep only: per-gold-position values.
  std::vector<double> sweep_pmi;
  std::vector<double> sweep_accuracy;

  nlohmann::json to_json() const;
  static InstanceRecord from_json(const nlohmann::json& j);
};

struct EvalAggregates {
  int total = 0;
  int failed = 0;
  double mean_accuracy = 0.0;

  // Tertile binning of per-instance mean PMI; empty when fewer than three
  // instances succeeded.
  std::vector<int> bin_counts;
  std::vector<double> bin_accuracy;

  // gold_sweep only (uniform K): mean PMI and accuracy per gold position,
  // plus the highest-vs-lowest PMI comparison.
  std::vector<double> eta;
  std::vector<double> position_accuracy;
  bool has_paired = false;
  PairedMeans paired;
};

struct EvalReport {
  std::string strategy;
  std::uint64_t seed = 0;
  bool exact_match = false;
  std::vector<InstanceRecord> records;  // sorted by id
  EvalAggregates aggregates;

  nlohmann::json to_json() const;
  static EvalReport from_json(const nlohmann::json& j);
};

/// Evaluates every instance under the strategy: score the rotation profile,
/// choose an arrangement, generate greedily and grade the response.
/// Instances run concurrently up to options.workers; scorer failures are
/// recorded per instance and excluded from aggregates. Output is sorted by
/// instance id, so reports are byte-stable for deterministic scorers.
EvalReport run_experiment(std::span<const Instance> dataset, const Scorer& scorer, const PromptTemplate& tmpl,
                          const RunOptions& options);

/// Recomputes aggregates from records (also used to cross-check emitted
/// artifacts).
EvalAggregates compute_aggregates(const std::vector<InstanceRecord>& records);

/// id,strategy,k_star,pmi_max,pmi_min,rho,accuracy for each successful
/// record.
std::string per_instance_csv(const EvalReport& report);

/// position,eta,accuracy rows (header only for non-sweep reports).
std::string curves_csv(const EvalReport& report);

/// Writes report.json, per_instance.csv and curves.csv into out_dir.
void write_report(const EvalReport& report, const std::filesystem::path& out_dir);

EvalReport load_report(const std::filesystem::path& report_json_path);

struct UShapeCheck {
  double endpoint_mean = 0.0;
  double interior_mean = 0.0;
  bool holds = false;
};

/// Qualitative U-shape: mean of the two endpoint values >= mean of the
/// interior. Curves shorter than three positions hold vacuously.
UShapeCheck u_shape_check(const std::vector<double>& curve);

}  // namespace ragmi
