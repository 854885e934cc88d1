#include "ragmi/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <thread>

#include <nlohmann/json.hpp>

#include "ragmi/errors.hpp"
#include "ragmi/reorder.hpp"
#include "ragmi/rng.hpp"
#include "ragmi/text_io.hpp"

namespace ragmi {

namespace {

std::size_t argmax_index(const std::vector<double>& values) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (values[k] > values[best]) best = k;
  }
  return best;
}

std::vector<int> gold_first_order(int size, int gold) {
  std::vector<int> order{gold};
  for (int d = 1; d <= size; ++d) {
    if (d != gold) order.push_back(d);
  }
  return order;
}

std::vector<int> gold_at_position_order(int size, int gold, int position) {
  std::vector<int> order;
  for (int d = 1; d <= size; ++d) {
    if (d != gold) order.push_back(d);
  }
  order.insert(order.begin() + (position - 1), gold);
  return order;
}

InstanceRecord evaluate_instance(const Instance& instance, const Scorer& scorer, const PromptTemplate& tmpl,
                                 const RunOptions& options) {
  InstanceRecord rec;
  rec.id = instance.id;
  int size = static_cast<int>(instance.documents.size());
  Permutation base = Permutation::identity(size);

  if (options.strategy == Strategy::gold_sweep) {
    int gold = gold_position(instance.documents);
    std::string continuation = tmpl.question_continuation(instance.question);
    double unconditional = conditional_logprob(scorer, tmpl.scoring_prefix({}), continuation).total_logprob;
    rec.profile.question = instance.question;
    rec.profile.log_unconditional = {unconditional};
    for (int pos = 1; pos <= size; ++pos) {
      Permutation arrangement(gold_at_position_order(size, gold, pos));
      std::vector<Document> ordered = arrange(instance.documents, arrangement);
      double cond = conditional_logprob(scorer, tmpl.scoring_prefix(ordered), continuation).total_logprob;
      rec.profile.log_conditional.push_back(cond);
      rec.profile.pmi.push_back(cond - unconditional);
      std::string response =
          scorer.generate(tmpl.render_prompt_with_stub(ordered, instance.question), options.max_tokens);
      rec.sweep_accuracy.push_back(
          static_cast<double>(substring_accuracy(response, instance.answers, options.exact_match)));
    }
    rec.sweep_pmi = rec.profile.pmi;
    rec.k_star = static_cast<int>(argmax_index(rec.sweep_pmi)) + 1;
    rec.chosen = gold_at_position_order(size, gold, rec.k_star);
    rec.accuracy = std::accumulate(rec.sweep_accuracy.begin(), rec.sweep_accuracy.end(), 0.0) /
                   static_cast<double>(size);
  } else {
    rec.profile = pmi_profile(scorer, tmpl, instance.documents, instance.question, base);
    rec.k_star = static_cast<int>(argmax_index(rec.profile.pmi)) + 1;
    Permutation chosen = base;
    switch (options.strategy) {
      case Strategy::identity:
        break;
      case Strategy::random:
        chosen = random_baseline(mix_seed(options.seed, instance.id), size, 1)[0];
        break;
      case Strategy::pmi_argmax:
        chosen = method1_select(rec.profile, base).chosen;
        break;
      case Strategy::curvature:
        chosen = method2_reorder(rec.profile, base, options.place_runner_up_last).chosen;
        break;
      case Strategy::gold_first:
        chosen = Permutation(gold_first_order(size, gold_position(instance.documents)));
        break;
      case Strategy::gold_sweep:
        break;  // handled above
    }
    rec.chosen = chosen.values();
    std::vector<Document> ordered = arrange(instance.documents, chosen);
    rec.generated =
        scorer.generate(tmpl.render_prompt_with_stub(ordered, instance.question), options.max_tokens);
    rec.accuracy = static_cast<double>(substring_accuracy(rec.generated, instance.answers, options.exact_match));
  }

  rec.pmi_max = *std::max_element(rec.profile.pmi.begin(), rec.profile.pmi.end());
  rec.pmi_min = *std::min_element(rec.profile.pmi.begin(), rec.profile.pmi.end());
  rec.rho = rho_m(rec.profile);
  return rec;
}

}  // namespace

Strategy strategy_from_string(const std::string& s) {
  if (s == "identity") return Strategy::identity;
  if (s == "random") return Strategy::random;
  if (s == "pmi_argmax" || s == "pmi") return Strategy::pmi_argmax;
  if (s == "curvature") return Strategy::curvature;
  if (s == "gold_first") return Strategy::gold_first;
  if (s == "gold_sweep") return Strategy::gold_sweep;
  throw ConfigError("unknown strategy '" + s + "'");
}

std::string to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::identity: return "identity";
    case Strategy::random: return "random";
    case Strategy::pmi_argmax: return "pmi_argmax";
    case Strategy::curvature: return "curvature";
    case Strategy::gold_first: return "gold_first";
    case Strategy::gold_sweep: return "gold_sweep";
  }
  return "unknown";
}

nlohmann::json InstanceRecord::to_json() const {
  nlohmann::json j;
  j["id"] = id;
  if (failed) {
    j["failed"] = true;
    j["error"] = error;
    return j;
  }
  j["chosen"] = chosen;
  j["k_star"] = k_star;
  j["pmi_max"] = pmi_max;
  j["pmi_min"] = pmi_min;
  j["rho"] = rho;
  j["accuracy"] = accuracy;
  j["generated"] = generated;
  j["profile"] = profile.to_json();
  if (!sweep_pmi.empty()) {
    j["sweep_pmi"] = sweep_pmi;
    j["sweep_accuracy"] = sweep_accuracy;
  }
  return j;
}

InstanceRecord InstanceRecord::from_json(const nlohmann::json& j) {
  InstanceRecord rec;
  rec.id = j.at("id").get<std::string>();
  if (j.value("failed", false)) {
    rec.failed = true;
    rec.error = j.value("error", std::string());
    return rec;
  }
  rec.chosen = j.at("chosen").get<std::vector<int>>();
  rec.k_star = j.at("k_star").get<int>();
  rec.pmi_max = j.at("pmi_max").get<double>();
  rec.pmi_min = j.at("pmi_min").get<double>();
  rec.rho = j.at("rho").get<double>();
  rec.accuracy = j.at("accuracy").get<double>();
  rec.generated = j.value("generated", std::string());
  rec.profile = PmiProfile::from_json(j.at("profile"));
  if (j.contains("sweep_pmi")) {
    rec.sweep_pmi = j.at("sweep_pmi").get<std::vector<double>>();
    rec.sweep_accuracy = j.at("sweep_accuracy").get<std::vector<double>>();
  }
  return rec;
}

EvalAggregates compute_aggregates(const std::vector<InstanceRecord>& records) {
  EvalAggregates agg;
  agg.total = static_cast<int>(records.size());
  std::vector<const InstanceRecord*> ok;
  for (const InstanceRecord& rec : records) {
    if (rec.failed) ++agg.failed;
    else ok.push_back(&rec);
  }
  if (ok.empty()) return agg;

  double sum = 0.0;
  for (const InstanceRecord* rec : ok) sum += rec->accuracy;
  agg.mean_accuracy = sum / static_cast<double>(ok.size());

  if (ok.size() >= 3) {
    std::vector<double> rhos;
    for (const InstanceRecord* rec : ok) rhos.push_back(rec->rho);
    std::vector<int> bins = tertile_bins(rhos);
    agg.bin_counts.assign(3, 0);
    agg.bin_accuracy.assign(3, 0.0);
    for (std::size_t i = 0; i < bins.size(); ++i) {
      agg.bin_counts[bins[i] - 1] += 1;
      agg.bin_accuracy[bins[i] - 1] += ok[i]->accuracy;
    }
    for (int b = 0; b < 3; ++b) {
      if (agg.bin_counts[b] > 0) agg.bin_accuracy[b] /= static_cast<double>(agg.bin_counts[b]);
    }
  }

  bool uniform_sweep = !ok.front()->sweep_pmi.empty();
  std::size_t sweep_size = ok.front()->sweep_pmi.size();
  for (const InstanceRecord* rec : ok) {
    uniform_sweep = uniform_sweep && rec->sweep_pmi.size() == sweep_size;
  }
  if (uniform_sweep) {
    agg.eta.assign(sweep_size, 0.0);
    agg.position_accuracy.assign(sweep_size, 0.0);
    std::vector<SweepRecord> sweep_records;
    for (const InstanceRecord* rec : ok) {
      for (std::size_t p = 0; p < sweep_size; ++p) {
        agg.eta[p] += rec->sweep_pmi[p];
        agg.position_accuracy[p] += rec->sweep_accuracy[p];
      }
      sweep_records.push_back({rec->sweep_pmi, rec->sweep_accuracy});
    }
    for (std::size_t p = 0; p < sweep_size; ++p) {
      agg.eta[p] /= static_cast<double>(ok.size());
      agg.position_accuracy[p] /= static_cast<double>(ok.size());
    }
    agg.paired = highest_lowest_comparison(sweep_records);
    agg.has_paired = true;
  }
  return agg;
}

EvalReport run_experiment(std::span<const Instance> dataset, const Scorer& scorer, const PromptTemplate& tmpl,
                          const RunOptions& options) {
  if (dataset.empty()) throw ConfigError("run_experiment: dataset is empty");
  if (options.strategy == Strategy::gold_first || options.strategy == Strategy::gold_sweep) {
    for (const Instance& inst : dataset) {
      if (gold_position(inst.documents) == 0) {
        throw ConfigError("strategy " + to_string(options.strategy) + " needs gold flags; instance '" +
                          inst.id + "' has none");
      }
    }
  }

  std::vector<InstanceRecord> records(dataset.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto work = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= dataset.size()) return;
      try {
        records[i] = evaluate_instance(dataset[i], scorer, tmpl, options);
      } catch (const ScorerError& e) {
        records[i].id = dataset[i].id;
        records[i].failed = true;
        records[i].error = e.what();
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  int workers = std::max(1, options.workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  std::stable_sort(records.begin(), records.end(),
                   [](const InstanceRecord& a, const InstanceRecord& b) { return a.id < b.id; });

  EvalReport report;
  report.strategy = to_string(options.strategy);
  report.seed = options.seed;
  report.exact_match = options.exact_match;
  report.records = std::move(records);
  report.aggregates = compute_aggregates(report.records);
  return report;
}

nlohmann::json EvalReport::to_json() const {
  nlohmann::json agg;
  agg["total"] = aggregates.total;
  agg["failed"] = aggregates.failed;
  agg["mean_accuracy"] = aggregates.mean_accuracy;
  if (!aggregates.bin_counts.empty()) {
    agg["bin_counts"] = aggregates.bin_counts;
    agg["bin_accuracy"] = aggregates.bin_accuracy;
  }
  if (!aggregates.eta.empty()) {
    agg["eta"] = aggregates.eta;
    agg["position_accuracy"] = aggregates.position_accuracy;
  }
  if (aggregates.has_paired) {
    agg["paired"] = {{"highest", aggregates.paired.highest}, {"lowest", aggregates.paired.lowest}};
  }
  nlohmann::json recs = nlohmann::json::array();
  for (const InstanceRecord& rec : records) recs.push_back(rec.to_json());
  return nlohmann::json{{"strategy", strategy},
                        {"seed", seed},
                        {"exact_match", exact_match},
                        {"aggregates", agg},
                        {"records", recs}};
}

EvalReport EvalReport::from_json(const nlohmann::json& j) {
  EvalReport report;
  report.strategy = j.at("strategy").get<std::string>();
  report.seed = j.at("seed").get<std::uint64_t>();
  report.exact_match = j.value("exact_match", false);
  for (const auto& rec : j.at("records")) report.records.push_back(InstanceRecord::from_json(rec));
  report.aggregates = compute_aggregates(report.records);
  return report;
}

std::string per_instance_csv(const EvalReport& report) {
  std::string out = "id,strategy,k_star,pmi_max,pmi_min,rho,accuracy\n";
  for (const InstanceRecord& rec : report.records) {
    if (rec.failed) continue;
    out += csv_field(rec.id) + ',' + report.strategy + ',' + std::to_string(rec.k_star) + ',' +
           format_double(rec.pmi_max) + ',' + format_double(rec.pmi_min) + ',' + format_double(rec.rho) +
           ',' + format_double(rec.accuracy) + '\n';
  }
  return out;
}

std::string curves_csv(const EvalReport& report) {
  std::string out = "position,eta,accuracy\n";
  for (std::size_t p = 0; p < report.aggregates.eta.size(); ++p) {
    out += std::to_string(p + 1) + ',' + format_double(report.aggregates.eta[p]) + ',' +
           format_double(report.aggregates.position_accuracy[p]) + '\n';
  }
  return out;
}

void write_report(const EvalReport& report, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  write_text_file(out_dir / "report.json", report.to_json().dump(2) + "\n");
  write_text_file(out_dir / "per_instance.csv", per_instance_csv(report));
  write_text_file(out_dir / "curves.csv", curves_csv(report));
}

EvalReport load_report(const std::filesystem::path& report_json_path) {
  nlohmann::json j = nlohmann::json::parse(read_text_file(report_json_path));
  return EvalReport::from_json(j);
}

UShapeCheck u_shape_check(const std::vector<double>& curve) {
  UShapeCheck check;
  if (curve.size() < 3) {
    check.holds = true;
    return check;
  }
  check.endpoint_mean = (curve.front() + curve.back()) / 2.0;
  double sum = 0.0;
  for (std::size_t i = 1; i + 1 < curve.size(); ++i) sum += curve[i];
  check.interior_mean = sum / static_cast<double>(curve.size() - 2);
  check.holds = check.endpoint_mean >= check.interior_mean;
  return check;
}

}  // namespace ragmi
