#include "ragmi/prop1.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include <nlohmann/json.hpp>

#include "ragmi/errors.hpp"

namespace ragmi {

namespace {

bool is_prefix(const std::string& maybe_prefix, const std::string& s) {
  return maybe_prefix.size() <= s.size() && s.compare(0, maybe_prefix.size(), maybe_prefix) == 0;
}

}  // namespace

FixtureSpec FixtureSpec::from_json(const nlohmann::json& j) {
  FixtureSpec spec;
  spec.context = j.at("context").get<std::string>();
  spec.question = j.at("question").get<std::string>();
  spec.answer = j.at("answer").get<std::string>();
  spec.wrong_answers = j.at("wrong_answers").get<std::vector<std::string>>();
  for (const auto& e : j.at("entries")) {
    spec.entries.push_back({e.value("context", std::string()), e.value("question", std::string()),
                            e.value("answer", std::string()), e.at("prob").get<double>()});
  }
  return spec;
}

FixtureSpec FixtureSpec::from_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open fixture spec " + path.string());
  nlohmann::json j;
  in >> j;
  return from_json(j);
}

nlohmann::json FixtureSpec::to_json() const {
  nlohmann::json entries_json = nlohmann::json::array();
  for (const Entry& e : entries) {
    entries_json.push_back(
        {{"context", e.context}, {"question", e.question}, {"answer", e.answer}, {"prob", e.prob}});
  }
  return nlohmann::json{{"context", context},
                        {"question", question},
                        {"answer", answer},
                        {"wrong_answers", wrong_answers},
                        {"entries", entries_json}};
}

Prop1Fixture build_fixture(const FixtureSpec& spec, bool enforce_assumption, double tolerance) {
  if (spec.question.empty()) throw FixtureError("fixture question must be non-empty");
  if (spec.answer.empty()) throw FixtureError("fixture answer must be non-empty");

  // Merge duplicate support strings.
  std::map<std::string, double> merged;
  for (const FixtureSpec::Entry& e : spec.entries) {
    if (e.prob < 0.0) throw FixtureError("fixture entry has negative probability");
    if (e.prob == 0.0) continue;
    merged[e.context + e.question + e.answer] += e.prob;
  }
  std::vector<std::pair<std::string, double>> support(merged.begin(), merged.end());

  Prop1Fixture fixture;
  fixture.spec_ = spec;
  fixture.lm_ = TableLm(std::move(support));
  const TableLm& lm = fixture.lm_;
  const std::string& c = spec.context;
  const std::string& q = spec.question;
  const std::string& a = spec.answer;

  double p_c = lm.prefix_prob(c);
  double p_q = lm.prefix_prob(q);
  double p_cq = lm.prefix_prob(c + q);
  double correct_mass = lm.infix_prob(c, a);
  if (p_c <= 0.0 || p_q <= 0.0 || p_cq <= 0.0 || correct_mass <= 0.0) {
    throw FixtureError("degenerate fixture: a required prefix or infix mass is zero");
  }

  double s = p_cq / p_c;   // p(q | c)
  double t = p_q;          // p(q)
  fixture.eq6a_residual_ = lm.prefix_prob(c + q + a) / correct_mass - s;
  if (enforce_assumption && std::abs(fixture.eq6a_residual_) > tolerance) {
    throw FixtureError("Assumption 1 violated: Eq. 6a residual " + std::to_string(fixture.eq6a_residual_));
  }

  double wrong_mass = 0.0;
  fixture.max_eq6b_residual_ = 0.0;
  for (const std::string& wrong : spec.wrong_answers) {
    if (wrong.empty() || is_prefix(wrong, a)) continue;  // prefixes of a are exempt
    double mass = lm.infix_prob(c, wrong);
    if (mass <= 0.0) throw FixtureError("degenerate fixture: wrong answer '" + wrong + "' has zero infix mass");
    double residual = lm.prefix_prob(c + q + wrong) / mass - t;
    fixture.max_eq6b_residual_ = std::max(fixture.max_eq6b_residual_, std::abs(residual));
    if (enforce_assumption && std::abs(residual) > tolerance) {
      throw FixtureError("Assumption 1 violated: Eq. 6b residual " + std::to_string(residual) + " for answer '" +
                         wrong + "'");
    }
    wrong_mass += mass;
  }
  if (wrong_mass <= 0.0) {
    throw FixtureError("degenerate fixture: no usable wrong answer (all are prefixes of the correct one)");
  }

  fixture.pmi_ = std::log(s) - std::log(t);
  fixture.constant_ = std::log(correct_mass) - std::log(wrong_mass);

  // Continuations of c+q that begin with no declared answer; nonzero mass
  // here breaks the complement enumeration behind the log-odds identity.
  double stray = 0.0;
  for (const auto& [str, prob] : lm.entries()) {
    if (!is_prefix(c + q, str)) continue;
    std::string rest = str.substr(c.size() + q.size());
    bool covered = is_prefix(a, rest);
    for (const std::string& wrong : spec.wrong_answers) {
      if (!wrong.empty() && !is_prefix(wrong, a)) covered = covered || is_prefix(wrong, rest);
    }
    if (!covered) stray += prob;
  }
  fixture.stray_mass_ = stray;
  return fixture;
}

nlohmann::json Prop1Report::to_json() const {
  return nlohmann::json{
      {"lhs", lhs}, {"rhs", rhs}, {"pmi", pmi}, {"C", constant}, {"max_abs_gap", max_abs_gap}};
}

Prop1Report verify_prop1(const Prop1Fixture& fixture) {
  const TableLm& lm = fixture.lm();
  const FixtureSpec& spec = fixture.spec();
  double p_cq = lm.prefix_prob(spec.context + spec.question);
  double p_acq = lm.prefix_prob(spec.context + spec.question + spec.answer) / p_cq;
  if (p_acq <= 0.0 || p_acq >= 1.0) {
    throw FixtureError("degenerate fixture: p(a | c+q) = " + std::to_string(p_acq));
  }
  Prop1Report report;
  report.lhs = std::log(p_acq) - std::log1p(-p_acq);
  report.pmi = fixture.pmi();
  report.constant = fixture.constant();
  report.rhs = report.pmi + report.constant;
  report.max_abs_gap = std::abs(report.lhs - report.rhs);
  return report;
}

FixtureSpec make_random_fixture_spec(SeededRng& rng) {
  FixtureSpec spec;
  spec.context = rng.unit() < 0.5 ? "c" : "cc";
  spec.question = rng.unit() < 0.5 ? "q" : "qq";
  bool long_answer = rng.unit() < 0.5;
  spec.answer = long_answer ? "aa" : "a";
  // Wrong answers must neither contain the correct answer as a substring nor
  // extend it, or the infix masses would mix; {"ba","bb"} is safe only
  // against "aa".
  if (long_answer && rng.unit() < 0.5) {
    spec.wrong_answers = {"ba", "bb"};
  } else {
    spec.wrong_answers = {rng.unit() < 0.5 ? "b" : "bb"};
  }
  // A truncated prefix of the correct answer, exempt from Eq. 6b and from
  // the constant's denominator; only ever follows non-question slots.
  bool with_prefix_answer = long_answer && rng.unit() < 0.5;
  if (with_prefix_answer) spec.wrong_answers.push_back("a");

  double gamma_c = rng.uniform(0.3, 0.7);  // total mass of the c block
  std::vector<double> weights;
  std::size_t wrong_count = spec.wrong_answers.size() - (with_prefix_answer ? 1 : 0);
  for (std::size_t i = 0; i < wrong_count + 1; ++i) weights.push_back(rng.uniform(0.2, 1.0));
  double slack_weight = rng.unit() < 0.8 ? rng.uniform(0.1, 1.0) : 0.0;  // zero slack means zero PMI
  double prefix_weight = with_prefix_answer ? rng.uniform(0.1, 0.5) : 0.0;
  double weight_total = slack_weight + prefix_weight;
  for (double w : weights) weight_total += w;

  double correct_mass = gamma_c * weights[0] / weight_total;
  std::vector<double> wrong_masses;
  double wrong_total = 0.0;
  for (std::size_t i = 0; i < wrong_count; ++i) {
    wrong_masses.push_back(gamma_c * weights[i + 1] / weight_total);
    wrong_total += wrong_masses.back();
  }
  double slack = gamma_c * slack_weight / weight_total;
  double prefix_mass = gamma_c * prefix_weight / weight_total;

  double t = rng.uniform(0.05, 0.45) * (1.0 - gamma_c);  // p(q)
  double s = t * wrong_total / (wrong_total + slack + prefix_mass);  // forced by the constraints

  spec.entries.push_back({spec.context, spec.question, spec.answer, correct_mass * s});
  spec.entries.push_back({spec.context, "", spec.answer, correct_mass * (1.0 - s)});
  for (std::size_t i = 0; i < wrong_count; ++i) {
    spec.entries.push_back({spec.context, spec.question, spec.wrong_answers[i], wrong_masses[i] * t});
    spec.entries.push_back({spec.context, "", spec.wrong_answers[i], wrong_masses[i] * (1.0 - t)});
  }
  if (slack > 0.0) spec.entries.push_back({spec.context, "", "", slack});
  if (prefix_mass > 0.0) spec.entries.push_back({spec.context, "", "a", prefix_mass});

  // Question-at-start block carrying p(q), then filler to make the total 1.
  spec.entries.push_back({"", spec.question, spec.answer, t * 0.5});
  spec.entries.push_back({"", spec.question, spec.wrong_answers[0], t * 0.5});
  double used = 0.0;
  for (const FixtureSpec::Entry& e : spec.entries) used += e.prob;
  spec.entries.push_back({"", "", spec.wrong_answers[0], 1.0 - used});
  return spec;
}

FixtureSpec make_violating_fixture_spec(SeededRng& rng, double delta) {
  FixtureSpec spec = make_random_fixture_spec(rng);
  // Shrink the wrong answer's infix mass without touching any question
  // marginal: move answerless-row mass into bare-context termination. Only
  // Eq. 6b is disturbed.
  const std::string& wrong = spec.wrong_answers[0];
  FixtureSpec::Entry* without_q = nullptr;
  for (FixtureSpec::Entry& e : spec.entries) {
    if (e.context == spec.context && e.question.empty() && e.answer == wrong) without_q = &e;
  }
  double moved = std::min(delta, without_q->prob * 0.9);
  without_q->prob -= moved;
  spec.entries.push_back({spec.context, "", "", moved});
  return spec;
}

nlohmann::json FamilyReport::to_json() const {
  return nlohmann::json{
      {"fixtures", fixtures}, {"max_abs_gap", max_abs_gap}, {"min_pmi", min_pmi}, {"max_pmi", max_pmi}};
}

FamilyReport verify_random_family(int count, std::uint64_t seed) {
  SeededRng rng(seed);
  FamilyReport report;
  report.fixtures = count;
  for (int i = 0; i < count; ++i) {
    Prop1Fixture fixture = build_fixture(make_random_fixture_spec(rng));
    Prop1Report single = verify_prop1(fixture);
    report.max_abs_gap = std::max(report.max_abs_gap, single.max_abs_gap);
    report.min_pmi = i == 0 ? single.pmi : std::min(report.min_pmi, single.pmi);
    report.max_pmi = i == 0 ? single.pmi : std::max(report.max_pmi, single.pmi);
  }
  return report;
}

}  // namespace ragmi
