#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ragmi/rng.hpp"
#include "ragmi/table_lm.hpp"

namespace ragmi {

/// Joint probability assignment over (context, question, answer) slots. Each
/// entry materializes as the support string context+question+answer; empty
/// slots are allowed (a context with no question, a question with no answer).
struct FixtureSpec {
  struct Entry {
    std::string context;
    std::string question;
    std::string answer;
    double prob = 0.0;
  };

  std::string context;  // designated context c
  std::string question;
  std::string answer;  // correct answer a
  std::vector<std::string> wrong_answers;
  std::vector<Entry> entries;

  static FixtureSpec from_json(const nlohmann::json& j);
  static FixtureSpec from_json_file(const std::filesystem::path& path);
  nlohmann::json to_json() const;
};

/// A finite LM realizing a fixture spec, with the conditional-independence
/// diagnostics and the answer-dependent constant precomputed by enumeration.
///
/// The two independence constraints, with gap patterns written c.gap.a:
///   (6a)  p(q | c gap a)    == p(q | c)
///   (6b)  p(q | c gap abar) == p(q)   for every wrong answer abar that is
///                                     not a prefix of a
/// The log-odds identity additionally needs complete answer support: given
/// the prefix c+q, every support string must continue with one of the
/// declared answers. complete_answer_support reports whether that holds;
/// fixtures violating it (necessarily the ones with positive PMI) build fine
/// but show a nonzero verification gap.
class Prop1Fixture {
 public:
  const TableLm& lm() const { return lm_; }
  const FixtureSpec& spec() const { return spec_; }

  double pmi() const { return pmi_; }
  /// C(a, c): log ratio of the infix mass of the correct answer to the total
  /// infix mass of the non-prefix wrong answers.
  double constant() const { return constant_; }

  double eq6a_residual() const { return eq6a_residual_; }
  double max_eq6b_residual() const { return max_eq6b_residual_; }
  /// Mass of continuations of c+q that start with no declared answer.
  double stray_continuation_mass() const { return stray_mass_; }
  bool complete_answer_support() const { return stray_mass_ <= 1e-12; }

 private:
  friend Prop1Fixture build_fixture(const FixtureSpec& spec, bool enforce_assumption, double tolerance);

  FixtureSpec spec_;
  TableLm lm_{{{std::string(), 1.0}}};
  double pmi_ = 0.0;
  double constant_ = 0.0;
  double eq6a_residual_ = 0.0;
  double max_eq6b_residual_ = 0.0;
  double stray_mass_ = 0.0;
};

/// Materializes the spec and checks both independence constraints by
/// enumeration. With enforce_assumption, a violated constraint raises
/// FixtureError naming the failing equation; otherwise the residuals are
/// recorded on the fixture for inspection.
Prop1Fixture build_fixture(const FixtureSpec& spec, bool enforce_assumption = true, double tolerance = 1e-12);

struct Prop1Report {
  double lhs = 0.0;  // log odds of the correct answer given c+q
  double rhs = 0.0;  // pmi + C
  double pmi = 0.0;
  double constant = 0.0;
  double max_abs_gap = 0.0;

  nlohmann::json to_json() const;
};

/// Computes both sides of the log-odds identity by exact enumeration and
/// reports their gap. Throws FixtureError when p(a | c+q) is 0 or 1.
Prop1Report verify_prop1(const Prop1Fixture& fixture);

/// A random fixture spec satisfying both constraints by construction, with
/// zero stray continuation mass so the identity holds exactly. Alphabet of
/// at most four symbols, strings of at most eight characters.
FixtureSpec make_random_fixture_spec(SeededRng& rng);

/// Perturbs a constraint of an otherwise valid random spec so Eq. 6b fails
/// by roughly delta. Used to show the assumption is load-bearing.
FixtureSpec make_violating_fixture_spec(SeededRng& rng, double delta);

struct FamilyReport {
  int fixtures = 0;
  double max_abs_gap = 0.0;
  double min_pmi = 0.0;
  double max_pmi = 0.0;

  nlohmann::json to_json() const;
};

/// Builds and verifies `count` random fixtures; returns the worst gap seen.
FamilyReport verify_random_family(int count, std::uint64_t seed);

}  // namespace ragmi
