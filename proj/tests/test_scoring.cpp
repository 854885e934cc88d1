#include <doctest.h>

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ragmi/errors.hpp"
#include "ragmi/pmi.hpp"
#include "ragmi/prompt_template.hpp"
#include "ragmi/reorder.hpp"
#include "ragmi/rng.hpp"
#include "ragmi/table_lm.hpp"
#include "support/fake_scorers.hpp"

using ragmi::BlockOrder;
using ragmi::Document;
using ragmi::Permutation;
using ragmi::PromptTemplate;
using ragmi::testing::CountingScorer;
using ragmi::testing::LambdaScorer;

namespace {

std::vector<Document> pier_docs() {
  return {
      {"d1", "Southend Pier", "Southend Pier is a major landmark.", true},
      {"d2", "Llandudno Pier", "Llandudno Pier is a Grade II* listed pier.", false},
      {"d3", "Garth Pier", "Garth Pier is a Grade II listed structure.", false},
  };
}

// Tiny template whose rendered strings stay short enough for table fixtures.
PromptTemplate tiny_template() {
  PromptTemplate::Fields f;
  f.instruction = "I";
  f.document_block_format = "[{index}|{title}|{text}]";
  f.question_format = "Q:{question}";
  f.answer_stub = "A:";
  return PromptTemplate(std::move(f));
}

}  // namespace

TEST_CASE("default template reproduces the documented block format") {
  PromptTemplate tmpl = PromptTemplate::nq_open_default();
  std::string question = "what is the longest pier in the uk";
  std::string empty_context = tmpl.render_prompt({}, question);
  CHECK(empty_context.find("Write a high-quality answer") == 0);
  CHECK(empty_context.find("Question: what is the longest pier in the uk") != std::string::npos);
  CHECK(empty_context.find("Document [") == std::string::npos);

  auto docs = pier_docs();
  std::string rendered = tmpl.render_prompt(docs, question);
  CHECK(rendered.find("Document [1](Title: Southend Pier) Southend Pier is a major landmark.") !=
        std::string::npos);
  CHECK(rendered.find("Document [2](Title: Llandudno Pier)") != std::string::npos);
  CHECK(rendered.find("Question: what is the longest pier in the uk") > rendered.find("Document [3]"));

  std::string with_stub = tmpl.render_prompt_with_stub(docs, question);
  std::string stub_line = "According to the provided documents, the answer is";
  REQUIRE(with_stub.size() >= stub_line.size());
  CHECK(with_stub.substr(with_stub.size() - stub_line.size()) == stub_line);
  CHECK((with_stub + " Southend Pier.").find("the answer is Southend Pier.") != std::string::npos);
}

TEST_CASE("eli5 template carries the colon block variant") {
  PromptTemplate tmpl = PromptTemplate::eli5_default();
  auto docs = pier_docs();
  std::string rendered = tmpl.render_prompt(docs, "why");
  CHECK(rendered.find("Document [1](Title: Southend Pier): Southend Pier") != std::string::npos);
  CHECK(rendered.find("Instruction: Write an accurate, engaging, and concise answer") == 0);
  CHECK(tmpl.answer_leadin().empty());
}

TEST_CASE("question-first order swaps the blocks") {
  PromptTemplate::Fields f = PromptTemplate::nq_open_default().fields();
  f.order = BlockOrder::question_then_context;
  PromptTemplate tmpl(std::move(f));
  auto docs = pier_docs();
  std::string rendered = tmpl.render_prompt(docs, "q");
  CHECK(rendered.find("Question: q") < rendered.find("Document [1]"));
}

TEST_CASE("templates with malformed placeholders are rejected") {
  PromptTemplate::Fields f = PromptTemplate::nq_open_default().fields();
  f.document_block_format = "Document [{index}] {text}";  // no {title}
  CHECK_THROWS_AS(PromptTemplate{f}, ragmi::ConfigError);
  f = PromptTemplate::nq_open_default().fields();
  f.document_block_format = "{title}{title}{index}{text}";
  CHECK_THROWS_AS(PromptTemplate{f}, ragmi::ConfigError);
  f = PromptTemplate::nq_open_default().fields();
  f.question_format = "Question:";
  CHECK_THROWS_AS(PromptTemplate{f}, ragmi::ConfigError);
}

TEST_CASE("template json round trip preserves every field") {
  PromptTemplate tmpl = PromptTemplate::eli5_default();
  PromptTemplate back = PromptTemplate::from_json(tmpl.to_json());
  CHECK(back.to_json() == tmpl.to_json());
}

TEST_CASE("rendering is injective over document rotations") {
  PromptTemplate tmpl = PromptTemplate::nq_open_default();
  auto docs = pier_docs();
  std::set<std::string> rendered;
  for (const Permutation& rot : ragmi::cyclic_group(Permutation::identity(3))) {
    rendered.insert(tmpl.render_prompt(ragmi::arrange(docs, rot), "q"));
  }
  CHECK(rendered.size() == 3);
}

TEST_CASE("context-independent scorers give all-zero pmi") {
  LambdaScorer scorer([](const std::string&, const std::string& cont) {
    return -0.01 * static_cast<double>(cont.size());
  });
  auto docs = pier_docs();
  ragmi::PmiProfile profile =
      ragmi::pmi_profile(scorer, PromptTemplate::nq_open_default(), docs, "q", Permutation::identity(3));
  REQUIRE(profile.size() == 3);
  for (double v : profile.pmi) CHECK(v == doctest::Approx(0.0));
  for (std::size_t k = 0; k < profile.size(); ++k) {
    CHECK(profile.pmi[k] ==
          doctest::Approx(profile.log_conditional[k] - profile.unconditional_for(k)).epsilon(1e-12));
  }
}

TEST_CASE("pmi profile issues K+1 scorer calls and K=1 yields one entry") {
  LambdaScorer inner([](const std::string&, const std::string&) { return -1.0; });
  CountingScorer counter(inner);
  auto docs = pier_docs();
  ragmi::pmi_profile(counter, PromptTemplate::nq_open_default(), docs, "q", Permutation::identity(3));
  CHECK(counter.score_calls.load() == 4);

  std::vector<Document> one = {docs[0]};
  ragmi::PmiProfile profile =
      ragmi::pmi_profile(counter, PromptTemplate::nq_open_default(), one, "q", Permutation::identity(1));
  CHECK(profile.size() == 1);
}

TEST_CASE("pmi matches direct enumeration over a table fixture") {
  PromptTemplate tmpl = tiny_template();
  std::vector<Document> docs = {{"d1", "t", "x", {}}, {"d2", "u", "y", {}}};
  Permutation base = Permutation::identity(2);
  std::string qpart = tmpl.question_continuation("q");

  std::vector<std::string> prefixes;
  prefixes.push_back(tmpl.scoring_prefix({}));
  std::vector<Permutation> rotations = ragmi::cyclic_group(base);
  for (const Permutation& rot : rotations) {
    prefixes.push_back(tmpl.scoring_prefix(ragmi::arrange(docs, rot)));
  }

  // Mass assignment: each prefix continues with the question part with a
  // different conditional probability.
  std::vector<double> question_share = {0.20, 0.60, 0.30};
  std::vector<std::pair<std::string, double>> entries;
  double block = 1.0 / static_cast<double>(prefixes.size());
  for (std::size_t i = 0; i < prefixes.size(); ++i) {
    entries.emplace_back(prefixes[i] + qpart, block * question_share[i]);
    entries.emplace_back(prefixes[i] + "!", block * (1.0 - question_share[i]));
  }
  ragmi::TableLmScorer scorer{ragmi::TableLm(entries)};

  ragmi::PmiProfile profile = ragmi::pmi_profile(scorer, tmpl, docs, "q", base);
  const ragmi::TableLm& lm = scorer.lm();
  double unconditional = lm.prefix_prob(prefixes[0] + qpart) / lm.prefix_prob(prefixes[0]);
  for (std::size_t k = 0; k < 2; ++k) {
    double conditional = lm.prefix_prob(prefixes[k + 1] + qpart) / lm.prefix_prob(prefixes[k + 1]);
    CHECK(profile.pmi[k] == doctest::Approx(std::log(conditional / unconditional)).epsilon(1e-9));
  }

  // Token-level additivity: pmi equals the summed per-character gaps.
  ragmi::ScoreResult with_ctx = ragmi::conditional_logprob(scorer, prefixes[1], qpart);
  ragmi::ScoreResult no_ctx = ragmi::conditional_logprob(scorer, prefixes[0], qpart);
  REQUIRE(with_ctx.token_logprobs.size() == no_ctx.token_logprobs.size());
  double token_sum = 0.0;
  for (std::size_t i = 0; i < with_ctx.token_logprobs.size(); ++i) {
    token_sum += with_ctx.token_logprobs[i].logprob - no_ctx.token_logprobs[i].logprob;
  }
  CHECK(token_sum == doctest::Approx(profile.pmi[0]).epsilon(1e-9));
}

TEST_CASE("shared-prior shifts move every pmi entry equally and keep the argmax") {
  ragmi::PmiProfile profile;
  profile.question = "q";
  profile.log_conditional = {-2.89, -2.52, -3.10};
  profile.log_unconditional = {-3.0};
  for (double lc : profile.log_conditional) profile.pmi.push_back(lc - profile.log_unconditional[0]);

  ragmi::PmiProfile shifted = profile;
  shifted.log_unconditional = {-5.5};
  shifted.pmi.clear();
  for (double lc : shifted.log_conditional) shifted.pmi.push_back(lc - shifted.log_unconditional[0]);

  double delta = shifted.pmi[0] - profile.pmi[0];
  for (std::size_t k = 0; k < profile.size(); ++k) {
    CHECK(shifted.pmi[k] - profile.pmi[k] == doctest::Approx(delta).epsilon(1e-12));
  }
  Permutation base = Permutation::identity(3);
  CHECK(ragmi::method1_select(profile, base).chosen == ragmi::method1_select(shifted, base).chosen);
}

TEST_CASE("context-after-question pmi zeroes out for context-independent scorers") {
  LambdaScorer scorer([](const std::string&, const std::string& cont) {
    return -0.01 * static_cast<double>(cont.size());
  });
  PromptTemplate::Fields f = tiny_template().fields();
  f.order = BlockOrder::question_then_context;
  PromptTemplate tmpl(std::move(f));
  auto docs = pier_docs();
  ragmi::PmiProfile profile =
      ragmi::pmi_context_after_question(scorer, tmpl, docs, "q", Permutation::identity(3));
  REQUIRE(profile.size() == 3);
  REQUIRE(profile.log_unconditional.size() == 3);
  for (double v : profile.pmi) CHECK(v == doctest::Approx(0.0));
}

TEST_CASE("context-after-question equals the forward pmi on a symmetric joint") {
  // Two "documents" and a question with an exactly symmetric joint built on
  // a bare template, so p(q|c)/p(q) and p(c|q)/p(c) coincide.
  PromptTemplate::Fields f;
  f.instruction = "I";
  f.document_block_format = "{index}{title}{text}";
  f.question_format = "{question}";
  f.answer_stub = "";
  PromptTemplate forward(f);
  f.order = BlockOrder::question_then_context;
  PromptTemplate reversed(f);

  std::vector<Document> docs = {{"d1", "", "x", {}}};
  Permutation base = Permutation::identity(1);
  std::string ctx = forward.context_block(docs);  // "1x"

  // Symmetric joint: mass(context then question) == mass(question then
  // context) == 0.20, with marginals 0.50 (context first) and 0.30
  // (question first).
  std::vector<std::pair<std::string, double>> entries = {
      {std::string("I\n\nq\n\n1x"), 0.20},  // question then context
      {std::string("I\n\nq\n\n!"), 0.10},   // question then other
      {std::string("I\n\n1x\n\nq"), 0.20},  // context then question
      {std::string("I\n\n1x\n\n!"), 0.30},  // context then other
      {std::string("I\n\n!"), 0.20},
  };
  ragmi::TableLmScorer scorer{ragmi::TableLm(entries)};

  ragmi::PmiProfile fwd = ragmi::pmi_profile(scorer, forward, docs, "q", base);
  ragmi::PmiProfile rev = ragmi::pmi_context_after_question(scorer, reversed, docs, "q", base);
  REQUIRE(fwd.size() == 1);
  REQUIRE(rev.size() == 1);
  double expected = std::log((0.20 / 0.50) / 0.30);  // log(4/3)
  CHECK(fwd.pmi[0] == doctest::Approx(expected).epsilon(1e-9));
  CHECK(rev.pmi[0] == doctest::Approx(std::log((0.20 / 0.30) / 0.50)).epsilon(1e-9));
  CHECK(fwd.pmi[0] == doctest::Approx(rev.pmi[0]).epsilon(1e-9));
  CHECK(fwd.pmi[0] > 0.0);
}

TEST_CASE("answer log odds") {
  LambdaScorer half([](const std::string&, const std::string&) { return std::log(0.5); });
  CHECK(ragmi::answer_log_odds(half, "p", "a").value == doctest::Approx(0.0));

  LambdaScorer point_nine([](const std::string&, const std::string&) { return std::log(0.9); });
  CHECK(ragmi::answer_log_odds(point_nine, "p", "a").value == doctest::Approx(std::log(9.0)).epsilon(1e-9));

  LambdaScorer certain([](const std::string&, const std::string&) { return 0.0; });
  CHECK_THROWS_AS(ragmi::answer_log_odds(certain, "p", "a"), std::domain_error);

  LambdaScorer impossible([](const std::string&, const std::string&) {
    return -std::numeric_limits<double>::infinity();
  });
  ragmi::AnswerLogOdds odds = ragmi::answer_log_odds(impossible, "p", "a");
  CHECK(odds.zero_probability);
  CHECK(odds.value == -std::numeric_limits<double>::infinity());

  CHECK_THROWS_AS(ragmi::answer_log_odds(half, "p", ""), std::domain_error);
}

TEST_CASE("conditional_logprob validates its contract") {
  LambdaScorer bogus([](const std::string&, const std::string&) { return 0.5; });
  CHECK_THROWS_AS(ragmi::conditional_logprob(bogus, "p", "c"), ragmi::ProtocolError);
  LambdaScorer fine([](const std::string&, const std::string&) { return -1.0; });
  CHECK_THROWS_AS(ragmi::conditional_logprob(fine, "p", ""), std::domain_error);
}
