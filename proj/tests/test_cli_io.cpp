#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <regex>

#include "desca/dot.hpp"
#include "desca/model_io.hpp"
#include "desca/report.hpp"
#include "support/support.hpp"

using namespace desca;
using support::kAlpha;
using support::kBeta;
using support::w;

namespace {

std::string parse_error(const std::string& text, int* line = nullptr, int* column = nullptr,
                        std::string* expected = nullptr) {
  try {
    parse_model(text);
  } catch (const ParseError& e) {
    if (line != nullptr) *line = e.line();
    if (column != nullptr) *column = e.column();
    if (expected != nullptr) *expected = e.expected();
    return e.what();
  }
  return {};
}

int count(const std::string& text, const std::regex& re) {
  return static_cast<int>(std::distance(std::sregex_iterator(text.begin(), text.end(), re), std::sregex_iterator()));
}

}  // namespace

TEST_CASE("the corpus model matches the hand-built example") {
  const ModelDocument doc = load_model(support::corpus_path("attacked.des"));
  const auto ex = support::example_case(1);
  CHECK(*doc.alphabet == *ex.alphabet);
  CHECK(doc.plant == ex.g);
  CHECK(doc.spec() == ex.h);
  CHECK(doc.policy == ex.policy);
  CHECK_FALSE(doc.strategy);
  CHECK(check_model(doc).empty());

  const ModelDocument two = load_model(support::corpus_path("attacked_safe.des"));
  CHECK(two.alphabet->actuator_attackable() == EventSet{kBeta});

  const ModelDocument obs_attack = load_model(support::corpus_path("observation_attack.des"));
  REQUIRE(obs_attack.strategy);
  CHECK(*obs_attack.strategy == support::example_strategy(obs_attack.alphabet));
  CHECK(check_model(obs_attack).empty());
}

TEST_CASE("serialization round-trips") {
  for (const char* file : {"attacked.des", "attacked_safe.des", "observation_attack.des"}) {
    const ModelDocument doc = load_model(support::corpus_path(file));
    const std::string text = serialize_model(doc);
    const ModelDocument again = parse_model(text);
    CHECK(again == doc);
    CHECK(serialize_model(again) == text);
  }

  auto ex = support::example_case(1);
  ModelDocument doc;
  doc.alphabet = ex.alphabet;
  doc.plant = ex.g;
  doc.spec_automaton = ex.h;
  doc.policy.attack_event(support::kMu, support::attack_tr2(ex.alphabet));
  CHECK(parse_model(serialize_model(doc)) == doc);
}

TEST_CASE("quoted names and comments") {
  const std::string text = R"model(# leading comment
alphabet { go : controllable observable; }
plant {
  states "state one" "(a,b)";   # trailing comment
  initial "state one";
  "state one" go "(a,b)";
}
spec safe "state one";
)model";
  const ModelDocument doc = parse_model(text);
  CHECK(doc.plant.state_name(1) == "(a,b)");
  CHECK(parse_model(serialize_model(doc)) == doc);
  CHECK(serialize_model(doc).find("\"state one\"") != std::string::npos);
}

TEST_CASE("parse errors") {
  CHECK(parse_error("").find("missing alphabet") != std::string::npos);
  CHECK(parse_error("# nothing here\n").find("missing alphabet") != std::string::npos);

  int line = 0;
  int column = 0;
  const std::string undeclared = parse_error(
      "alphabet { a : observable; }\nplant {\n  initial x;\n  x zeta y;\n}\n", &line, &column);
  CHECK(undeclared.find("undeclared event 'zeta'") != std::string::npos);
  CHECK(line == 4);
  CHECK(column == 5);

  std::string expected;
  parse_error("alphabet { a ; \nplant", &line, &column, &expected);
  CHECK_FALSE(expected.empty());

  CHECK(parse_error("alphabet { a; }\nplant { initial x; x a y }").find("expected") != std::string::npos);
  CHECK(parse_error("alphabet { eps; }").find("reserved") != std::string::npos);
  CHECK(parse_error("alphabet { a; a; }").find("duplicate event") != std::string::npos);
  CHECK(parse_error("alphabet { a : fast; }").find("'fast'") != std::string::npos);
  CHECK(parse_error("alphabet { a; }\nplant { x a y; }").find("no initial state") != std::string::npos);
  CHECK(parse_error("alphabet { a; }\nspec safe x;").find("plant must be declared") != std::string::npos);
  CHECK(parse_error("alphabet { a; }\nplant { initial x; }\nspec safe y;").find("undeclared state 'y'") !=
        std::string::npos);
  CHECK(parse_error("alphabet { a; }\nplant { states \"x; }").find("unterminated") != std::string::npos);
  CHECK_THROWS_AS(load_model("/nonexistent/model.des"), std::invalid_argument);
}

TEST_CASE("semantic checks") {
  ModelDocument doc = load_model(support::corpus_path("observation_attack.des"));
  doc.policy.attack_event(support::kMu, support::attack_tr2(doc.alphabet));
  const auto issues = check_model(doc);
  CHECK(std::any_of(issues.begin(), issues.end(),
                    [](const std::string& s) { return s.find("both") != std::string::npos; }));

  const ModelDocument bad = parse_model(
      "alphabet { a : observable; }\nplant { initial x; x a y; x a z; }\nspec safe x z;\n"
      "attack transition x a y { initial p; }\n");
  CHECK(check_model(bad).size() == 3);
}

TEST_CASE("DOT export") {
  auto ex = support::example_case(2);
  const std::string g = export_dot(ex.g);
  CHECK(g.rfind("digraph \"G\" {", 0) == 0);
  CHECK(count(g, std::regex("\\n  n[0-9]+ \\[label=")) == 4);
  CHECK(count(g, std::regex("doublecircle")) == 4);
  CHECK(g == export_dot(ex.g));

  const CAObserver obs = build_ca_observer(ex.g, ex.policy.bind(ex.g));
  const std::string o = export_dot(obs);
  CHECK(o.find("label=\"{1,3,1/B,2/D,2/E}\"") != std::string::npos);

  const DiamondAutomaton d = build_diamond(ex.g, ex.policy.bind(ex.g));
  CHECK(count(export_dot(d.automaton), std::regex("style=dashed")) == 5);

  Automaton single(ex.alphabet);
  single.add_state("only");
  single.set_initial(0);
  const std::string s = export_dot(single);
  CHECK(count(s, std::regex("\\n  n[0-9]+ \\[label=")) == 1);
  CHECK(count(s, std::regex("->")) == 1);

  Automaton quoted(ex.alphabet);
  quoted.add_state("say \"hi\"");
  quoted.set_initial(0);
  CHECK(export_dot(quoted).find("say \\\"hi\\\"") != std::string::npos);
}

TEST_CASE("reports") {
  auto one = support::example_case(1);
  const Verdict v = check_ca_controllability(one.g, one.h, {kAlpha, kBeta});
  CHECK(exit_code(v) == 1);
  CHECK(format_counterexample(*one.alphabet, *v.counterexample) == "alpha\xC2\xB7" "alpha");
  const std::string text = verdict_text("ca-controllability", v, *one.alphabet);
  CHECK(text.rfind("ca-controllability: fails\ncounterexample: alpha", 0) == 0);
  const nlohmann::json j = verdict_json("ca-controllability", v, *one.alphabet);
  CHECK(j["status"] == "fails");
  CHECK(j["counterexample"]["string"] == nlohmann::json::array({"alpha"}));
  CHECK(j["counterexample"]["event"] == "alpha");
  CHECK(j["depth"].is_null());

  auto two = support::example_case(2);
  const Verdict ok = check_ca_controllability(two.g, two.h, {kBeta});
  CHECK(exit_code(ok) == 0);
  CHECK(verdict_json("x", ok, *two.alphabet)["counterexample"].is_null());

  const Supervisor sup = synthesize_ca_supervisor(two.g, two.h, two.policy);
  const std::string table = supervisor_table(sup, two.h);
  CHECK(table.find("1\t{2,3,1/A,2/D}\t{2,3}\t{beta,lambda,mu}\n") != std::string::npos);
  CHECK(table.find("default\t-\t-\t{}\n") != std::string::npos);
  const nlohmann::json sj = supervisor_json(sup, two.h);
  CHECK(sj["states"].size() == 5);
  CHECK(sj["states"][1]["control"] == nlohmann::json::array({"beta", "lambda", "mu"}));

  const nlohmann::json ej = estimate_json(sup.observer, two.h, w(*two.alphabet, "alpha lambda mu"));
  CHECK(ej["estimate"] == nlohmann::json::array({"1", "3"}));
  CHECK(estimate_json(sup.observer, two.h, w(*two.alphabet, "mu"))["observer_state"].is_null());

  CampaignReport report;
  report.trials = 3;
  CHECK(campaign_json(report, *two.alphabet)["first_violation"].is_null());
  CHECK(campaign_text(report, *two.alphabet).rfind("trials: 3\nviolations: 0\n", 0) == 0);
}
