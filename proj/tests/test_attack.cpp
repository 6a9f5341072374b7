#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "desca/attack.hpp"
#include "desca/supervisor.hpp"
#include "support/support.hpp"

using namespace desca;
using support::kAlpha;
using support::kBeta;
using support::kLambda;
using support::kMu;
using support::w;
using support::words;

TEST_CASE("delta control examples") {
  const Control gamma{kAlpha, kLambda, kMu};
  const auto delta = delta_control(gamma, {kAlpha, kBeta});
  const std::vector<Control> expected{
      {kLambda, kMu}, {kAlpha, kLambda, kMu}, {kBeta, kLambda, kMu}, {kAlpha, kBeta, kLambda, kMu}};
  CHECK(std::set<Control>(delta.begin(), delta.end()) == std::set<Control>(expected.begin(), expected.end()));
  CHECK(delta.size() == 4);

  CHECK(delta_control(gamma, {}) == std::vector<Control>{gamma});
  CHECK(delta_control({}, {kBeta}) == std::vector<Control>{Control{}, Control{kBeta}});
}

TEST_CASE("delta control properties") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const EventSet universe = EventSet::first(1 + static_cast<int>(rng() % 8));
    const Control gamma = EventSet(rng()) & universe;
    const EventSet attackable = EventSet(rng()) & universe;
    const auto delta = delta_control(gamma, attackable);
    CHECK(delta.size() == (std::size_t{1} << attackable.size()));
    CHECK(std::find(delta.begin(), delta.end(), gamma) != delta.end());
    CHECK(std::set<Control>(delta.begin(), delta.end()).size() == delta.size());
    for (const Control& c : delta) {
      CHECK((gamma - attackable).subset_of(c));
      CHECK(c.subset_of(gamma | attackable));
    }
  }
}

TEST_CASE("attacked commands apply delta to the issued control") {
  auto ex = support::example_case(1);
  const Supervisor sup = synthesize_ca_supervisor(ex.g, ex.h, ex.policy);
  const Word t = w(*ex.alphabet, "alpha lambda mu");
  CHECK(attacked_commands(sup, t, {kAlpha, kBeta}) == delta_control(sup.control_for(t), {kAlpha, kBeta}));
  CHECK(attacked_commands(sup, t, {}) == std::vector<Control>{sup.control_for(t)});
  Supervisor all = sup;
  for (auto& c : all.controls) c = ex.alphabet->all();
  for (const Control& c : attacked_commands(all, t, {kAlpha, kBeta})) {
    CHECK((ex.alphabet->all() - EventSet{kAlpha, kBeta}).subset_of(c));
  }
}

TEST_CASE("theta automaton") {
  auto ex = support::example_case(1);
  const auto& al = *ex.alphabet;
  const BoundPolicy bound = ex.policy.bind(ex.g);
  const Automaton theta = theta_automaton(w(al, "alpha lambda"), ex.g, bound);
  CHECK(enumerate_language(theta, 10, true) == words(al, {"alpha", "alpha lambda", "alpha lambda mu"}));
  const Automaton theta2 = theta_automaton(w(al, "alpha lambda mu"), ex.g, bound);
  CHECK(enumerate_language(theta2, 10, true) ==
        words(al, {"alpha mu", "alpha beta", "alpha lambda mu", "alpha lambda beta", "alpha lambda mu mu",
                   "alpha lambda mu beta"}));
  const Automaton plain = theta_automaton(w(al, "alpha alpha"), ex.g, bound);
  CHECK(enumerate_language(plain, 10, true) == words(al, {"alpha alpha"}));
  CHECK_THROWS_AS(theta_automaton(w(al, "lambda"), ex.g, bound), std::domain_error);
}

TEST_CASE("phi enumerate") {
  auto ex = support::example_case(1);
  const auto& al = *ex.alphabet;
  const BoundPolicy bound = ex.policy.bind(ex.g);
  const WordSet phi = phi_enumerate(w(al, "alpha lambda"), ex.g, bound, 10);
  CHECK(phi.words == words(al, {"alpha", "alpha lambda", "alpha lambda mu"}));
  CHECK_FALSE(phi.truncated);
  CHECK(phi_enumerate({}, ex.g, bound, 4).words == std::set<Word>{Word{}});
  const WordSet cut = phi_enumerate(w(al, "alpha lambda mu"), ex.g, bound, 3);
  CHECK(cut.truncated);
  CHECK(cut.words == words(al, {"alpha mu", "alpha beta", "alpha lambda mu", "alpha lambda beta"}));

  for (const Word& s : enumerate_language(ex.g, 7, false)) {
    const Automaton projected = erase_events(theta_automaton(s, ex.g, bound), al.unobservable());
    CHECK(phi_enumerate(s, ex.g, bound, 12).words == enumerate_language(projected, 12, true));
  }
}

TEST_CASE("no sensor attacks means a single observation") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    auto m = support::random_model(rng);
    const BoundPolicy none = SensorAttackPolicy{}.bind(m.g);
    for (const Word& s : enumerate_language(m.g, 5, false)) {
      CHECK(phi_enumerate(s, m.g, none, 5).words == std::set<Word>{natural_projection(s, *m.alphabet)});
    }
  }
}

TEST_CASE("policy binding and validation") {
  auto ex = support::example_case(1);
  CHECK(ex.policy.violations(ex.g).empty());

  SensorAttackPolicy by_event;
  by_event.attack_event(kLambda, support::attack_tr1(ex.alphabet));
  by_event.attack_transition({"2", kLambda, "3"}, support::attack_tr2(ex.alphabet));
  const BoundPolicy bound = by_event.bind(ex.g);
  REQUIRE(bound.languages.size() == 1);
  CHECK(bound.languages[0] == support::attack_tr2(ex.alphabet));

  SensorAttackPolicy bad;
  bad.attack_transition({"1", kAlpha, "3"}, support::attack_tr1(ex.alphabet));
  CHECK(bad.violations(ex.g).size() == 2);

  Automaton empty(ex.alphabet);
  empty.add_state("x");
  empty.set_initial(0);
  SensorAttackPolicy no_words;
  no_words.attack_event(kMu, empty);
  CHECK(no_words.violations(ex.g).size() == 1);

  std::vector<std::string> unmatched;
  SensorAttackPolicy outside;
  outside.attack_transition({"9", kMu, "1"}, support::attack_tr2(ex.alphabet));
  outside.bind(ex.h, &unmatched);
  CHECK(unmatched.size() == 1);
}

TEST_CASE("phi omega") {
  auto ex = support::example_case(2);
  const auto& al = *ex.alphabet;
  const auto strategy = support::example_strategy(ex.alphabet);
  CHECK(phi_omega({}, strategy, 5).words == std::set<Word>{Word{}});
  CHECK(phi_omega(w(al, "alpha lambda mu"), strategy, 10).words ==
        words(al, {"alpha mu", "alpha beta", "alpha lambda mu", "alpha lambda beta", "alpha lambda mu mu",
                   "alpha lambda mu beta"}));
  ObservationAttackStrategy identity = strategy;
  identity.omega.clear();
  CHECK(phi_omega(w(al, "alpha lambda mu alpha"), identity, 10).words == words(al, {"alpha lambda mu alpha"}));
  CHECK_THROWS_AS(phi_omega(w(al, "lambda"), strategy, 5), std::domain_error);
}

TEST_CASE("observation-based conversion") {
  auto ex = support::example_case(2);
  const auto& al = *ex.alphabet;
  const auto strategy = support::example_strategy(ex.alphabet);
  const ConvertedAttack converted = convert_observation_based(ex.g, strategy);
  const auto& entries = converted.policy.transition_entries();
  REQUIRE(entries.size() == 2);
  const TransitionKey first{"(2,z2)", kLambda, "(3,z3)"};
  const TransitionKey second{"(3,z3)", kMu, "(1,z5)"};
  CHECK(entries[0].first == first);
  CHECK(entries[0].second == support::attack_tr1(ex.alphabet));
  CHECK(entries[1].first == second);
  CHECK(enumerate_language(converted.plant.automaton, 8, false) == enumerate_language(ex.g, 8, false));

  const BoundPolicy bound = converted.policy.bind(converted.plant.automaton);
  for (const Word& s : enumerate_language(ex.g, 8, false)) {
    CHECK(phi_enumerate(s, converted.plant.automaton, bound, 12).words ==
          phi_omega(natural_projection(s, al), strategy, 12).words);
  }
}

TEST_CASE("single-state SA gives a per-event policy") {
  auto ex = support::example_case(2);
  ObservationAttackStrategy strategy;
  strategy.sa = Automaton(ex.alphabet);
  strategy.sa.set_events(ex.alphabet->observable());
  strategy.sa.add_state("z", true);
  strategy.sa.set_initial(0);
  for (EventId e = 0; e < ex.alphabet->size(); ++e) strategy.sa.add_transition(0, e, 0);
  strategy.omega.push_back({0, kMu, support::attack_tr2(ex.alphabet)});
  const ConvertedAttack converted = convert_observation_based(ex.g, strategy);
  SensorAttackPolicy per_event;
  per_event.attack_event(kMu, support::attack_tr2(ex.alphabet));
  const BoundPolicy a = converted.policy.bind(converted.plant.automaton);
  const BoundPolicy b = per_event.bind(ex.g);
  CHECK(a.languages == b.languages);
  for (const Word& s : enumerate_language(ex.g, 7, false)) {
    CHECK(phi_enumerate(s, converted.plant.automaton, a, 10).words == phi_enumerate(s, ex.g, b, 10).words);
  }
}

TEST_CASE("conversion requires SA to follow every observation") {
  auto ex = support::example_case(2);
  auto strategy = support::example_strategy(ex.alphabet);
  Automaton short_sa(ex.alphabet);
  short_sa.set_events(ex.alphabet->observable());
  short_sa.add_state("z1", true);
  short_sa.add_state("z2", true);
  short_sa.set_initial(0);
  short_sa.add_transition("z1", "alpha", "z2");
  strategy.sa = short_sa;
  strategy.omega.clear();
  CHECK(sa_containment_witness(ex.g, short_sa) == w(*ex.alphabet, "alpha alpha"));
  CHECK_THROWS_AS(convert_observation_based(ex.g, strategy), PreconditionError);
  try {
    convert_observation_based(ex.g, strategy);
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("alpha alpha") != std::string::npos);
  }
}

TEST_CASE("observation lengths") {
  auto ex = support::example_case(2);
  CHECK(max_observation_length(support::attack_tr1(ex.alphabet)) == 2u);
  const BoundPolicy bound = ex.policy.bind(ex.g);
  CHECK(max_emission(ex.g, bound, 0) == 1u);
  CHECK(max_emission(ex.g, bound, 1) == 2u);
  Automaton loop(ex.alphabet);
  loop.add_state("a", true);
  loop.set_initial(0);
  loop.add_transition(0, kMu, 0);
  CHECK_FALSE(max_observation_length(loop).has_value());
}
