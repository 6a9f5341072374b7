#include "support.hpp"

#include <deque>

#include "desca/verification.hpp"

namespace support {

using namespace desca;

std::shared_ptr<const EventAlphabet> example_alphabet(EventSet actuator_attackable) {
  auto a = std::make_shared<EventAlphabet>();
  for (const char* name : {"alpha", "beta", "lambda", "mu"}) {
    const EventId e = a->size();
    EventFlags f{true, true, e == kLambda || e == kMu, actuator_attackable.contains(e)};
    a->add_event(name, f);
  }
  return a;
}

Automaton example_plant(const std::shared_ptr<const EventAlphabet>& alphabet) {
  Automaton g(alphabet);
  for (const char* q : {"1", "2", "3", "4"}) g.add_state(q, true);
  g.set_initial(0);
  g.add_transition("1", "alpha", "2");
  g.add_transition("2", "lambda", "3");
  g.add_transition("3", "mu", "1");
  g.add_transition("2", "alpha", "4");
  return g;
}

Automaton example_spec(const std::shared_ptr<const EventAlphabet>& alphabet) {
  Automaton h(alphabet);
  for (const char* q : {"1", "2", "3"}) h.add_state(q, true);
  h.set_initial(0);
  h.add_transition("1", "alpha", "2");
  h.add_transition("2", "lambda", "3");
  h.add_transition("3", "mu", "1");
  return h;
}

Automaton attack_tr1(const std::shared_ptr<const EventAlphabet>& alphabet) {
  Automaton f(alphabet);
  f.add_state("A", true);
  f.add_state("B", true);
  f.add_state("C");
  f.set_initial(0);
  f.add_transition("A", "lambda", "B");
  f.add_transition("A", "lambda", "C");
  f.add_transition("C", "mu", "B");
  return f;
}

Automaton attack_tr2(const std::shared_ptr<const EventAlphabet>& alphabet) {
  Automaton f(alphabet);
  f.add_state("D");
  f.add_state("E", true);
  f.set_initial(0);
  f.add_transition("D", "mu", "E");
  f.add_transition("D", "beta", "E");
  return f;
}

SensorAttackPolicy example_policy(const std::shared_ptr<const EventAlphabet>& alphabet) {
  SensorAttackPolicy p;
  p.attack_transition({"2", kLambda, "3"}, attack_tr1(alphabet));
  p.attack_transition({"3", kMu, "1"}, attack_tr2(alphabet));
  return p;
}

ObservationAttackStrategy example_strategy(const std::shared_ptr<const EventAlphabet>& alphabet) {
  ObservationAttackStrategy s;
  s.sa = Automaton(alphabet);
  s.sa.set_events(alphabet->observable());
  for (const char* z : {"z1", "z2", "z3", "z4", "z5"}) s.sa.add_state(z, true);
  s.sa.set_initial(0);
  s.sa.add_transition("z1", "alpha", "z2");
  s.sa.add_transition("z2", "lambda", "z3");
  s.sa.add_transition("z2", "alpha", "z4");
  s.sa.add_transition("z3", "mu", "z5");
  s.sa.add_transition("z5", "alpha", "z2");
  s.omega.push_back({s.sa.state("z2"), kLambda, attack_tr1(alphabet)});
  s.omega.push_back({s.sa.state("z3"), kMu, attack_tr2(alphabet)});
  return s;
}

Example example_case(int which) {
  const EventSet actuator = which == 1 ? EventSet{kAlpha, kBeta} : EventSet{kBeta};
  auto alphabet = example_alphabet(actuator);
  return {alphabet, example_plant(alphabet), example_spec(alphabet), example_policy(alphabet)};
}

Word w(const EventAlphabet& alphabet, const std::string& text) { return parse_word(alphabet, text); }

std::set<Word> words(const EventAlphabet& alphabet, const std::vector<std::string>& texts) {
  std::set<Word> out;
  for (const auto& t : texts) out.insert(w(alphabet, t));
  return out;
}

std::string corpus_path(const std::string& file) { return std::string(DESCA_CORPUS_DIR) + "/" + file; }

std::set<Word> path_words(const Automaton& a, int depth, bool marked_only) {
  std::set<std::pair<StateId, Word>> seen{{a.initial(), {}}};
  std::deque<std::pair<StateId, Word>> queue{{a.initial(), {}}};
  std::set<Word> out;
  while (!queue.empty()) {
    auto [q, s] = queue.front();
    queue.pop_front();
    if (!marked_only || a.is_marked(q)) out.insert(s);
    for (const Transition& t : a.transitions()) {
      if (t.src != q) continue;
      Word next = s;
      if (t.label != kEpsilon) {
        if (static_cast<int>(s.size()) >= depth) continue;
        next.push_back(t.label);
      }
      if (seen.emplace(t.dst, next).second) queue.emplace_back(t.dst, std::move(next));
    }
  }
  return out;
}

std::set<Word> step_observations(const Automaton& g, const BoundPolicy& policy, std::size_t transition, int depth) {
  const EventAlphabet& alphabet = g.alphabet();
  std::set<Word> out;
  if (const Automaton* f = policy.language(transition)) {
    for (const Word& u : path_words(*f, depth, true)) out.insert(natural_projection(u, alphabet));
  } else {
    Word u = natural_projection(Word{g.transitions()[transition].label}, alphabet);
    if (static_cast<int>(u.size()) <= depth) out.insert(u);
  }
  return out;
}

std::map<Word, std::set<StateId>> observation_oracle(const Automaton& g, const BoundPolicy& policy, int depth) {
  std::set<std::pair<StateId, Word>> seen{{g.initial(), {}}};
  std::deque<std::pair<StateId, Word>> queue{{g.initial(), {}}};
  std::vector<std::set<Word>> steps;
  for (std::size_t i = 0; i < g.transitions().size(); ++i) steps.push_back(step_observations(g, policy, i, depth));
  std::map<Word, std::set<StateId>> out;
  while (!queue.empty()) {
    auto [q, t] = queue.front();
    queue.pop_front();
    out[t].insert(q);
    for (std::size_t i = 0; i < g.transitions().size(); ++i) {
      const Transition& tr = g.transitions()[i];
      if (tr.src != q) continue;
      for (const Word& u : steps[i]) {
        if (t.size() + u.size() > static_cast<std::size_t>(depth)) continue;
        Word next = t;
        next.insert(next.end(), u.begin(), u.end());
        if (seen.emplace(tr.dst, next).second) queue.emplace_back(tr.dst, std::move(next));
      }
    }
  }
  return out;
}

namespace {

bool chance(std::mt19937_64& rng, double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; }

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Automaton random_attack(std::mt19937_64& rng, const std::shared_ptr<const EventAlphabet>& alphabet,
                        const RandomModelOptions& options) {
  Automaton f(alphabet);
  const int n = uniform(rng, 1, options.max_attack_states);
  for (int i = 0; i < n; ++i) f.add_state("f" + std::to_string(i));
  f.set_initial(0);
  const auto observable = alphabet->observable().members();
  for (int i = 0; i < n; ++i) {
    for (int j = options.acyclic_attacks ? i + 1 : 0; j < n; ++j) {
      for (EventId e : observable) {
        if (chance(rng, 0.3)) f.add_transition(static_cast<StateId>(i), e, static_cast<StateId>(j));
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (chance(rng, 0.4)) f.set_marked(static_cast<StateId>(i));
  }
  const Automaton reach = accessible(f);
  if (reach.marked_states().empty()) {
    const StateId pick = static_cast<StateId>(uniform(rng, 0, static_cast<int>(reach.state_count()) - 1));
    f.set_marked(f.state(reach.state_name(pick)));
  }
  return f;
}

}  // namespace

RandomModel random_model(std::mt19937_64& rng, const RandomModelOptions& options) {
  auto alphabet = std::make_shared<EventAlphabet>();
  const int events = uniform(rng, 1, options.max_events);
  for (int e = 0; e < events; ++e) {
    EventFlags f;
    f.controllable = chance(rng, 0.7);
    f.observable = chance(rng, 0.75);
    f.sensor_attackable = f.observable && chance(rng, 0.5);
    f.actuator_attackable = f.controllable && chance(rng, 0.3);
    alphabet->add_event("e" + std::to_string(e), f);
  }
  RandomModel m;
  m.alphabet = alphabet;
  m.g = Automaton(alphabet);
  const int states = uniform(rng, 1, options.max_states);
  for (int q = 0; q < states; ++q) m.g.add_state("q" + std::to_string(q), true);
  m.g.set_initial(0);
  for (int q = 0; q < states; ++q) {
    for (EventId e = 0; e < events; ++e) {
      if (chance(rng, 0.4)) {
        m.g.add_transition(static_cast<StateId>(q), e, static_cast<StateId>(uniform(rng, 0, states - 1)));
      }
    }
  }
  std::vector<std::string> safe{"q0"};
  for (int q = 1; q < states; ++q) {
    if (chance(rng, 0.7)) safe.push_back("q" + std::to_string(q));
  }
  m.h = induced_subautomaton(m.g, safe);
  for (const Transition& t : m.g.transitions()) {
    if (!alphabet->sensor_attackable().contains(t.label) || !chance(rng, 0.6)) continue;
    m.policy.attack_transition({m.g.state_name(t.src), t.label, m.g.state_name(t.dst)},
                               random_attack(rng, alphabet, options));
  }
  m.actuator = alphabet->actuator_attackable();
  return m;
}

Supervisor randomize_controls(const Supervisor& sup, std::mt19937_64& rng) {
  Supervisor out = sup;
  const EventAlphabet& alphabet = sup.observer.observer.alphabet();
  for (StateId x = 0; x < out.observer.observer.state_count(); ++x) {
    if (!out.observer.observer.is_marked(x)) continue;
    Control c = alphabet.uncontrollable();
    for (EventId e : alphabet.controllable().members()) {
      if (chance(rng, 0.6)) c.insert(e);
    }
    out.controls[x] = c;
  }
  return out;
}

std::vector<Supervisor> sample_valid_supervisors(const Automaton& g, const Automaton& h,
                                                 const SensorAttackPolicy& policy, EventSet actuator,
                                                 const Supervisor& start, std::mt19937_64& rng, int count,
                                                 int mutations) {
  std::vector<Supervisor> out;
  const EventSet removable = g.alphabet().controllable() - actuator;
  for (int k = 0; k < count; ++k) {
    Supervisor s = start;
    for (int step = 0; step < mutations; ++step) {
      const StateId x = static_cast<StateId>(rng() % s.controls.size());
      const auto candidates = (s.controls[x] & removable).members();
      if (candidates.empty()) continue;
      Supervisor trial = s;
      trial.controls[x].erase(candidates[rng() % candidates.size()]);
      if (verify_large_language_equals(g, h, trial, policy, actuator).passed()) s = std::move(trial);
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace support
