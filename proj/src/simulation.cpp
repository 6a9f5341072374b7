#include "desca/simulation.hpp"

#include <functional>
#include <random>
#include <sstream>

#include "desca/verification.hpp"

namespace desca {

Word Trace::plant_string() const {
  Word s;
  s.reserve(steps.size());
  for (const TraceStep& step : steps) s.push_back(step.event);
  return s;
}

namespace {

// Static data shared by every run of one closed loop.
struct LoopTables {
  explicit LoopTables(const ClosedLoop& loop) {
    const Automaton& g = loop.plant;
    const EventAlphabet& alphabet = g.alphabet();
    const BoundPolicy bound = loop.policy.bind(g);
    const auto& transitions = g.transitions();
    outgoing.resize(g.state_count());
    fragments.resize(transitions.size());
    plain.resize(transitions.size());
    for (std::size_t i = 0; i < transitions.size(); ++i) {
      outgoing[transitions[i].src].push_back(i);
      plain[i] = natural_projection(Word{transitions[i].label}, alphabet);
      if (const Automaton* f = bound.language(i)) {
        const std::size_t cap = attack_length_cap(*f);
        fragment_cap = std::max(fragment_cap, cap);
        const Automaton projected = erase_events(*f, alphabet.unobservable());
        const auto words = enumerate_language(projected, static_cast<int>(cap), true);
        fragments[i].assign(words.begin(), words.end());
      } else {
        fragments[i] = {plain[i]};
      }
    }
  }

  std::vector<std::vector<std::size_t>> outgoing;
  std::vector<std::vector<Word>> fragments;
  std::vector<Word> plain;
  std::size_t fragment_cap = 0;
};

struct LoopState {
  StateId plant = kNoState;
  StateId spec = kNoState;  // kNoState once outside the specification
  StateId observer = kNoState;
};

StateId advance_observer(const Supervisor& sup, StateId x, const Word& fragment) {
  for (EventId e : fragment) {
    if (x == kNoState) return x;
    auto next = sup.observer.observer.next(x, e);
    x = next ? *next : kNoState;
  }
  return x;
}

LoopState initial_state(const ClosedLoop& loop) {
  return {loop.plant.initial(), loop.spec.initial(), loop.supervisor.observer.observer.initial()};
}

LoopState fire(const ClosedLoop& loop, const LoopState& s, const Transition& t, const Word& fragment) {
  LoopState next;
  next.plant = t.dst;
  if (s.spec != kNoState) {
    auto hn = loop.spec.next(s.spec, t.label);
    next.spec = hn ? *hn : kNoState;
  }
  next.observer = advance_observer(loop.supervisor, s.observer, fragment);
  return next;
}

std::vector<std::size_t> enabled_transitions(const ClosedLoop& loop, const LoopTables& tables, StateId q,
                                             Control received) {
  const Control allowed = received | loop.plant.alphabet().uncontrollable();
  std::vector<std::size_t> out;
  for (std::size_t i : tables.outgoing[q]) {
    if (allowed.contains(loop.plant.transitions()[i].label)) out.push_back(i);
  }
  return out;
}

Trace simulate_random(const ClosedLoop& loop, const LoopTables& tables, const AttackerStrategy& attacker,
                      int max_steps) {
  std::mt19937_64 gen(attacker.seed);
  auto pick = [&gen](std::size_t n) { return static_cast<std::size_t>(gen() % n); };
  const bool attacking = attacker.kind == AttackerStrategy::Kind::random;

  Trace trace;
  trace.fragment_cap = tables.fragment_cap;
  LoopState state = initial_state(loop);
  if (state.observer != kNoState) trace.observer_states.insert(state.observer);
  for (int k = 0; k < max_steps; ++k) {
    const Control issued = loop.supervisor.control_at(state.observer);
    Control received = issued;
    if (attacking) {
      const auto options = delta_control(issued, loop.actuator_attackable);
      received = options[pick(options.size())];
    }
    const auto enabled = enabled_transitions(loop, tables, state.plant, received);
    if (enabled.empty()) break;
    const std::size_t i = enabled[pick(enabled.size())];
    const Transition& t = loop.plant.transitions()[i];
    const Word fragment = attacking ? tables.fragments[i][pick(tables.fragments[i].size())] : tables.plain[i];
    state = fire(loop, state, t, fragment);
    if (state.observer != kNoState) trace.observer_states.insert(state.observer);
    const bool safe = state.spec != kNoState;
    trace.steps.push_back({t.label, issued, received, fragment, safe});
    trace.safe = trace.safe && safe;
  }
  return trace;
}

// Depth-first search over every attacker and plant choice. `leaf` returns
// true to stop the search.
void explore(const ClosedLoop& loop, const LoopTables& tables, int max_steps,
             const std::function<bool(const Trace&)>& leaf) {
  Trace trace;
  trace.fragment_cap = tables.fragment_cap;
  bool stop = false;
  std::function<void(const LoopState&)> visit = [&](const LoopState& state) {
    if (state.observer != kNoState) trace.observer_states.insert(state.observer);
    const bool unsafe = !trace.steps.empty() && !trace.steps.back().safe;
    if (unsafe || static_cast<int>(trace.steps.size()) >= max_steps) {
      stop = leaf(trace);
      return;
    }
    const Control issued = loop.supervisor.control_at(state.observer);
    // Received controls that enable the same transitions lead to the same runs.
    std::vector<std::pair<Control, std::vector<std::size_t>>> choices;
    for (const Control& received : delta_control(issued, loop.actuator_attackable)) {
      auto enabled = enabled_transitions(loop, tables, state.plant, received);
      bool duplicate = false;
      for (const auto& [c, e] : choices) duplicate = duplicate || e == enabled;
      if (!duplicate) choices.emplace_back(received, std::move(enabled));
    }
    bool moved = false;
    for (const auto& [received, enabled] : choices) {
      for (std::size_t i : enabled) {
        const Transition& t = loop.plant.transitions()[i];
        for (const Word& fragment : tables.fragments[i]) {
          moved = true;
          const LoopState next = fire(loop, state, t, fragment);
          const bool safe = next.spec != kNoState;
          trace.steps.push_back({t.label, issued, received, fragment, safe});
          const bool was_safe = trace.safe;
          trace.safe = trace.safe && safe;
          const auto visited = trace.observer_states;
          visit(next);
          trace.observer_states = visited;
          trace.safe = was_safe;
          trace.steps.pop_back();
          if (stop) return;
        }
      }
    }
    if (!moved) stop = leaf(trace);
  };
  visit(initial_state(loop));
}

}  // namespace

Trace simulate(const ClosedLoop& loop, const AttackerStrategy& attacker, int max_steps) {
  const LoopTables tables(loop);
  if (attacker.kind != AttackerStrategy::Kind::exhaustive) {
    return simulate_random(loop, tables, attacker, max_steps);
  }
  std::optional<Trace> first;
  std::optional<Trace> violation;
  explore(loop, tables, max_steps, [&](const Trace& t) {
    if (!first) first = t;
    if (!t.safe) {
      violation = t;
      return true;
    }
    return false;
  });
  if (violation) return *violation;
  return first ? *first : Trace{};
}

CampaignReport run_campaign(const ClosedLoop& loop, AttackerStrategy::Kind kind, int trials, int max_steps,
                            std::uint64_t base_seed) {
  if (trials < 1) throw std::invalid_argument("a campaign needs at least one trial");
  const LoopTables tables(loop);
  CampaignReport report;
  auto record = [&](const Trace& t) {
    ++report.trials;
    report.observer_states.insert(t.observer_states.begin(), t.observer_states.end());
    if (t.safe) return;
    ++report.violations;
    report.violating_strings.insert(t.plant_string());
    if (!report.first_violation) report.first_violation = t;
  };
  if (kind == AttackerStrategy::Kind::exhaustive) {
    explore(loop, tables, max_steps, [&](const Trace& t) {
      record(t);
      return false;
    });
    return report;
  }
  for (int k = 0; k < trials; ++k) {
    record(simulate_random(loop, tables, {kind, base_seed + static_cast<std::uint64_t>(k)}, max_steps));
  }
  return report;
}

std::string serialize_trace(const Trace& trace, const EventAlphabet& alphabet) {
  std::ostringstream out;
  out << "# fragment_cap=" << trace.fragment_cap << " safe=" << (trace.safe ? 1 : 0) << '\n';
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    const TraceStep& s = trace.steps[k];
    out << k << '\t' << alphabet.name(s.event) << '\t' << format_event_set(alphabet, s.issued) << '\t'
        << format_event_set(alphabet, s.received) << '\t' << format_word(alphabet, s.observation) << '\t'
        << (s.safe ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace desca
