#include "desca/estimation.hpp"

#include <stdexcept>

namespace desca {

namespace {

// Appends a copy of f to `into`, wired in place of (src, ·, dst).
void splice(Automaton& into, StateId src, StateId dst, const Automaton& f, const std::string& prefix,
            std::vector<StateId>* created) {
  std::vector<StateId> remap(f.state_count());
  for (StateId q = 0; q < f.state_count(); ++q) {
    remap[q] = into.add_state(prefix + "/" + f.state_name(q));
    if (created != nullptr) created->push_back(q);
  }
  for (const Transition& t : f.transitions()) into.add_transition(remap[t.src], t.label, remap[t.dst]);
  into.add_transition(src, kEpsilon, remap[f.initial()]);
  for (StateId q : f.marked_states()) into.add_transition(remap[q], kEpsilon, dst);
}

}  // namespace

Automaton replace_transition(const Automaton& a, std::size_t transition, const Automaton& f,
                             const std::string& prefix) {
  if (transition >= a.transitions().size()) {
    throw std::invalid_argument("transition index " + std::to_string(transition) + " out of range");
  }
  Automaton out(a.alphabet_ptr());
  out.set_events(a.events());
  for (StateId q = 0; q < a.state_count(); ++q) out.add_state(a.state_name(q), a.is_marked(q));
  out.set_initial(a.initial());
  const auto& transitions = a.transitions();
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    if (i != transition) out.add_transition(transitions[i].src, transitions[i].label, transitions[i].dst);
  }
  splice(out, transitions[transition].src, transitions[transition].dst, f, prefix, nullptr);
  return out;
}

DiamondAutomaton build_diamond(const Automaton& g, const BoundPolicy& policy) {
  DiamondAutomaton d{Automaton(g.alphabet_ptr()), g.state_count(), {}};
  Automaton& a = d.automaton;
  a.set_events(g.events());
  for (StateId q = 0; q < g.state_count(); ++q) a.add_state(g.state_name(q), true);
  a.set_initial(g.initial());
  const auto& transitions = g.transitions();
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    if (policy.language(i) == nullptr) a.add_transition(transitions[i].src, transitions[i].label, transitions[i].dst);
  }
  for (std::size_t k = 0; k < policy.transition_of.size(); ++k) {
    const std::size_t i = policy.transition_of[k];
    std::vector<StateId> created;
    splice(a, transitions[i].src, transitions[i].dst, policy.languages[k], std::to_string(k + 1), &created);
    for (StateId f_state : created) d.injected.push_back({i, f_state});
  }
  return d;
}

DiamondAutomaton erase_unobservable(const DiamondAutomaton& d) {
  DiamondAutomaton out = d;
  out.automaton = erase_events(d.automaton, d.automaton.alphabet().unobservable());
  return out;
}

CAObserver build_ca_observer(const Automaton& g, const BoundPolicy& policy) {
  DiamondAutomaton diamond = erase_unobservable(build_diamond(g, policy));
  SubsetAutomaton subsets = determinize(diamond.automaton);
  CAObserver obs{std::move(subsets.automaton), std::move(subsets.subsets), {}, std::move(diamond)};
  obs.plant_projection.reserve(obs.subsets.size());
  for (const StateSet& x : obs.subsets) {
    StateSet plant;
    for (StateId q : x) {
      if (obs.diamond.is_plant_state(q)) plant.push_back(q);
    }
    obs.plant_projection.push_back(std::move(plant));
  }
  return obs;
}

StateId observer_state(const CAObserver& obs, const Word& t) {
  StateId x = obs.observer.initial();
  for (EventId e : t) {
    if (e < 0 || e >= obs.observer.alphabet().size()) throw std::invalid_argument("unknown event id");
    auto next = obs.observer.next(x, e);
    if (!next) return kNoState;
    x = *next;
  }
  return x;
}

StateEstimate state_estimate(const CAObserver& obs, const Word& t) {
  const StateId x = observer_state(obs, t);
  if (x == kNoState) return {};
  return obs.plant_projection[x];
}

StateEstimate lift_estimate(const StateEstimate& product_estimate, const ProductAutomaton& product) {
  std::vector<StateId> plant;
  plant.reserve(product_estimate.size());
  for (StateId y : product_estimate) plant.push_back(product.components.at(y).first);
  return make_state_set(std::move(plant));
}

std::string format_estimate(const Automaton& plant, const StateEstimate& estimate) {
  return encode_state_set(plant, estimate);
}

}  // namespace desca
