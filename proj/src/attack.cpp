#include "desca/attack.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace desca {

void SensorAttackPolicy::attack_transition(TransitionKey tr, Automaton language) {
  for (auto& [key, f] : by_transition_) {
    if (key == tr) {
      f = std::move(language);
      return;
    }
  }
  by_transition_.emplace_back(std::move(tr), std::move(language));
}

void SensorAttackPolicy::attack_event(EventId event, Automaton language) {
  for (auto& [e, f] : by_event_) {
    if (e == event) {
      f = std::move(language);
      return;
    }
  }
  by_event_.emplace_back(event, std::move(language));
}

namespace {

bool marks_nothing(const Automaton& f) { return accessible(f).marked_states().empty(); }

void check_language(const Automaton& f, const std::string& where, std::vector<std::string>& out) {
  for (auto& v : validate(f)) out.push_back(where + ": " + v);
  if (f.initial() >= f.state_count()) return;
  for (const Transition& t : f.transitions()) {
    if (t.label != kEpsilon && t.label >= 0 && t.label < f.alphabet().size() &&
        !f.alphabet().observable().contains(t.label)) {
      out.push_back(where + ": attack language uses unobservable event '" +
                    f.alphabet().name(t.label) + "'");
    }
  }
  if (marks_nothing(f)) out.push_back(where + ": attack language is empty");
}

std::string describe(const TransitionKey& k, const EventAlphabet& alphabet) {
  return "(" + k.src + ", " + alphabet.name(k.event) + ", " + k.dst + ")";
}

}  // namespace

std::vector<std::string> SensorAttackPolicy::violations(const Automaton& g) const {
  std::vector<std::string> out;
  const EventAlphabet& alphabet = g.alphabet();
  for (const auto& [key, f] : by_transition_) {
    const std::string where = "attack on " + describe(key, alphabet);
    auto src = g.find_state(key.src);
    auto dst = g.find_state(key.dst);
    const bool exists = src && dst &&
                        std::find(g.transitions().begin(), g.transitions().end(),
                                  Transition{*src, key.event, *dst}) != g.transitions().end();
    if (!exists) out.push_back(where + ": no such plant transition");
    if (!alphabet.sensor_attackable().contains(key.event)) {
      out.push_back(where + ": event is not sensor-attackable");
    }
    check_language(f, where, out);
  }
  for (const auto& [event, f] : by_event_) {
    const std::string where = "attack on event " + alphabet.name(event);
    if (!alphabet.sensor_attackable().contains(event)) {
      out.push_back(where + ": event is not sensor-attackable");
    }
    check_language(f, where, out);
  }
  return out;
}

BoundPolicy SensorAttackPolicy::bind(const Automaton& a, std::vector<std::string>* unmatched) const {
  BoundPolicy bound;
  const auto& transitions = a.transitions();
  bound.attack_of.assign(transitions.size(), -1);
  std::vector<char> used(by_transition_.size(), 0);
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    const Transition& t = transitions[i];
    if (t.label == kEpsilon) continue;
    const Automaton* f = nullptr;
    for (std::size_t k = 0; k < by_transition_.size(); ++k) {
      const auto& key = by_transition_[k].first;
      if (key.event == t.label && key.src == a.state_name(t.src) && key.dst == a.state_name(t.dst)) {
        f = &by_transition_[k].second;
        used[k] = 1;
        break;
      }
    }
    if (f == nullptr) {
      for (const auto& [event, lang] : by_event_) {
        if (event == t.label) f = &lang;
      }
    }
    if (f != nullptr) {
      bound.attack_of[i] = static_cast<int>(bound.languages.size());
      bound.languages.push_back(*f);
      bound.transition_of.push_back(i);
    }
  }
  if (unmatched != nullptr) {
    for (std::size_t k = 0; k < by_transition_.size(); ++k) {
      if (!used[k]) unmatched->push_back(describe(by_transition_[k].first, a.alphabet()));
    }
  }
  return bound;
}

const Automaton* ObservationAttackStrategy::attack_language(StateId z, EventId event) const {
  for (const Entry& e : omega) {
    if (e.state == z && e.event == event) return &e.language;
  }
  return nullptr;
}

std::vector<Control> delta_control(Control issued, EventSet actuator_attackable) {
  // Removing γ' and adding γ'' leaves the part outside Σ_c^a untouched and
  // lets the part inside Σ_c^a be any subset.
  const Control fixed = issued - actuator_attackable;
  const std::vector<EventId> free = actuator_attackable.members();
  std::vector<Control> out;
  out.reserve(std::size_t{1} << free.size());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
    Control c = fixed;
    for (std::size_t i = 0; i < free.size(); ++i) {
      if ((mask >> i) & 1U) c.insert(free[i]);
    }
    out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Plant transition indices taken by s, or nullopt if s ∉ L(g).
std::optional<std::vector<std::size_t>> trace_transitions(const Automaton& g, const Word& s) {
  std::vector<std::size_t> path;
  StateId q = g.initial();
  const auto& transitions = g.transitions();
  for (EventId e : s) {
    if (e < 0 || e >= g.alphabet().size()) throw std::invalid_argument("unknown event id");
    std::optional<std::size_t> found;
    for (std::size_t i = 0; i < transitions.size(); ++i) {
      if (transitions[i].src == q && transitions[i].label == e) {
        found = i;
        break;
      }
    }
    if (!found) return std::nullopt;
    path.push_back(*found);
    q = transitions[*found].dst;
  }
  return path;
}

std::set<Word> concat(const std::set<Word>& prefix, const std::set<Word>& suffix, int depth) {
  std::set<Word> out;
  for (const Word& a : prefix) {
    for (const Word& b : suffix) {
      if (static_cast<int>(a.size() + b.size()) > depth) continue;
      Word w = a;
      w.insert(w.end(), b.begin(), b.end());
      out.insert(std::move(w));
    }
  }
  return out;
}

Automaton project(const Automaton& f) { return erase_events(f, f.alphabet().unobservable()); }

}  // namespace

Automaton theta_automaton(const Word& s, const Automaton& g, const BoundPolicy& policy) {
  auto path = trace_transitions(g, s);
  if (!path) throw std::domain_error("string is not in the plant language");
  Automaton theta(g.alphabet_ptr());
  StateId tail = theta.add_state("s0");
  theta.set_initial(tail);
  for (std::size_t k = 0; k < path->size(); ++k) {
    const std::string prefix = "s" + std::to_string(k + 1);
    const StateId head = theta.add_state(prefix);
    if (const Automaton* f = policy.language((*path)[k])) {
      std::vector<StateId> remap(f->state_count());
      for (StateId q = 0; q < f->state_count(); ++q) {
        remap[q] = theta.add_state(prefix + "/" + f->state_name(q));
      }
      for (const Transition& t : f->transitions()) theta.add_transition(remap[t.src], t.label, remap[t.dst]);
      theta.add_transition(tail, kEpsilon, remap[f->initial()]);
      for (StateId q : f->marked_states()) theta.add_transition(remap[q], kEpsilon, head);
    } else {
      theta.add_transition(tail, s[k], head);
    }
    tail = head;
  }
  theta.set_marked(tail);
  return theta;
}

std::optional<std::size_t> max_observation_length(const Automaton& attack_language) {
  return max_word_length(project(attack_language));
}

std::optional<std::size_t> max_emission(const Automaton& a, const BoundPolicy& policy,
                                        std::size_t transition) {
  if (const Automaton* f = policy.language(transition)) return max_observation_length(*f);
  const Label label = a.transitions()[transition].label;
  return (label != kEpsilon && a.alphabet().observable().contains(label)) ? 1 : 0;
}

WordSet phi_enumerate(const Word& s, const Automaton& g, const BoundPolicy& policy, int depth) {
  if (depth < 0) throw std::invalid_argument("enumeration depth must be non-negative");
  auto path = trace_transitions(g, s);
  if (!path) throw std::domain_error("string is not in the plant language");
  WordSet result;
  result.words = {Word{}};
  std::optional<std::size_t> longest = 0;
  for (std::size_t k = 0; k < path->size(); ++k) {
    std::set<Word> step;
    if (const Automaton* f = policy.language((*path)[k])) {
      const Automaton projected = project(*f);
      step = enumerate_language(projected, depth, true);
      auto len = max_word_length(projected);
      longest = (longest && len) ? std::optional<std::size_t>(*longest + *len) : std::nullopt;
    } else {
      step = {natural_projection(Word{s[k]}, g.alphabet())};
      if (longest) *longest += step.begin()->size();
    }
    result.words = concat(result.words, step, depth);
  }
  result.truncated = !longest || *longest > static_cast<std::size_t>(depth);
  return result;
}

WordSet phi_omega(const Word& t, const ObservationAttackStrategy& strategy, int depth) {
  if (depth < 0) throw std::invalid_argument("enumeration depth must be non-negative");
  const Automaton& sa = strategy.sa;
  const EventAlphabet& alphabet = sa.alphabet();
  WordSet result;
  result.words = {Word{}};
  std::optional<std::size_t> longest = 0;
  StateId z = sa.initial();
  for (EventId sigma : t) {
    std::set<Word> step;
    const Automaton* f = alphabet.sensor_attackable().contains(sigma)
                             ? strategy.attack_language(z, sigma)
                             : nullptr;
    if (f != nullptr) {
      const Automaton projected = project(*f);
      step = enumerate_language(projected, depth, true);
      auto len = max_word_length(projected);
      longest = (longest && len) ? std::optional<std::size_t>(*longest + *len) : std::nullopt;
    } else {
      step = {Word{sigma}};
      if (longest) *longest += 1;
    }
    result.words = concat(result.words, step, depth);
    auto next = sa.next(z, sigma);
    if (!next) throw std::domain_error("observation is not in L(SA)");
    z = *next;
  }
  result.truncated = !longest || *longest > static_cast<std::size_t>(depth);
  return result;
}

std::optional<Word> sa_containment_witness(const Automaton& g, const Automaton& sa) {
  const SubsetAutomaton observer = determinize(erase_events(g, g.alphabet().unobservable()));
  const Automaton& obs = observer.automaton;
  std::map<std::pair<StateId, StateId>, Word> seen;
  std::deque<std::pair<StateId, StateId>> queue;
  seen.emplace(std::pair{obs.initial(), sa.initial()}, Word{});
  queue.emplace_back(obs.initial(), sa.initial());
  while (!queue.empty()) {
    const auto [x, z] = queue.front();
    queue.pop_front();
    const Word prefix = seen.at({x, z});
    for (const Edge& e : obs.out(x)) {
      Word w = prefix;
      w.push_back(e.label);
      auto nz = sa.next(z, e.label);
      if (!nz) return w;
      if (seen.emplace(std::pair{e.dst, *nz}, w).second) queue.emplace_back(e.dst, *nz);
    }
  }
  return std::nullopt;
}

ConvertedAttack convert_observation_based(const Automaton& g, const ObservationAttackStrategy& strategy) {
  if (auto witness = sa_containment_witness(g, strategy.sa)) {
    throw PreconditionError("P(L(G)) is not contained in L(SA): witness '" +
                            format_word(g.alphabet(), *witness) + "'");
  }
  ConvertedAttack out{parallel_compose(g, strategy.sa), {}};
  const Automaton& product = out.plant.automaton;
  const EventSet attackable = g.alphabet().sensor_attackable();
  for (const Transition& t : product.transitions()) {
    if (t.label == kEpsilon || !attackable.contains(t.label)) continue;
    const StateId z = out.plant.components[t.src].second;
    if (const Automaton* f = strategy.attack_language(z, t.label)) {
      out.policy.attack_transition({product.state_name(t.src), t.label, product.state_name(t.dst)}, *f);
    }
  }
  return out;
}

}  // namespace desca
