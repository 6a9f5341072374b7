#include "desca/verification.hpp"

#include <deque>
#include <map>
#include <stdexcept>

namespace desca {

const char* to_string(Verdict::Status s) {
  switch (s) {
    case Verdict::Status::holds: return "holds";
    case Verdict::Status::fails: return "fails";
    case Verdict::Status::holds_to_depth: return "holds-to-depth";
  }
  return "?";
}

std::size_t attack_length_cap(const Automaton& attack_language) {
  if (auto len = max_observation_length(attack_language)) return *len;
  return 2 * static_cast<std::size_t>(attack_language.state_count());
}

int default_depth(const Supervisor& sup, const Automaton& g) {
  return 2 * static_cast<int>(sup.observer.observer.state_count() + g.state_count());
}

namespace {

void require_subautomaton(const Automaton& h, const Automaton& g) {
  if (!is_subautomaton(h, g)) throw std::invalid_argument("specification is not a sub-automaton of the plant");
}

}  // namespace

Verdict check_ca_controllability(const Automaton& g, const Automaton& h, EventSet actuator_attackable) {
  require_subautomaton(h, g);
  const EventSet escaping = g.alphabet().uncontrollable() | actuator_attackable;
  std::vector<std::optional<Word>> shortest(h.state_count());
  std::deque<StateId> queue{h.initial()};
  shortest[h.initial()] = Word{};
  while (!queue.empty()) {
    const StateId hq = queue.front();
    queue.pop_front();
    const StateId gq = g.state(h.state_name(hq));
    for (const Edge& e : g.out(gq)) {
      if (e.label == kEpsilon || !escaping.contains(e.label)) continue;
      if (!h.next(hq, e.label)) {
        Verdict v;
        v.status = Verdict::Status::fails;
        v.counterexample = Counterexample{*shortest[hq], e.label, std::nullopt,
                                          "uncontrollable or actuator-attackable event leaves the specification"};
        return v;
      }
    }
    for (const Edge& e : h.out(hq)) {
      if (!shortest[e.dst]) {
        Word w = *shortest[hq];
        w.push_back(e.label);
        shortest[e.dst] = std::move(w);
        queue.push_back(e.dst);
      }
    }
  }
  return Verdict{};
}

namespace {

// Plant paired with a flag recording whether the path so far stayed in K.
struct TaggedPlant {
  Automaton automaton;
  std::vector<StateId> plant_state;
  std::vector<StateId> spec_state;  // kNoState once the path has left K
  BoundPolicy policy;
};

TaggedPlant tag_with_spec(const Automaton& g, const Automaton& h, const BoundPolicy& policy) {
  TaggedPlant out{Automaton(g.alphabet_ptr()), {}, {}, {}};
  out.automaton.set_events(g.events());
  std::map<std::pair<StateId, StateId>, StateId> index;
  std::deque<StateId> queue;
  auto intern = [&](StateId q, StateId hq) {
    auto [it, fresh] = index.emplace(std::pair{q, hq}, out.automaton.state_count());
    if (fresh) {
      out.automaton.add_state(hq == kNoState ? g.state_name(q) + "!" : g.state_name(q));
      out.plant_state.push_back(q);
      out.spec_state.push_back(hq);
      queue.push_back(it->second);
    }
    return it->second;
  };
  out.automaton.set_initial(intern(g.initial(), h.initial()));
  const auto& transitions = g.transitions();
  while (!queue.empty()) {
    const StateId y = queue.front();
    queue.pop_front();
    const StateId q = out.plant_state[y];
    const StateId hq = out.spec_state[y];
    for (std::size_t i = 0; i < transitions.size(); ++i) {
      const Transition& t = transitions[i];
      if (t.src != q) continue;
      std::optional<StateId> hn;
      if (hq != kNoState && t.label != kEpsilon) hn = h.next(hq, t.label);
      const StateId z = intern(t.dst, hn ? *hn : kNoState);
      out.automaton.add_transition(y, t.label, z);
      const int k = policy.attack_of[i];
      out.policy.attack_of.push_back(k < 0 ? -1 : static_cast<int>(out.policy.languages.size()));
      if (k >= 0) {
        out.policy.transition_of.push_back(out.automaton.transitions().size() - 1);
        out.policy.languages.push_back(policy.languages[static_cast<std::size_t>(k)]);
      }
    }
  }
  return out;
}

}  // namespace

Verdict check_ca_observability_bounded(const Automaton& g, const Automaton& h, const SensorAttackPolicy& policy,
                                       int depth) {
  if (depth < 1) throw std::invalid_argument("observability depth must be at least 1");
  require_subautomaton(h, g);
  const BoundPolicy bound = policy.bind(g);
  const TaggedPlant tagged = tag_with_spec(g, h, bound);
  const CAObserver observer = build_ca_observer(tagged.automaton, tagged.policy);

  // Does every s' in the inverse image of the observation reaching x that
  // lies in K and can continue with σ in G continue with σ inside K?
  std::map<std::pair<StateId, EventId>, bool> memo;
  auto safe_to_enable = [&](StateId x, EventId sigma) {
    if (x == kNoState) return true;
    auto [it, fresh] = memo.emplace(std::pair{x, sigma}, true);
    if (!fresh) return it->second;
    for (StateId y : observer.plant_projection[x]) {
      const StateId hq = tagged.spec_state[y];
      if (hq == kNoState) continue;
      if (g.next(tagged.plant_state[y], sigma) && !h.next(hq, sigma)) {
        it->second = false;
        break;
      }
    }
    return it->second;
  };

  std::size_t longest_cap = 1;
  for (const Automaton& f : bound.languages) longest_cap = std::max(longest_cap, attack_length_cap(f));
  bool truncated = false;

  struct Item {
    Word s;
    StateId hq;
  };
  std::deque<Item> queue{{Word{}, h.initial()}};
  while (!queue.empty()) {
    Item item = std::move(queue.front());
    queue.pop_front();
    if (static_cast<int>(item.s.size()) >= depth) continue;
    const int obs_depth = static_cast<int>(std::max<std::size_t>(1, item.s.size()) * longest_cap);
    const WordSet phi = phi_enumerate(item.s, g, bound, obs_depth);
    truncated = truncated || phi.truncated;
    for (const Edge& e : h.out(item.hq)) {
      bool witnessed = false;
      for (const Word& t : phi.words) {
        if (safe_to_enable(observer_state(observer, t), e.label)) {
          witnessed = true;
          break;
        }
      }
      if (!witnessed) {
        Verdict v;
        v.status = Verdict::Status::fails;
        v.depth = depth;
        v.counterexample = Counterexample{
            item.s, e.label, phi.words.empty() ? std::nullopt : std::optional<Word>(*phi.words.begin()),
            "every attacked observation of s is shared with a string in K whose continuation leaves K"};
        return v;
      }
      Word next = item.s;
      next.push_back(e.label);
      queue.push_back({std::move(next), e.dst});
    }
  }
  Verdict v;
  v.status = Verdict::Status::holds_to_depth;
  v.depth = depth;
  v.detail = truncated ? "attacked observations sampled up to length " + std::to_string(longest_cap) +
                             " per attacked transition"
                       : "all attacked observations enumerated";
  return v;
}

namespace {

// Observer-state relations R_tr, computed on demand and memoised.
class ObservationRelations {
 public:
  ObservationRelations(const Automaton& g, const CAObserver& obs, const BoundPolicy& policy)
      : g_(g), obs_(obs.observer), policy_(policy), bottom_(obs.observer.state_count()) {
    for (const Automaton& f : policy.languages) projected_.push_back(erase_events(f, f.alphabet().unobservable()));
  }

  StateId bottom() const { return bottom_; }

  const StateSet& successors(std::size_t transition, StateId w) {
    auto [it, fresh] = memo_.emplace(std::pair{transition, w}, StateSet{});
    if (!fresh) return it->second;
    const int k = policy_.attack_of[transition];
    if (k < 0) {
      const Label label = g_.transitions()[transition].label;
      const bool silent = label == kEpsilon || !g_.alphabet().observable().contains(label);
      it->second = {silent ? w : step(w, label)};
      return it->second;
    }
    const Automaton& f = projected_[static_cast<std::size_t>(k)];
    std::set<std::pair<StateId, StateId>> seen;
    std::vector<std::pair<StateId, StateId>> stack{{w, f.initial()}};
    seen.insert(stack.back());
    std::vector<StateId> out;
    while (!stack.empty()) {
      const auto [x, fq] = stack.back();
      stack.pop_back();
      if (f.is_marked(fq)) out.push_back(x);
      for (const Edge& e : f.out(fq)) {
        const std::pair next{e.label == kEpsilon ? x : step(x, e.label), e.dst};
        if (seen.insert(next).second) stack.push_back(next);
      }
    }
    it->second = make_state_set(std::move(out));
    return it->second;
  }

 private:
  StateId step(StateId w, EventId e) const {
    if (w == bottom_) return bottom_;
    auto next = obs_.next(w, e);
    return next ? *next : bottom_;
  }

  const Automaton& g_;
  const Automaton& obs_;
  const BoundPolicy& policy_;
  StateId bottom_;
  std::vector<Automaton> projected_;
  std::map<std::pair<std::size_t, StateId>, StateSet> memo_;
};

void require_estimate_based(const Supervisor& sup) {
  if (sup.controls.size() != sup.observer.observer.state_count()) {
    throw std::invalid_argument("unsupported supervisor: controls are not keyed on observer states");
  }
}

}  // namespace

LargeLanguageAutomaton large_language_automaton(const Automaton& g, const Supervisor& sup,
                                                const SensorAttackPolicy& policy, EventSet actuator_attackable) {
  require_estimate_based(sup);
  const BoundPolicy bound = policy.bind(g);
  ObservationRelations relations(g, sup.observer, bound);
  const StateId bottom = relations.bottom();
  const EventSet always = g.alphabet().uncontrollable() | actuator_attackable;

  LargeLanguageAutomaton out{Automaton(g.alphabet_ptr()), {}, bottom};
  out.automaton.set_events(g.events());
  std::map<std::pair<StateId, StateSet>, StateId> index;
  std::deque<StateId> queue;
  auto intern = [&](StateId q, StateSet w) {
    auto key = std::pair{q, w};
    auto [it, fresh] = index.emplace(key, out.automaton.state_count());
    if (fresh) {
      std::string name = "(" + g.state_name(q) + ",[";
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (i > 0) name += ',';
        name += w[i] == bottom ? std::string("_") : std::to_string(w[i]);
      }
      out.automaton.add_state(name + "])", true);
      out.components.emplace_back(q, std::move(w));
      queue.push_back(it->second);
    }
    return it->second;
  };
  out.automaton.set_initial(intern(g.initial(), {sup.observer.observer.initial()}));

  const auto& transitions = g.transitions();
  std::vector<std::vector<std::size_t>> outgoing(g.state_count());
  for (std::size_t i = 0; i < transitions.size(); ++i) outgoing[transitions[i].src].push_back(i);

  while (!queue.empty()) {
    const StateId p = queue.front();
    queue.pop_front();
    const StateId q = out.components[p].first;
    const StateSet w = out.components[p].second;
    for (std::size_t i : outgoing[q]) {
      const Label sigma = transitions[i].label;
      bool enabled = sigma == kEpsilon || always.contains(sigma);
      for (std::size_t j = 0; !enabled && j < w.size(); ++j) {
        enabled = sup.control_at(w[j] == bottom ? kNoState : w[j]).contains(sigma);
      }
      if (!enabled) continue;
      std::vector<StateId> next;
      for (StateId x : w) {
        const StateSet& succ = relations.successors(i, x);
        next.insert(next.end(), succ.begin(), succ.end());
      }
      const StateId r = intern(transitions[i].dst, make_state_set(std::move(next)));
      out.automaton.add_transition(p, sigma, r);
    }
  }
  return out;
}

namespace {

std::set<Word> concat_all(const std::set<Word>& prefix, const std::set<Word>& suffix) {
  std::set<Word> out;
  for (const Word& a : prefix) {
    for (const Word& b : suffix) {
      Word w = a;
      w.insert(w.end(), b.begin(), b.end());
      out.insert(std::move(w));
    }
  }
  return out;
}

}  // namespace

std::set<Word> brute_force_large_language(const Automaton& g, const Supervisor& sup,
                                          const SensorAttackPolicy& policy, EventSet actuator_attackable,
                                          int depth) {
  if (depth < 0) throw std::invalid_argument("enumeration depth must be non-negative");
  require_estimate_based(sup);
  const BoundPolicy bound = policy.bind(g);
  const EventAlphabet& alphabet = g.alphabet();
  const auto& transitions = g.transitions();

  std::vector<std::set<Word>> emitted(transitions.size());
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    if (const Automaton* f = bound.language(i)) {
      const Automaton projected = erase_events(*f, alphabet.unobservable());
      emitted[i] = enumerate_language(projected, static_cast<int>(attack_length_cap(*f)), true);
    } else {
      emitted[i] = {natural_projection(Word{transitions[i].label}, alphabet)};
    }
  }

  struct Entry {
    Word s;
    StateId q;
    std::set<Word> observations;  // Φ^π(s)
  };
  std::set<Word> language;
  std::vector<Entry> level{{Word{}, g.initial(), {Word{}}}};
  for (int d = 0;; ++d) {
    for (const Entry& e : level) language.insert(e.s);
    if (d == depth) break;
    std::vector<Entry> next_level;
    for (const Entry& e : level) {
      for (std::size_t i = 0; i < transitions.size(); ++i) {
        if (transitions[i].src != e.q) continue;
        const EventId sigma = transitions[i].label;
        bool enabled = alphabet.uncontrollable().contains(sigma);
        for (auto t = e.observations.begin(); !enabled && t != e.observations.end(); ++t) {
          for (const Control& received : attacked_commands(sup, *t, actuator_attackable)) {
            if (received.contains(sigma)) {
              enabled = true;
              break;
            }
          }
        }
        if (!enabled) continue;
        Word s = e.s;
        s.push_back(sigma);
        next_level.push_back({std::move(s), transitions[i].dst, concat_all(e.observations, emitted[i])});
      }
    }
    if (next_level.empty()) break;
    level = std::move(next_level);
  }
  return language;
}

Verdict verify_large_language_equals(const Automaton& g, const Automaton& h, const Supervisor& sup,
                                     const SensorAttackPolicy& policy, EventSet actuator_attackable) {
  require_subautomaton(h, g);
  const LargeLanguageAutomaton ll = large_language_automaton(g, sup, policy, actuator_attackable);
  const Automaton& a = ll.automaton;
  std::map<std::pair<StateId, StateId>, Word> seen;
  std::deque<std::pair<StateId, StateId>> queue{{a.initial(), h.initial()}};
  seen.emplace(queue.front(), Word{});
  while (!queue.empty()) {
    const auto [p, hq] = queue.front();
    queue.pop_front();
    const Word s = seen.at({p, hq});
    EventSet labels;
    for (const Edge& e : a.out(p)) labels.insert(e.label);
    for (const Edge& e : h.out(hq)) labels.insert(e.label);
    for (EventId sigma : labels.members()) {
      auto pn = a.next(p, sigma);
      auto hn = h.next(hq, sigma);
      if (pn.has_value() != hn.has_value()) {
        Verdict v;
        v.status = Verdict::Status::fails;
        v.counterexample = Counterexample{
            s, sigma, std::nullopt,
            pn ? "the attacked closed loop can generate this string outside the specification"
               : "the specification string is not generated by the attacked closed loop"};
        return v;
      }
      if (!pn) continue;
      Word w = s;
      w.push_back(sigma);
      if (seen.emplace(std::pair{*pn, *hn}, w).second) queue.emplace_back(*pn, *hn);
    }
  }
  return Verdict{};
}

}  // namespace desca
