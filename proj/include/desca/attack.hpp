#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "desca/automaton.hpp"

namespace desca {

/// Raised when an operation's documented precondition does not hold.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A plant transition identified by state names, so one policy can be bound
/// to a plant and to any of its sub-automata.
struct TransitionKey {
  std::string src;
  EventId event = 0;
  std::string dst;

  friend auto operator<=>(const TransitionKey&, const TransitionKey&) = default;
};

/// Attack languages bound to the transitions of one concrete automaton.
struct BoundPolicy {
  /// Per transition index of the automaton: index into `languages`, or -1.
  std::vector<int> attack_of;
  /// Attack automaton F_tr per attacked transition, in transition order.
  std::vector<Automaton> languages;
  /// Transition index of each attacked transition.
  std::vector<std::size_t> transition_of;

  const Automaton* language(std::size_t transition) const {
    const int k = attack_of.at(transition);
    return k < 0 ? nullptr : &languages[static_cast<std::size_t>(k)];
  }
};

/// Transition-based sensor attack policy π : δ^a → regular languages.
///
/// Entries are declared per transition, or once per event as shorthand for
/// every transition carrying that event. Per-transition entries win.
class SensorAttackPolicy {
 public:
  void attack_transition(TransitionKey tr, Automaton language);
  void attack_event(EventId event, Automaton language);

  const std::vector<std::pair<TransitionKey, Automaton>>& transition_entries() const {
    return by_transition_;
  }
  const std::vector<std::pair<EventId, Automaton>>& event_entries() const { return by_event_; }
  bool empty() const { return by_transition_.empty() && by_event_.empty(); }

  /// Checks the policy against plant g: keyed transitions exist and carry a
  /// sensor-attackable event, attack languages are over observable events
  /// and nonempty.
  std::vector<std::string> violations(const Automaton& g) const;

  /// Resolves the policy onto a's transitions. Per-transition entries that do
  /// not match any transition of `a` are reported through `unmatched`.
  BoundPolicy bind(const Automaton& a, std::vector<std::string>* unmatched = nullptr) const;

  friend bool operator==(const SensorAttackPolicy&, const SensorAttackPolicy&) = default;

 private:
  std::vector<std::pair<TransitionKey, Automaton>> by_transition_;
  std::vector<std::pair<EventId, Automaton>> by_event_;
};

/// Observation-based sensor attack: a deterministic context automaton SA over
/// Σ_o and attack languages ω(z, σ) for σ ∈ Σ_o^a. Missing entries mean the
/// event is passed through unchanged.
struct ObservationAttackStrategy {
  struct Entry {
    StateId state = kNoState;
    EventId event = 0;
    Automaton language;

    friend bool operator==(const Entry&, const Entry&) = default;
  };

  Automaton sa;
  std::vector<Entry> omega;

  const Automaton* attack_language(StateId z, EventId event) const;

  friend bool operator==(const ObservationAttackStrategy&, const ObservationAttackStrategy&) = default;
};

/// A set of strings plus whether longer members were cut off by the depth bound.
struct WordSet {
  std::set<Word> words;
  bool truncated = false;
};

/// Δ(γ): every control obtainable from γ by adding or removing events of
/// Σ_c^a. Sorted; always 2^|Σ_c^a| elements.
std::vector<Control> delta_control(Control issued, EventSet actuator_attackable);

/// Automaton marking Θ^π(s): the concatenation, step by step along s, of
/// {σ_k} or A_tr for attacked transitions. Throws std::domain_error if
/// s ∉ L(g).
Automaton theta_automaton(const Word& s, const Automaton& g, const BoundPolicy& policy);

/// Φ^π(s) = P(Θ^π(s)) restricted to strings of length ≤ depth.
WordSet phi_enumerate(const Word& s, const Automaton& g, const BoundPolicy& policy, int depth);

/// Φ^ω(t), built by the recursion over the SA states visited by t.
/// Throws std::domain_error if t ∉ L(SA).
WordSet phi_omega(const Word& t, const ObservationAttackStrategy& strategy, int depth);

/// Shortest observable string of P(L(g)) that SA cannot follow, if any.
std::optional<Word> sa_containment_witness(const Automaton& g, const Automaton& sa);

struct ConvertedAttack {
  /// G̃ = G ∥ SA with its component map.
  ProductAutomaton plant;
  /// π̃: ((q,z), σ, (q',z')) ↦ ω(z, σ) for σ ∈ Σ_o^a.
  SensorAttackPolicy policy;
};

/// Rewrites an observation-based strategy as a transition-based policy on
/// G ∥ SA. Throws PreconditionError naming a witness when P(L(g)) ⊄ L(SA).
ConvertedAttack convert_observation_based(const Automaton& g, const ObservationAttackStrategy& strategy);

/// Longest string of the projected attack language, or nullopt if unbounded.
std::optional<std::size_t> max_observation_length(const Automaton& attack_language);

/// Number of observable symbols one transition of `a` can emit under the
/// policy: 1 for observable unattacked events, 0 for unobservable, and the
/// longest projected attack string otherwise (nullopt if unbounded).
std::optional<std::size_t> max_emission(const Automaton& a, const BoundPolicy& policy,
                                        std::size_t transition);

}  // namespace desca
