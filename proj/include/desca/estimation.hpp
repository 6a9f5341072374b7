#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "desca/attack.hpp"
#include "desca/automaton.hpp"

namespace desca {

/// G⋄: the plant with every attacked transition replaced by its attack
/// automaton. Plant states keep their ids (0..plant_states-1) and form the
/// marked set; injected states follow and are named "k/<F_tr state>" where k
/// is the 1-based position of the attacked transition in transition order.
struct DiamondAutomaton {
  struct Injected {
    std::size_t transition;  ///< index into the plant's transition list
    StateId attack_state;    ///< state of the attack automaton it copies
  };

  Automaton automaton;
  StateId plant_states = 0;
  /// Provenance of injected state plant_states + i.
  std::vector<Injected> injected;

  bool is_plant_state(StateId q) const { return q < plant_states; }
};

/// State-set observer of G⋄_ε. Observer state x is marked iff x ∩ Q ≠ ∅.
struct CAObserver {
  Automaton observer;
  /// Constituents of each observer state (ids in the diamond automaton).
  std::vector<StateSet> subsets;
  /// x ∩ Q for each observer state, as plant state ids.
  std::vector<StateSet> plant_projection;
  DiamondAutomaton diamond;
};

/// Set of plant states consistent with an observation.
using StateEstimate = StateSet;

/// Replaces transition number `transition` of `a` with a copy of f: ε from the
/// source to f's initial state and ε from each marked state of f to the
/// target. Copied states are named "<prefix>/<f state>". Throws
/// std::invalid_argument if the transition index is out of range.
Automaton replace_transition(const Automaton& a, std::size_t transition, const Automaton& f,
                             const std::string& prefix);

DiamondAutomaton build_diamond(const Automaton& g, const BoundPolicy& policy);

/// G⋄_ε: unobservable labels become ε; everything else is unchanged.
DiamondAutomaton erase_unobservable(const DiamondAutomaton& d);

/// CA-observer OBS(G⋄_ε) of g under the policy.
CAObserver build_ca_observer(const Automaton& g, const BoundPolicy& policy);

/// ξ(x0, t), or kNoState when t is not in L(observer).
StateId observer_state(const CAObserver& obs, const Word& t);

/// SE(t) = ξ(x0, t) ∩ Q; empty when t leaves the observer.
StateEstimate state_estimate(const CAObserver& obs, const Word& t);

/// Projects an estimate over G ∥ SA states to the plant component.
StateEstimate lift_estimate(const StateEstimate& product_estimate, const ProductAutomaton& product);

/// "{1,3}" with plant state names.
std::string format_estimate(const Automaton& plant, const StateEstimate& estimate);

}  // namespace desca
