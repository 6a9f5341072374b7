#pragma once

#include <string>
#include <vector>

#include "desca/attack.hpp"
#include "desca/estimation.hpp"

namespace desca {

/// State-estimate-based supervisor: a CA-observer built on the specification
/// automaton plus one control per observer state. Observations that the
/// observer does not mark receive `default_control` (Σ_uc).
struct Supervisor {
  CAObserver observer;
  /// Per observer state: the estimate over the specification's states.
  std::vector<StateEstimate> estimates;
  /// Per observer state: the issued control.
  std::vector<Control> controls;
  Control default_control;

  /// Control for an observer state; kNoState and unmarked states get the default.
  Control control_at(StateId x) const;
  Control control_for(const Word& t) const;
};

/// η(se): events leading from some state of se out of the specification.
/// `se` holds state ids of h; `g` supplies the transitions.
EventSet disabled_set(const StateEstimate& se, const Automaton& g, const Automaton& h);

/// S_CA: observer on h under the policy restricted to h's transitions, with
/// control (Σ − η(SE)) ∪ Σ_uc on marked observer states. Policy entries for
/// transitions absent from h are reported through `warnings`.
Supervisor synthesize_ca_supervisor(const Automaton& g, const Automaton& h, const SensorAttackPolicy& policy,
                                    std::vector<std::string>* warnings = nullptr);

/// Supervisor for an observation-based attack together with the converted
/// transition-based setting it is correct for.
struct ObservationSupervisor {
  Supervisor supervisor;
  /// G̃ = G ∥ SA and π̃.
  ConvertedAttack plant;
  /// H̃ = H ∥ SA and its π̃.
  ConvertedAttack spec;
};

/// S̃_CA: builds H̃ = H ∥ SA, converts ω to π̃, observes H̃ and lifts the
/// estimates back to H before applying η.
ObservationSupervisor synthesize_obs_based(const Automaton& g, const Automaton& h,
                                           const ObservationAttackStrategy& strategy);

/// S^a(t) = Δ(S(t)).
std::vector<Control> attacked_commands(const Supervisor& sup, const Word& t, EventSet actuator_attackable);

/// Pointwise union; throws std::invalid_argument if the observers differ.
Supervisor supervisor_union(const Supervisor& a, const Supervisor& b);

enum class Permissiveness { equal, strictly_less, strictly_greater, incomparable };

/// Pointwise subset comparison over the marked observer states.
/// Throws std::invalid_argument if the observers differ.
Permissiveness compare_permissiveness(const Supervisor& a, const Supervisor& b);

const char* to_string(Permissiveness p);

}  // namespace desca
