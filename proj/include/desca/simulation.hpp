#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "desca/attack.hpp"
#include "desca/supervisor.hpp"

namespace desca {

/// Everything that defines an attacked closed loop.
struct ClosedLoop {
  const Automaton& plant;
  const Automaton& spec;
  const Supervisor& supervisor;
  const SensorAttackPolicy& policy;
  EventSet actuator_attackable;
};

struct AttackerStrategy {
  enum class Kind { none, random, exhaustive };

  Kind kind = Kind::random;
  std::uint64_t seed = 0;
};

struct TraceStep {
  EventId event = 0;
  Control issued;
  Control received;
  Word observation;
  bool safe = true;

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

/// One closed-loop run. `safe` is false as soon as the plant string leaves L(H).
struct Trace {
  std::vector<TraceStep> steps;
  bool safe = true;
  /// Longest attacked fragment the attacker could choose per transition.
  std::size_t fragment_cap = 0;
  /// Observer states the supervisor visited (kNoState excluded).
  std::set<StateId> observer_states;

  Word plant_string() const;
  friend bool operator==(const Trace&, const Trace&) = default;
};

/// Runs the closed loop for up to max_steps plant events. At each step the
/// supervisor issues the control for the observation received so far, the
/// attacker picks a received control in Δ(issued), one enabled plant event
/// fires, and the attacker picks the observed fragment for it. The run stops
/// early when no event is enabled.
///
/// Random and none attackers draw every choice from a generator seeded with
/// `attacker.seed`. The exhaustive attacker searches all choice sequences up
/// to max_steps and returns the first unsafe trace in search order, or the
/// first maximal safe one if none exists.
Trace simulate(const ClosedLoop& loop, const AttackerStrategy& attacker, int max_steps);

struct CampaignReport {
  int trials = 0;
  int violations = 0;
  std::set<Word> violating_strings;
  std::set<StateId> observer_states;
  std::optional<Trace> first_violation;
};

/// Aggregates simulate over seeds base_seed, base_seed + 1, ... For the
/// exhaustive attacker a single search enumerates every run and each unsafe
/// run counts as one violation.
CampaignReport run_campaign(const ClosedLoop& loop, AttackerStrategy::Kind kind, int trials, int max_steps,
                            std::uint64_t base_seed);

/// One line per step: "step<TAB>event<TAB>{issued}<TAB>{received}<TAB>obs<TAB>safe".
std::string serialize_trace(const Trace& trace, const EventAlphabet& alphabet);

}  // namespace desca
