#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "desca/attack.hpp"
#include "desca/supervisor.hpp"

namespace desca {

struct Counterexample {
  /// The plant string s; the failing string is s followed by `event` when set.
  Word string;
  /// The continuation σ, when the failure is about extending s.
  std::optional<EventId> event;
  /// An attacked observation involved in the failure.
  std::optional<Word> observation;
  std::string note;
};

struct Verdict {
  enum class Status { holds, fails, holds_to_depth };

  Status status = Status::holds;
  std::optional<Counterexample> counterexample;
  /// Bound used by bounded checks.
  std::optional<int> depth;
  std::string detail;

  bool passed() const { return status != Status::fails; }
};

const char* to_string(Verdict::Status s);

/// K(Σ_uc ∪ Σ_c^a) ∩ L(G) ⊆ K, decided by a search over h's reachable states.
/// The counterexample is a shortest s ∈ K plus the escaping event.
/// Throws std::invalid_argument if h is not a sub-automaton of g.
Verdict check_ca_controllability(const Automaton& g, const Automaton& h, EventSet actuator_attackable);

/// Checks the CA-observability condition for every sσ ∈ K with |sσ| ≤ depth.
/// Candidate observations t range over Φ^π(s); for each t the inverse image
/// (Φ^π)^{-1}(t) is summarised by the estimate of a K-tagged copy of g, so
/// the only bound is on s (and on t when an attack language is infinite).
Verdict check_ca_observability_bounded(const Automaton& g, const Automaton& h, const SensorAttackPolicy& policy,
                                       int depth);

/// Product (q, W) generating L_a(S^a/G), where W is the set of observer
/// states reachable by the attacked observations of the string so far. The
/// value `bottom` in W stands for observations the observer rejects.
struct LargeLanguageAutomaton {
  Automaton automaton;
  std::vector<std::pair<StateId, StateSet>> components;
  StateId bottom = kNoState;
};

LargeLanguageAutomaton large_language_automaton(const Automaton& g, const Supervisor& sup,
                                                const SensorAttackPolicy& policy, EventSet actuator_attackable);

/// Literal evaluation of the large-language recursion up to |s| ≤ depth,
/// enumerating Φ^π(s) string by string and every attacked control in Δ(S(t)).
/// Attack languages with unbounded strings are sampled up to length
/// 2·|states(F_tr)|, so the result is exact only for finite attack languages.
std::set<Word> brute_force_large_language(const Automaton& g, const Supervisor& sup,
                                          const SensorAttackPolicy& policy, EventSet actuator_attackable,
                                          int depth);

/// L_a(S^a/G) = L(H), decided on the finite product with h.
Verdict verify_large_language_equals(const Automaton& g, const Automaton& h, const Supervisor& sup,
                                     const SensorAttackPolicy& policy, EventSet actuator_attackable);

/// Enumeration depth used when none is given: 2·(|X| + |Q|).
int default_depth(const Supervisor& sup, const Automaton& g);

/// Per-step cap on attacked-observation length: the longest string of a
/// finite attack language, or 2·|states| when the language is unbounded.
std::size_t attack_length_cap(const Automaton& attack_language);

}  // namespace desca
