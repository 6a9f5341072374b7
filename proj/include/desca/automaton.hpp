#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "desca/alphabet.hpp"

namespace desca {

using StateId = std::uint32_t;
inline constexpr StateId kNoState = std::numeric_limits<StateId>::max();

/// Transition label: an event id, or kEpsilon for a silent move.
using Label = int;
inline constexpr Label kEpsilon = -1;

/// Sorted, duplicate-free set of state ids.
using StateSet = std::vector<StateId>;

struct Transition {
  StateId src = kNoState;
  Label label = kEpsilon;
  StateId dst = kNoState;

  friend auto operator<=>(const Transition&, const Transition&) = default;
};

struct Edge {
  Label label;
  StateId dst;
};

/// Finite automaton over a shared event alphabet. Nondeterminism and
/// ε-labels are represented natively by the transition relation.
///
/// States are named; names are unique within one automaton. Mutators do not
/// reject dangling references, so hand-built models should be checked with
/// validate() before use.
class Automaton {
 public:
  Automaton() = default;
  explicit Automaton(std::shared_ptr<const EventAlphabet> alphabet);

  const EventAlphabet& alphabet() const { return *alphabet_; }
  const std::shared_ptr<const EventAlphabet>& alphabet_ptr() const { return alphabet_; }

  /// Events this automaton is defined over (all alphabet events by default).
  /// Parallel composition synchronises on the intersection of these sets.
  EventSet events() const { return events_; }
  void set_events(EventSet events) { events_ = events; }

  StateId add_state(std::string name, bool marked = false);
  StateId state_count() const { return static_cast<StateId>(names_.size()); }
  std::optional<StateId> find_state(const std::string& name) const;
  StateId state(const std::string& name) const;
  const std::string& state_name(StateId q) const { return names_.at(q); }

  void set_initial(StateId q) { initial_ = q; }
  StateId initial() const { return initial_; }

  void set_marked(StateId q, bool marked = true) { marked_.at(q) = marked ? 1 : 0; }
  bool is_marked(StateId q) const { return marked_.at(q) != 0; }
  StateSet marked_states() const;

  /// Adds (src, label, dst); exact duplicates are ignored.
  void add_transition(StateId src, Label label, StateId dst);
  void add_transition(const std::string& src, const std::string& event, const std::string& dst);

  /// All transitions in insertion order.
  const std::vector<Transition>& transitions() const { return transitions_; }
  std::span<const Edge> out(StateId q) const { return out_.at(q); }
  StateSet successors(StateId q, Label label) const;
  /// First successor under an event, for deterministic automata.
  std::optional<StateId> next(StateId q, EventId e) const;

  bool is_deterministic() const;

  friend bool operator==(const Automaton& a, const Automaton& b);

 private:
  std::shared_ptr<const EventAlphabet> alphabet_;
  EventSet events_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, StateId> index_;
  std::vector<char> marked_;
  StateId initial_ = kNoState;
  std::vector<Transition> transitions_;
  std::vector<std::vector<Edge>> out_;
};

/// Result of a subset construction: each state carries the constituent set.
struct SubsetAutomaton {
  Automaton automaton;
  std::vector<StateSet> subsets;
};

/// Result of a synchronous product: each state carries its component pair.
struct ProductAutomaton {
  Automaton automaton;
  std::vector<std::pair<StateId, StateId>> components;
};

/// Reports every broken invariant; empty iff the automaton is well formed.
std::vector<std::string> validate(const Automaton& a);

/// Restriction to states reachable from the initial state.
Automaton accessible(const Automaton& a);

/// Smallest superset of x closed under ε-transitions.
StateSet unobservable_reach(const Automaton& a, StateSet x);

/// States reached from the initial state under s (with ε-closure).
/// Throws std::invalid_argument for event ids outside the alphabet.
StateSet run(const Automaton& a, const Word& s);
/// Same as run() but starting from an arbitrary state set.
StateSet run_from(const Automaton& a, StateSet from, const Word& s);

/// Observer (powerset) construction over the non-ε labels. The initial state
/// is the ε-closure of the initial state; a subset is marked iff it contains
/// a marked state. Subset states are named by their sorted constituent
/// names, e.g. "{1,3,1/B}".
SubsetAutomaton determinize(const Automaton& a);

/// Accessible synchronous product; shared events synchronise, the rest
/// (and ε-moves) interleave. States are named "(qa,qb)".
ProductAutomaton parallel_compose(const Automaton& a, const Automaton& b);

/// Relabels every transition carrying an event in `erased` as ε.
Automaton erase_events(const Automaton& a, EventSet erased);

/// All strings of L(a) (or L_m(a)) with at most `depth` events.
std::set<Word> enumerate_language(const Automaton& a, int depth, bool marked_only);

/// Length of the longest marked word, or nullopt if L_m(a) is infinite.
/// Returns 0 for an empty marked language.
std::optional<std::size_t> max_word_length(const Automaton& a);

/// True iff h's states are a subset of g's (by name), the initial states
/// agree and h's transitions are exactly g's transitions inside h's states.
bool is_subautomaton(const Automaton& h, const Automaton& g);

/// Sub-automaton of g induced by the named states (which must contain the
/// initial state); throws std::invalid_argument otherwise.
Automaton induced_subautomaton(const Automaton& g, const std::vector<std::string>& states);

/// Canonical "{a,b,c}" encoding of a state set of `a`.
std::string encode_state_set(const Automaton& a, const StateSet& x);

StateSet make_state_set(std::vector<StateId> states);

}  // namespace desca
