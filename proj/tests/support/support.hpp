#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "desca/attack.hpp"
#include "desca/automaton.hpp"
#include "desca/supervisor.hpp"

namespace support {

using desca::Automaton;
using desca::EventAlphabet;
using desca::EventSet;
using desca::Word;

// Event ids of the running example.
inline constexpr desca::EventId kAlpha = 0;
inline constexpr desca::EventId kBeta = 1;
inline constexpr desca::EventId kLambda = 2;
inline constexpr desca::EventId kMu = 3;

std::shared_ptr<const EventAlphabet> example_alphabet(EventSet actuator_attackable);

// Plant G: 1 -alpha-> 2 -lambda-> 3 -mu-> 1 and 2 -alpha-> 4.
Automaton example_plant(const std::shared_ptr<const EventAlphabet>& alphabet);
// H: G restricted to {1,2,3}.
Automaton example_spec(const std::shared_ptr<const EventAlphabet>& alphabet);
// Marks {eps, lambda, lambda mu}.
Automaton attack_tr1(const std::shared_ptr<const EventAlphabet>& alphabet);
// Marks {mu, beta}.
Automaton attack_tr2(const std::shared_ptr<const EventAlphabet>& alphabet);
desca::SensorAttackPolicy example_policy(const std::shared_ptr<const EventAlphabet>& alphabet);
desca::ObservationAttackStrategy example_strategy(const std::shared_ptr<const EventAlphabet>& alphabet);

struct Example {
  std::shared_ptr<const EventAlphabet> alphabet;
  Automaton g;
  Automaton h;
  desca::SensorAttackPolicy policy;
};

// Case 1: actuator attacks on {alpha, beta}; case 2: on {beta}.
Example example_case(int which);

Word w(const EventAlphabet& alphabet, const std::string& text);
std::set<Word> words(const EventAlphabet& alphabet, const std::vector<std::string>& texts);

std::string corpus_path(const std::string& file);

// Independent oracles. None of them call the library's language algorithms.

// Words of L(a) or L_m(a) up to `depth`, by explicit path search.
std::set<Word> path_words(const Automaton& a, int depth, bool marked_only);

// Observations of one plant transition, truncated at `depth`.
std::set<Word> step_observations(const Automaton& g, const desca::BoundPolicy& policy, std::size_t transition,
                                 int depth);

// Fixpoint over (plant state, observation) pairs with |observation| <= depth.
// Yields Φ^π(L(G)) truncated and, per observation, the consistent plant states.
std::map<Word, std::set<desca::StateId>> observation_oracle(const Automaton& g, const desca::BoundPolicy& policy,
                                                            int depth);

struct RandomModelOptions {
  int max_states = 6;
  int max_events = 4;
  int max_attack_states = 3;
  bool acyclic_attacks = false;
};

struct RandomModel {
  std::shared_ptr<const EventAlphabet> alphabet;
  Automaton g;
  Automaton h;
  desca::SensorAttackPolicy policy;
  EventSet actuator;
};

RandomModel random_model(std::mt19937_64& rng, const RandomModelOptions& options = {});

// Keeps the observer of `sup` and draws every marked state's control at
// random (always including Σ_uc).
desca::Supervisor randomize_controls(const desca::Supervisor& sup, std::mt19937_64& rng);

// Valid supervisors sampled by removing one controllable, non-attackable
// event at a time from `start` and keeping each removal that still verifies.
std::vector<desca::Supervisor> sample_valid_supervisors(const Automaton& g, const Automaton& h,
                                                        const desca::SensorAttackPolicy& policy, EventSet actuator,
                                                        const desca::Supervisor& start, std::mt19937_64& rng,
                                                        int count, int mutations = 20);

}  // namespace support
