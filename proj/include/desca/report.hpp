#pragma once

#include <string>

#include <json.hpp>

#include "desca/simulation.hpp"
#include "desca/supervisor.hpp"
#include "desca/verification.hpp"

namespace desca {

/// Exit status for a verdict: 0 when it passed, 1 when it failed.
int exit_code(const Verdict& v);

/// "s·σ" with event names; "eps" for the empty string.
std::string format_counterexample(const EventAlphabet& alphabet, const Counterexample& c);

std::string verdict_text(const std::string& check, const Verdict& v, const EventAlphabet& alphabet);
nlohmann::json verdict_json(const std::string& check, const Verdict& v, const EventAlphabet& alphabet);

/// One row per observer state: id, state-set encoding, estimate over h, control.
std::string supervisor_table(const Supervisor& sup, const Automaton& h);
nlohmann::json supervisor_json(const Supervisor& sup, const Automaton& h);

nlohmann::json estimate_json(const CAObserver& obs, const Automaton& plant, const Word& t);

nlohmann::json trace_json(const Trace& trace, const EventAlphabet& alphabet);
std::string campaign_text(const CampaignReport& report, const EventAlphabet& alphabet);
nlohmann::json campaign_json(const CampaignReport& report, const EventAlphabet& alphabet);

}  // namespace desca
