#include "desca/report.hpp"

#include <sstream>

namespace desca {

namespace {

nlohmann::json names(const EventAlphabet& alphabet, const Word& w) {
  nlohmann::json out = nlohmann::json::array();
  for (EventId e : w) out.push_back(alphabet.name(e));
  return out;
}

nlohmann::json names(const EventAlphabet& alphabet, EventSet s) {
  nlohmann::json out = nlohmann::json::array();
  for (EventId e : s.members()) out.push_back(alphabet.name(e));
  return out;
}

nlohmann::json state_names(const Automaton& a, const StateSet& x) {
  nlohmann::json out = nlohmann::json::array();
  for (StateId q : x) out.push_back(a.state_name(q));
  return out;
}

}  // namespace

int exit_code(const Verdict& v) { return v.passed() ? 0 : 1; }

std::string format_counterexample(const EventAlphabet& alphabet, const Counterexample& c) {
  Word w = c.string;
  if (c.event) w.push_back(*c.event);
  if (w.empty()) return "eps";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0) out += "\xC2\xB7";
    out += alphabet.name(w[i]);
  }
  return out;
}

std::string verdict_text(const std::string& check, const Verdict& v, const EventAlphabet& alphabet) {
  std::ostringstream out;
  out << check << ": " << to_string(v.status);
  if (v.depth) out << " (depth " << *v.depth << ")";
  out << '\n';
  if (v.counterexample) {
    const Counterexample& c = *v.counterexample;
    out << "counterexample: " << format_counterexample(alphabet, c) << '\n';
    if (c.observation) out << "observation: " << format_word(alphabet, *c.observation) << '\n';
    if (!c.note.empty()) out << "note: " << c.note << '\n';
  }
  if (!v.detail.empty()) out << v.detail << '\n';
  return out.str();
}

nlohmann::json verdict_json(const std::string& check, const Verdict& v, const EventAlphabet& alphabet) {
  nlohmann::json out{{"check", check}, {"status", to_string(v.status)}};
  out["depth"] = v.depth ? nlohmann::json(*v.depth) : nlohmann::json(nullptr);
  if (v.counterexample) {
    const Counterexample& c = *v.counterexample;
    nlohmann::json ce{{"string", names(alphabet, c.string)}, {"note", c.note}};
    ce["event"] = c.event ? nlohmann::json(alphabet.name(*c.event)) : nlohmann::json(nullptr);
    ce["observation"] = c.observation ? names(alphabet, *c.observation) : nlohmann::json(nullptr);
    out["counterexample"] = std::move(ce);
  } else {
    out["counterexample"] = nullptr;
  }
  out["detail"] = v.detail;
  return out;
}

std::string supervisor_table(const Supervisor& sup, const Automaton& h) {
  const Automaton& obs = sup.observer.observer;
  const EventAlphabet& alphabet = h.alphabet();
  std::ostringstream out;
  out << "# state\tobserver-state\testimate\tcontrol\n";
  for (StateId x = 0; x < obs.state_count(); ++x) {
    out << x << (x == obs.initial() ? "*" : "") << '\t' << obs.state_name(x) << '\t';
    if (obs.is_marked(x)) {
      out << format_estimate(h, sup.estimates[x]);
    } else {
      out << '-';
    }
    out << '\t' << format_event_set(alphabet, sup.control_at(x)) << '\n';
  }
  out << "default\t-\t-\t" << format_event_set(alphabet, sup.default_control) << '\n';
  return out.str();
}

nlohmann::json supervisor_json(const Supervisor& sup, const Automaton& h) {
  const Automaton& obs = sup.observer.observer;
  const EventAlphabet& alphabet = h.alphabet();
  nlohmann::json states = nlohmann::json::array();
  for (StateId x = 0; x < obs.state_count(); ++x) {
    nlohmann::json row{{"id", x}, {"name", obs.state_name(x)}, {"marked", obs.is_marked(x)}};
    row["estimate"] = obs.is_marked(x) ? state_names(h, sup.estimates[x]) : nlohmann::json::array();
    row["control"] = names(alphabet, sup.control_at(x));
    nlohmann::json edges = nlohmann::json::array();
    for (const Edge& e : obs.out(x)) edges.push_back({{"event", alphabet.name(e.label)}, {"target", e.dst}});
    row["transitions"] = std::move(edges);
    states.push_back(std::move(row));
  }
  return {{"initial", obs.initial()}, {"states", std::move(states)},
          {"default_control", names(alphabet, sup.default_control)}};
}

nlohmann::json estimate_json(const CAObserver& obs, const Automaton& plant, const Word& t) {
  const EventAlphabet& alphabet = plant.alphabet();
  const StateId x = observer_state(obs, t);
  nlohmann::json out{{"observation", names(alphabet, t)}};
  if (x == kNoState) {
    out["observer_state"] = nullptr;
    out["estimate"] = nlohmann::json::array();
  } else {
    out["observer_state"] = obs.observer.state_name(x);
    out["estimate"] = state_names(plant, obs.plant_projection[x]);
  }
  return out;
}

nlohmann::json trace_json(const Trace& trace, const EventAlphabet& alphabet) {
  nlohmann::json steps = nlohmann::json::array();
  for (const TraceStep& s : trace.steps) {
    steps.push_back({{"event", alphabet.name(s.event)},
                     {"issued", names(alphabet, s.issued)},
                     {"received", names(alphabet, s.received)},
                     {"observation", names(alphabet, s.observation)},
                     {"safe", s.safe}});
  }
  return {{"safe", trace.safe}, {"fragment_cap", trace.fragment_cap}, {"steps", std::move(steps)}};
}

std::string campaign_text(const CampaignReport& report, const EventAlphabet& alphabet) {
  std::ostringstream out;
  out << "trials: " << report.trials << '\n';
  out << "violations: " << report.violations << '\n';
  out << "observer states visited: " << report.observer_states.size() << '\n';
  for (const Word& s : report.violating_strings) out << "violating string: " << format_word(alphabet, s) << '\n';
  if (report.first_violation) out << "first violation:\n" << serialize_trace(*report.first_violation, alphabet);
  return out.str();
}

nlohmann::json campaign_json(const CampaignReport& report, const EventAlphabet& alphabet) {
  nlohmann::json strings = nlohmann::json::array();
  for (const Word& s : report.violating_strings) strings.push_back(names(alphabet, s));
  nlohmann::json out{{"trials", report.trials},
                     {"violations", report.violations},
                     {"observer_states_visited", report.observer_states.size()},
                     {"violating_strings", std::move(strings)}};
  out["first_violation"] =
      report.first_violation ? trace_json(*report.first_violation, alphabet) : nlohmann::json(nullptr);
  return out;
}

}  // namespace desca
