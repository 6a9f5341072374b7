#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "desca/dot.hpp"
#include "desca/model_io.hpp"
#include "desca/report.hpp"
#include "desca/simulation.hpp"
#include "desca/supervisor.hpp"
#include "desca/verification.hpp"

namespace {

using namespace desca;

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitUsage = 2;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The plant, specification and transition-based policy that the analyses run
// on. Observation-based documents are converted to G ∥ SA first.
struct Scenario {
  ModelDocument doc;
  Automaton g;
  Automaton h;
  SensorAttackPolicy policy;
  EventSet actuator;
  std::optional<ObservationSupervisor> converted;

  bool observation_based() const { return converted.has_value(); }

  Supervisor supervisor() const {
    if (converted) return converted->supervisor;
    return synthesize_ca_supervisor(g, h, policy);
  }

  // Estimate over plant states of the original document.
  StateEstimate lift(const CAObserver& obs, StateId x, const ProductAutomaton* product) const {
    if (x == kNoState) return {};
    return product != nullptr ? lift_estimate(obs.plant_projection[x], *product) : obs.plant_projection[x];
  }
};

Scenario load_scenario(const std::string& path, const std::optional<std::string>& actuator) {
  Scenario s;
  try {
    s.doc = load_model(path);
  } catch (const ParseError& e) {
    throw InputError(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " +
                     e.detail());
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  const auto issues = check_model(s.doc);
  if (!issues.empty()) {
    std::string message = path + ": invalid model";
    for (const auto& i : issues) message += "\n  " + i;
    throw InputError(message);
  }
  if (!s.doc.has_spec()) throw InputError(path + ": model declares no specification");
  const EventAlphabet& alphabet = *s.doc.alphabet;
  try {
    s.actuator = actuator ? parse_event_set(alphabet, *actuator) : alphabet.actuator_attackable();
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("--actuator-attack: ") + e.what());
  }
  const Automaton h = s.doc.spec();
  if (s.doc.strategy) {
    try {
      s.converted = synthesize_obs_based(s.doc.plant, h, *s.doc.strategy);
    } catch (const PreconditionError& e) {
      throw InputError(path + ": " + e.what());
    }
    s.g = s.converted->plant.plant.automaton;
    s.h = s.converted->spec.plant.automaton;
    s.policy = s.converted->plant.policy;
  } else {
    s.g = s.doc.plant;
    s.h = h;
    s.policy = s.doc.policy;
  }
  return s;
}

void print_json(const nlohmann::json& j) { std::cout << j.dump(2) << '\n'; }

std::string observer_text(const CAObserver& obs, const Automaton& plant, const ProductAutomaton* product) {
  std::string out = "# state\tobserver-state\testimate\n";
  const Automaton& a = obs.observer;
  for (StateId x = 0; x < a.state_count(); ++x) {
    StateEstimate se = product != nullptr ? lift_estimate(obs.plant_projection[x], *product) : obs.plant_projection[x];
    out += std::to_string(x) + (x == a.initial() ? "*" : "") + "\t" + a.state_name(x) + "\t" +
           format_estimate(plant, se) + "\n";
  }
  for (const Transition& t : a.transitions()) {
    out += std::to_string(t.src) + " -" + a.alphabet().name(t.label) + "-> " + std::to_string(t.dst) + "\n";
  }
  return out;
}

struct Options {
  std::string model;
  std::optional<std::string> actuator;
  bool json = false;
  bool spec = false;
  bool dot = false;
  std::string obs;
  int depth = -1;
  int trials = 1;
  int max_steps = 20;
  std::uint64_t seed = 0;
  std::string attacker = "random";
  std::string what = "plant";
};

int cmd_observer(const Options& o) {
  const Scenario s = load_scenario(o.model, o.actuator);
  const Automaton& base = o.spec ? s.h : s.g;
  const CAObserver obs = build_ca_observer(base, s.policy.bind(base));
  const ProductAutomaton* product = nullptr;
  if (s.converted) product = o.spec ? &s.converted->spec.plant : &s.converted->plant.plant;
  const Automaton& plant = o.spec ? s.doc.spec() : s.doc.plant;
  if (o.dot) {
    std::cout << export_dot(obs);
  } else if (o.json) {
    nlohmann::json states = nlohmann::json::array();
    for (StateId x = 0; x < obs.observer.state_count(); ++x) {
      nlohmann::json est = nlohmann::json::array();
      for (StateId q : s.lift(obs, x, product)) est.push_back(plant.state_name(q));
      nlohmann::json edges = nlohmann::json::array();
      for (const Edge& e : obs.observer.out(x)) {
        edges.push_back({{"event", plant.alphabet().name(e.label)}, {"target", e.dst}});
      }
      states.push_back({{"id", x}, {"name", obs.observer.state_name(x)}, {"estimate", est}, {"transitions", edges}});
    }
    print_json({{"initial", obs.observer.initial()}, {"states", states}});
  } else {
    std::cout << observer_text(obs, plant, product);
  }
  return kExitHolds;
}

int cmd_estimate(const Options& o) {
  const Scenario s = load_scenario(o.model, o.actuator);
  const Automaton& base = o.spec ? s.h : s.g;
  const Automaton& plant = o.spec ? s.doc.spec() : s.doc.plant;
  Word t;
  try {
    t = parse_word(plant.alphabet(), o.obs);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("--obs: ") + e.what());
  }
  const CAObserver obs = build_ca_observer(base, s.policy.bind(base));
  const ProductAutomaton* product = nullptr;
  if (s.converted) product = o.spec ? &s.converted->spec.plant : &s.converted->plant.plant;
  const StateId x = observer_state(obs, t);
  const StateEstimate se = s.lift(obs, x, product);
  if (o.json) {
    nlohmann::json j{{"observation", nlohmann::json::array()}};
    for (EventId e : t) j["observation"].push_back(plant.alphabet().name(e));
    j["observer_state"] = x == kNoState ? nlohmann::json(nullptr) : nlohmann::json(obs.observer.state_name(x));
    j["estimate"] = nlohmann::json::array();
    for (StateId q : se) j["estimate"].push_back(plant.state_name(q));
    print_json(j);
  } else {
    std::cout << format_estimate(plant, se) << '\n';
  }
  return kExitHolds;
}

int report_verdict(const Options& o, const std::string& check, const Verdict& v, const EventAlphabet& alphabet) {
  if (o.json) {
    print_json(verdict_json(check, v, alphabet));
  } else {
    std::cout << verdict_text(check, v, alphabet);
  }
  return exit_code(v);
}

int cmd_controllability(const Options& o) {
  const Scenario s = load_scenario(o.model, o.actuator);
  const Automaton h = s.doc.spec();
  return report_verdict(o, "ca-controllability", check_ca_controllability(s.doc.plant, h, s.actuator),
                        *s.doc.alphabet);
}

int cmd_observability(const Options& o) {
  const Scenario s = load_scenario(o.model, o.actuator);
  const int depth = o.depth >= 0 ? o.depth : default_depth(s.supervisor(), s.g);
  return report_verdict(o, "ca-observability", check_ca_observability_bounded(s.g, s.h, s.policy, depth),
                        *s.doc.alphabet);
}

int cmd_synthesize(const Options& o) {
  const Scenario s = load_scenario(o.model, o.actuator);
  std::vector<std::string> warnings;
  Supervisor sup = s.converted ? s.converted->supervisor : synthesize_ca_supervisor(s.g, s.h, s.policy, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  const Automaton h = s.doc.spec();
  if (o.json) {
    print_json(supervisor_json(sup, h));
  } else {
    std::cout << supervisor_table(sup, h);
  }
  return kExitHolds;
}

int cmd_verify(const Options& o) {
  const Scenario s = load_scenario(o.model, o.actuator);
  const Verdict v = verify_large_language_equals(s.g, s.h, s.supervisor(), s.policy, s.actuator);
  return report_verdict(o, "large-language", v, *s.doc.alphabet);
}

int cmd_simulate(const Options& o) {
  const Scenario s = load_scenario(o.model, o.actuator);
  AttackerStrategy::Kind kind = AttackerStrategy::Kind::random;
  if (o.attacker == "none") {
    kind = AttackerStrategy::Kind::none;
  } else if (o.attacker == "exhaustive") {
    kind = AttackerStrategy::Kind::exhaustive;
  }
  const Supervisor sup = s.supervisor();
  const ClosedLoop loop{s.g, s.h, sup, s.policy, s.actuator};
  const EventAlphabet& alphabet = *s.doc.alphabet;
  if (o.trials == 1 && kind != AttackerStrategy::Kind::exhaustive) {
    const Trace trace = simulate(loop, {kind, o.seed}, o.max_steps);
    if (o.json) {
      print_json(trace_json(trace, alphabet));
    } else {
      std::cout << serialize_trace(trace, alphabet);
    }
    return trace.safe ? kExitHolds : kExitFails;
  }
  const CampaignReport report = run_campaign(loop, kind, o.trials, o.max_steps, o.seed);
  if (o.json) {
    print_json(campaign_json(report, alphabet));
  } else {
    std::cout << campaign_text(report, alphabet);
  }
  return report.violations == 0 ? kExitHolds : kExitFails;
}

int cmd_convert(const Options& o) {
  const Scenario s = load_scenario(o.model, o.actuator);
  if (!s.converted) throw InputError(o.model + ": model declares no observation-attack");
  ModelDocument out;
  out.alphabet = s.doc.alphabet;
  out.plant = s.g;
  std::vector<std::string> safe;
  for (StateId q = 0; q < s.h.state_count(); ++q) safe.push_back(s.h.state_name(q));
  out.safe_states = std::move(safe);
  out.policy = s.policy;
  std::cout << serialize_model(out);
  return kExitHolds;
}

int cmd_export_dot(const Options& o) {
  const Scenario s = load_scenario(o.model, o.actuator);
  if (o.what == "plant") {
    std::cout << export_dot(s.doc.plant, "G");
  } else if (o.what == "spec") {
    std::cout << export_dot(s.doc.spec(), "H");
  } else if (o.what == "observer") {
    std::cout << export_dot(build_ca_observer(s.g, s.policy.bind(s.g)), "OBS_G");
  } else if (o.what == "spec-observer") {
    std::cout << export_dot(build_ca_observer(s.h, s.policy.bind(s.h)), "OBS_H");
  } else if (o.what == "sa") {
    if (!s.doc.strategy) throw InputError(o.model + ": model declares no observation-attack");
    std::cout << export_dot(s.doc.strategy->sa, "SA");
  }
  return kExitHolds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Supervisory control of discrete event systems under sensor and actuator attacks"};
  app.require_subcommand(1);
  Options o;

  auto model = [&](CLI::App* sub) {
    sub->add_option("model", o.model, "Model file")->required()->check(CLI::ExistingFile);
    sub->add_flag("--json", o.json, "Machine-readable output");
  };
  auto actuator = [&](CLI::App* sub) {
    sub->add_option("--actuator-attack", o.actuator, "Comma-separated attackable controllable events");
  };

  auto* observer = app.add_subcommand("observer", "Build the CA-observer");
  model(observer);
  observer->add_flag("--spec", o.spec, "Observe the specification instead of the plant");
  observer->add_flag("--dot", o.dot, "Emit Graphviz");

  auto* estimate = app.add_subcommand("estimate", "State estimate for an observation");
  model(estimate);
  estimate->add_option("--obs", o.obs, "Observed string, e.g. \"alpha lambda mu\"")->required();
  estimate->add_flag("--spec", o.spec, "Estimate over the specification");

  auto* ctrl = app.add_subcommand("check-controllability", "Check CA-controllability");
  model(ctrl);
  actuator(ctrl);

  auto* obsv = app.add_subcommand("check-observability", "Check CA-observability up to a depth");
  model(obsv);
  obsv->add_option("--depth", o.depth, "Bound on |s sigma| (default 2(|X|+|Q|))")->check(CLI::NonNegativeNumber);

  auto* synth = app.add_subcommand("synthesize", "Print the CA-supervisor table");
  model(synth);

  auto* verify = app.add_subcommand("verify", "Check that the attacked closed loop generates exactly K");
  model(verify);
  actuator(verify);

  auto* sim = app.add_subcommand("simulate", "Run the attacked closed loop");
  model(sim);
  actuator(sim);
  sim->add_option("--trials", o.trials, "Number of runs")->check(CLI::PositiveNumber);
  sim->add_option("--max-steps", o.max_steps, "Plant events per run")->check(CLI::NonNegativeNumber);
  sim->add_option("--seed", o.seed, "Seed of the first run");
  sim->add_option("--attacker", o.attacker, "Attacker strategy")
      ->check(CLI::IsMember({"none", "random", "exhaustive"}));

  auto* convert = app.add_subcommand("convert-obs", "Rewrite an observation-based attack on G || SA");
  model(convert);

  auto* dot = app.add_subcommand("export-dot", "Graphviz rendering");
  model(dot);
  dot->add_option("--what", o.what, "Automaton to render")
      ->check(CLI::IsMember({"plant", "spec", "observer", "spec-observer", "sa"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*observer) return cmd_observer(o);
    if (*estimate) return cmd_estimate(o);
    if (*ctrl) return cmd_controllability(o);
    if (*obsv) return cmd_observability(o);
    if (*synth) return cmd_synthesize(o);
    if (*verify) return cmd_verify(o);
    if (*sim) return cmd_simulate(o);
    if (*convert) return cmd_convert(o);
    if (*dot) return cmd_export_dot(o);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
