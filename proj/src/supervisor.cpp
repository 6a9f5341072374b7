#include "desca/supervisor.hpp"

#include <stdexcept>

namespace desca {

Control Supervisor::control_at(StateId x) const {
  if (x == kNoState || !observer.observer.is_marked(x)) return default_control;
  return controls[x];
}

Control Supervisor::control_for(const Word& t) const { return control_at(observer_state(observer, t)); }

EventSet disabled_set(const StateEstimate& se, const Automaton& g, const Automaton& h) {
  EventSet out;
  for (StateId q : se) {
    const StateId gq = g.state(h.state_name(q));
    for (const Edge& e : g.out(gq)) {
      if (e.label != kEpsilon && !h.find_state(g.state_name(e.dst))) out.insert(e.label);
    }
  }
  return out;
}

namespace {

Supervisor assemble(CAObserver observer, std::vector<StateEstimate> estimates, const Automaton& g,
                    const Automaton& h) {
  const EventAlphabet& alphabet = g.alphabet();
  Supervisor sup{std::move(observer), std::move(estimates), {}, alphabet.uncontrollable()};
  sup.controls.reserve(sup.estimates.size());
  for (StateId x = 0; x < sup.observer.observer.state_count(); ++x) {
    if (!sup.observer.observer.is_marked(x)) {
      sup.controls.push_back(sup.default_control);
      continue;
    }
    sup.controls.push_back((alphabet.all() - disabled_set(sup.estimates[x], g, h)) | alphabet.uncontrollable());
  }
  return sup;
}

}  // namespace

Supervisor synthesize_ca_supervisor(const Automaton& g, const Automaton& h, const SensorAttackPolicy& policy,
                                    std::vector<std::string>* warnings) {
  if (!is_subautomaton(h, g)) throw std::invalid_argument("specification is not a sub-automaton of the plant");
  std::vector<std::string> unmatched;
  CAObserver observer = build_ca_observer(h, policy.bind(h, &unmatched));
  if (warnings != nullptr) {
    for (const auto& tr : unmatched) {
      warnings->push_back("attacked transition " + tr + " lies outside the specification and is ignored");
    }
  }
  std::vector<StateEstimate> estimates = observer.plant_projection;
  return assemble(std::move(observer), std::move(estimates), g, h);
}

ObservationSupervisor synthesize_obs_based(const Automaton& g, const Automaton& h,
                                           const ObservationAttackStrategy& strategy) {
  if (!is_subautomaton(h, g)) throw std::invalid_argument("specification is not a sub-automaton of the plant");
  ConvertedAttack plant = convert_observation_based(g, strategy);
  ConvertedAttack spec = convert_observation_based(h, strategy);
  CAObserver observer = build_ca_observer(spec.plant.automaton, spec.policy.bind(spec.plant.automaton));
  std::vector<StateEstimate> estimates;
  estimates.reserve(observer.plant_projection.size());
  for (const StateEstimate& over_product : observer.plant_projection) {
    estimates.push_back(lift_estimate(over_product, spec.plant));
  }
  Supervisor sup = assemble(std::move(observer), std::move(estimates), g, h);
  return {std::move(sup), std::move(plant), std::move(spec)};
}

std::vector<Control> attacked_commands(const Supervisor& sup, const Word& t, EventSet actuator_attackable) {
  return delta_control(sup.control_for(t), actuator_attackable);
}

namespace {

void require_same_observer(const Supervisor& a, const Supervisor& b) {
  if (!(a.observer.observer == b.observer.observer)) {
    throw std::invalid_argument("supervisors are built on different observers");
  }
}

}  // namespace

Supervisor supervisor_union(const Supervisor& a, const Supervisor& b) {
  require_same_observer(a, b);
  Supervisor out = a;
  for (std::size_t x = 0; x < out.controls.size(); ++x) out.controls[x] |= b.controls[x];
  out.default_control |= b.default_control;
  return out;
}

Permissiveness compare_permissiveness(const Supervisor& a, const Supervisor& b) {
  require_same_observer(a, b);
  bool a_smaller = false;
  bool b_smaller = false;
  for (StateId x = 0; x < a.observer.observer.state_count(); ++x) {
    if (!a.observer.observer.is_marked(x)) continue;
    const Control ca = a.controls[x];
    const Control cb = b.controls[x];
    if (ca == cb) continue;
    if (ca.subset_of(cb)) {
      a_smaller = true;
    } else if (cb.subset_of(ca)) {
      b_smaller = true;
    } else {
      return Permissiveness::incomparable;
    }
  }
  if (a_smaller && b_smaller) return Permissiveness::incomparable;
  if (a_smaller) return Permissiveness::strictly_less;
  if (b_smaller) return Permissiveness::strictly_greater;
  return Permissiveness::equal;
}

const char* to_string(Permissiveness p) {
  switch (p) {
    case Permissiveness::equal: return "equal";
    case Permissiveness::strictly_less: return "strictly-less";
    case Permissiveness::strictly_greater: return "strictly-greater";
    case Permissiveness::incomparable: return "incomparable";
  }
  return "?";
}

}  // namespace desca
