#include "desca/automaton.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <stdexcept>

namespace desca {

Automaton::Automaton(std::shared_ptr<const EventAlphabet> alphabet)
    : alphabet_(std::move(alphabet)), events_(alphabet_->all()) {}

StateId Automaton::add_state(std::string name, bool marked) {
  if (index_.count(name) != 0) throw std::invalid_argument("duplicate state '" + name + "'");
  const auto id = static_cast<StateId>(names_.size());
  index_.emplace(name, id);
  names_.push_back(std::move(name));
  marked_.push_back(marked ? 1 : 0);
  out_.emplace_back();
  return id;
}

std::optional<StateId> Automaton::find_state(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

StateId Automaton::state(const std::string& name) const {
  if (auto q = find_state(name)) return *q;
  throw std::invalid_argument("unknown state '" + name + "'");
}

StateSet Automaton::marked_states() const {
  StateSet out;
  for (StateId q = 0; q < state_count(); ++q) {
    if (marked_[q] != 0) out.push_back(q);
  }
  return out;
}

void Automaton::add_transition(StateId src, Label label, StateId dst) {
  const bool in_range = src < state_count() && dst < state_count();
  if (in_range) {
    for (const Edge& e : out_[src]) {
      if (e.label == label && e.dst == dst) return;
    }
    out_[src].push_back({label, dst});
  }
  transitions_.push_back({src, label, dst});
}

void Automaton::add_transition(const std::string& src, const std::string& event,
                               const std::string& dst) {
  const Label label = is_reserved_event_name(event) ? kEpsilon : alphabet_->id(event);
  add_transition(state(src), label, state(dst));
}

StateSet Automaton::successors(StateId q, Label label) const {
  StateSet out;
  for (const Edge& e : out_.at(q)) {
    if (e.label == label) out.push_back(e.dst);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<StateId> Automaton::next(StateId q, EventId e) const {
  for (const Edge& edge : out_.at(q)) {
    if (edge.label == e) return edge.dst;
  }
  return std::nullopt;
}

bool Automaton::is_deterministic() const {
  for (const auto& edges : out_) {
    EventSet seen;
    for (const Edge& e : edges) {
      if (e.label == kEpsilon || seen.contains(e.label)) return false;
      seen.insert(e.label);
    }
  }
  return true;
}

bool operator==(const Automaton& a, const Automaton& b) {
  const bool same_alphabet = a.alphabet_ == b.alphabet_ ||
                             (a.alphabet_ && b.alphabet_ && *a.alphabet_ == *b.alphabet_);
  return same_alphabet && a.events_ == b.events_ && a.names_ == b.names_ &&
         a.marked_ == b.marked_ && a.initial_ == b.initial_ && a.transitions_ == b.transitions_;
}

StateSet make_state_set(std::vector<StateId> states) {
  std::sort(states.begin(), states.end());
  states.erase(std::unique(states.begin(), states.end()), states.end());
  return states;
}

std::vector<std::string> validate(const Automaton& a) {
  std::vector<std::string> out;
  if (!a.alphabet_ptr()) {
    out.emplace_back("automaton has no alphabet");
    return out;
  }
  for (auto& v : a.alphabet().violations()) out.push_back(std::move(v));
  if (!a.events().subset_of(a.alphabet().all())) {
    out.emplace_back("automaton events exceed the alphabet");
  }
  const StateId n = a.state_count();
  if (a.initial() >= n) out.emplace_back("initial state is not a declared state");
  for (const Transition& t : a.transitions()) {
    auto describe = [&] {
      auto name = [&](StateId q) { return q < n ? a.state_name(q) : "#" + std::to_string(q); };
      std::string label = t.label == kEpsilon ? std::string("eps")
                          : (t.label >= 0 && t.label < a.alphabet().size())
                              ? a.alphabet().name(t.label)
                              : "#" + std::to_string(t.label);
      return "(" + name(t.src) + ", " + label + ", " + name(t.dst) + ")";
    };
    if (t.src >= n || t.dst >= n) {
      out.push_back("transition " + describe() + " references an unknown state");
    }
    if (t.label != kEpsilon && (t.label < 0 || t.label >= a.alphabet().size())) {
      out.push_back("transition " + describe() + " carries an unknown event");
    } else if (t.label != kEpsilon && !a.events().contains(t.label)) {
      out.push_back("transition " + describe() + " carries an event outside the automaton's events");
    }
  }
  return out;
}

Automaton accessible(const Automaton& a) {
  std::vector<char> seen(a.state_count(), 0);
  std::deque<StateId> queue{a.initial()};
  seen[a.initial()] = 1;
  while (!queue.empty()) {
    const StateId q = queue.front();
    queue.pop_front();
    for (const Edge& e : a.out(q)) {
      if (!seen[e.dst]) {
        seen[e.dst] = 1;
        queue.push_back(e.dst);
      }
    }
  }
  Automaton out(a.alphabet_ptr());
  out.set_events(a.events());
  std::vector<StateId> remap(a.state_count(), kNoState);
  for (StateId q = 0; q < a.state_count(); ++q) {
    if (seen[q]) remap[q] = out.add_state(a.state_name(q), a.is_marked(q));
  }
  out.set_initial(remap[a.initial()]);
  for (const Transition& t : a.transitions()) {
    if (seen[t.src]) out.add_transition(remap[t.src], t.label, remap[t.dst]);
  }
  return out;
}

StateSet unobservable_reach(const Automaton& a, StateSet x) {
  std::vector<char> in(a.state_count(), 0);
  std::vector<StateId> stack;
  for (StateId q : x) {
    if (!in[q]) {
      in[q] = 1;
      stack.push_back(q);
    }
  }
  std::vector<StateId> result = stack;
  while (!stack.empty()) {
    const StateId q = stack.back();
    stack.pop_back();
    for (const Edge& e : a.out(q)) {
      if (e.label == kEpsilon && !in[e.dst]) {
        in[e.dst] = 1;
        stack.push_back(e.dst);
        result.push_back(e.dst);
      }
    }
  }
  return make_state_set(std::move(result));
}

namespace {

StateSet step(const Automaton& a, const StateSet& from, Label label) {
  std::vector<StateId> next;
  for (StateId q : from) {
    for (const Edge& e : a.out(q)) {
      if (e.label == label) next.push_back(e.dst);
    }
  }
  return unobservable_reach(a, make_state_set(std::move(next)));
}

void check_event(const Automaton& a, EventId e) {
  if (e < 0 || e >= a.alphabet().size()) {
    throw std::invalid_argument("unknown event id " + std::to_string(e));
  }
}

}  // namespace

StateSet run_from(const Automaton& a, StateSet from, const Word& s) {
  StateSet current = unobservable_reach(a, std::move(from));
  for (EventId e : s) {
    check_event(a, e);
    if (current.empty()) break;
    current = step(a, current, e);
  }
  return current;
}

StateSet run(const Automaton& a, const Word& s) { return run_from(a, {a.initial()}, s); }

std::string encode_state_set(const Automaton& a, const StateSet& x) {
  std::string out = "{";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i > 0) out += ',';
    out += a.state_name(x[i]);
  }
  return out + "}";
}

SubsetAutomaton determinize(const Automaton& a) {
  SubsetAutomaton result{Automaton(a.alphabet_ptr()), {}};
  Automaton& obs = result.automaton;
  obs.set_events(a.events());
  std::map<StateSet, StateId> index;

  auto intern = [&](StateSet x) {
    auto [it, inserted] = index.emplace(x, static_cast<StateId>(result.subsets.size()));
    if (inserted) {
      const bool marked = std::any_of(x.begin(), x.end(), [&](StateId q) { return a.is_marked(q); });
      obs.add_state(encode_state_set(a, x), marked);
      result.subsets.push_back(std::move(x));
    }
    return std::pair{it->second, inserted};
  };

  obs.set_initial(intern(unobservable_reach(a, {a.initial()})).first);
  std::deque<StateId> queue{obs.initial()};
  while (!queue.empty()) {
    const StateId x = queue.front();
    queue.pop_front();
    EventSet labels;
    for (StateId q : result.subsets[x]) {
      for (const Edge& e : a.out(q)) {
        if (e.label != kEpsilon) labels.insert(e.label);
      }
    }
    for (EventId e : labels.members()) {
      StateSet next = step(a, result.subsets[x], e);
      auto [y, fresh] = intern(std::move(next));
      obs.add_transition(x, e, y);
      if (fresh) queue.push_back(y);
    }
  }
  return result;
}

ProductAutomaton parallel_compose(const Automaton& a, const Automaton& b) {
  ProductAutomaton result{Automaton(a.alphabet_ptr()), {}};
  Automaton& prod = result.automaton;
  prod.set_events(a.events() | b.events());
  const EventSet shared = a.events() & b.events();
  std::map<std::pair<StateId, StateId>, StateId> index;

  auto intern = [&](StateId qa, StateId qb) {
    auto [it, inserted] = index.emplace(std::pair{qa, qb}, static_cast<StateId>(result.components.size()));
    if (inserted) {
      prod.add_state("(" + a.state_name(qa) + "," + b.state_name(qb) + ")",
                     a.is_marked(qa) && b.is_marked(qb));
      result.components.emplace_back(qa, qb);
    }
    return std::pair{it->second, inserted};
  };

  prod.set_initial(intern(a.initial(), b.initial()).first);
  std::deque<StateId> queue{prod.initial()};
  while (!queue.empty()) {
    const StateId y = queue.front();
    queue.pop_front();
    const auto [qa, qb] = result.components[y];
    auto link = [&](Label label, StateId na, StateId nb) {
      auto [z, fresh] = intern(na, nb);
      prod.add_transition(y, label, z);
      if (fresh) queue.push_back(z);
    };
    for (const Edge& ea : a.out(qa)) {
      if (ea.label != kEpsilon && shared.contains(ea.label)) {
        for (const Edge& eb : b.out(qb)) {
          if (eb.label == ea.label) link(ea.label, ea.dst, eb.dst);
        }
      } else {
        link(ea.label, ea.dst, qb);
      }
    }
    for (const Edge& eb : b.out(qb)) {
      if (eb.label == kEpsilon || !shared.contains(eb.label)) link(eb.label, qa, eb.dst);
    }
  }
  return result;
}

Automaton erase_events(const Automaton& a, EventSet erased) {
  Automaton out(a.alphabet_ptr());
  out.set_events(a.events() - erased);
  for (StateId q = 0; q < a.state_count(); ++q) out.add_state(a.state_name(q), a.is_marked(q));
  out.set_initial(a.initial());
  for (const Transition& t : a.transitions()) {
    const bool erase = t.label != kEpsilon && erased.contains(t.label);
    out.add_transition(t.src, erase ? kEpsilon : t.label, t.dst);
  }
  return out;
}

std::set<Word> enumerate_language(const Automaton& a, int depth, bool marked_only) {
  if (depth < 0) throw std::invalid_argument("enumeration depth must be non-negative");
  std::set<Word> out;
  auto accepts = [&](const StateSet& x) {
    if (!marked_only) return !x.empty();
    return std::any_of(x.begin(), x.end(), [&](StateId q) { return a.is_marked(q); });
  };
  std::map<Word, StateSet> level;
  level.emplace(Word{}, unobservable_reach(a, {a.initial()}));
  for (int d = 0;; ++d) {
    for (const auto& [w, x] : level) {
      if (accepts(x)) out.insert(w);
    }
    if (d == depth) break;
    std::map<Word, StateSet> next_level;
    for (const auto& [w, x] : level) {
      EventSet labels;
      for (StateId q : x) {
        for (const Edge& e : a.out(q)) {
          if (e.label != kEpsilon) labels.insert(e.label);
        }
      }
      for (EventId e : labels.members()) {
        StateSet y = step(a, x, e);
        if (y.empty()) continue;
        Word longer = w;
        longer.push_back(e);
        next_level.emplace(std::move(longer), std::move(y));
      }
    }
    if (next_level.empty()) break;
    level = std::move(next_level);
  }
  return out;
}

std::optional<std::size_t> max_word_length(const Automaton& a) {
  const StateId n = a.state_count();
  if (n == 0 || a.initial() >= n) return 0;

  // Useful states: reachable and co-reachable to a marked state.
  std::vector<char> reach(n, 0), coreach(n, 0);
  std::vector<std::vector<StateId>> pred(n);
  for (const Transition& t : a.transitions()) pred[t.dst].push_back(t.src);
  std::vector<StateId> stack{a.initial()};
  reach[a.initial()] = 1;
  while (!stack.empty()) {
    const StateId q = stack.back();
    stack.pop_back();
    for (const Edge& e : a.out(q)) {
      if (!reach[e.dst]) {
        reach[e.dst] = 1;
        stack.push_back(e.dst);
      }
    }
  }
  for (StateId q : a.marked_states()) {
    coreach[q] = 1;
    stack.push_back(q);
  }
  while (!stack.empty()) {
    const StateId q = stack.back();
    stack.pop_back();
    for (StateId p : pred[q]) {
      if (!coreach[p]) {
        coreach[p] = 1;
        stack.push_back(p);
      }
    }
  }
  auto useful = [&](StateId q) { return reach[q] && coreach[q]; };
  if (!useful(a.initial())) return 0;

  // Tarjan SCCs over useful states.
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<char> on_stack(n, 0);
  std::vector<StateId> scc_stack;
  int counter = 0, comps = 0;
  std::function<void(StateId)> strong = [&](StateId v) {
    index[v] = low[v] = counter++;
    scc_stack.push_back(v);
    on_stack[v] = 1;
    for (const Edge& e : a.out(v)) {
      if (!useful(e.dst)) continue;
      if (index[e.dst] < 0) {
        strong(e.dst);
        low[v] = std::min(low[v], low[e.dst]);
      } else if (on_stack[e.dst]) {
        low[v] = std::min(low[v], index[e.dst]);
      }
    }
    if (low[v] == index[v]) {
      StateId w;
      do {
        w = scc_stack.back();
        scc_stack.pop_back();
        on_stack[w] = 0;
        comp[w] = comps;
      } while (w != v);
      ++comps;
    }
  };
  for (StateId q = 0; q < n; ++q) {
    if (useful(q) && index[q] < 0) strong(q);
  }
  for (const Transition& t : a.transitions()) {
    if (useful(t.src) && useful(t.dst) && comp[t.src] == comp[t.dst] && t.label != kEpsilon) {
      return std::nullopt;
    }
  }
  // Longest weighted path to a marked state over the condensation.
  constexpr long kNone = -1;
  std::vector<long> best(static_cast<std::size_t>(comps), kNone - 1);
  std::function<long(int)> longest = [&](int c) -> long {
    if (best[c] >= kNone) return best[c];
    long value = kNone;
    for (StateId q = 0; q < n; ++q) {
      if (comp[q] != c) continue;
      if (a.is_marked(q)) value = std::max(value, 0L);
      for (const Edge& e : a.out(q)) {
        if (!useful(e.dst) || comp[e.dst] == c) continue;
        const long rest = longest(comp[e.dst]);
        if (rest >= 0) value = std::max(value, rest + (e.label == kEpsilon ? 0 : 1));
      }
    }
    return best[c] = value;
  };
  return static_cast<std::size_t>(std::max(0L, longest(comp[a.initial()])));
}

bool is_subautomaton(const Automaton& h, const Automaton& g) {
  if (!(h.alphabet() == g.alphabet())) return false;
  if (h.initial() >= h.state_count() || g.initial() >= g.state_count()) return false;
  std::vector<StateId> to_g(h.state_count());
  std::vector<char> in_h(g.state_count(), 0);
  for (StateId q = 0; q < h.state_count(); ++q) {
    auto p = g.find_state(h.state_name(q));
    if (!p) return false;
    to_g[q] = *p;
    in_h[*p] = 1;
  }
  if (to_g[h.initial()] != g.initial()) return false;
  std::set<Transition> hs;
  for (const Transition& t : h.transitions()) hs.insert({to_g[t.src], t.label, to_g[t.dst]});
  std::set<Transition> gs;
  for (const Transition& t : g.transitions()) {
    if (in_h[t.src] && in_h[t.dst]) gs.insert(t);
  }
  return hs == gs;
}

Automaton induced_subautomaton(const Automaton& g, const std::vector<std::string>& states) {
  std::vector<char> keep(g.state_count(), 0);
  for (const auto& name : states) keep[g.state(name)] = 1;
  if (!keep[g.initial()]) {
    throw std::invalid_argument("safe states must include the initial state '" +
                                g.state_name(g.initial()) + "'");
  }
  Automaton h(g.alphabet_ptr());
  h.set_events(g.events());
  std::vector<StateId> remap(g.state_count(), kNoState);
  for (StateId q = 0; q < g.state_count(); ++q) {
    if (keep[q]) remap[q] = h.add_state(g.state_name(q), g.is_marked(q));
  }
  h.set_initial(remap[g.initial()]);
  for (const Transition& t : g.transitions()) {
    if (keep[t.src] && keep[t.dst]) h.add_transition(remap[t.src], t.label, remap[t.dst]);
  }
  return h;
}

}  // namespace desca
