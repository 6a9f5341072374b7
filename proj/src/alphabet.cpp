#include "desca/alphabet.hpp"

#include <sstream>
#include <stdexcept>

namespace desca {

std::vector<EventId> EventSet::members() const {
  std::vector<EventId> out;
  std::uint64_t rest = bits_;
  while (rest != 0) {
    out.push_back(std::countr_zero(rest));
    rest &= rest - 1;
  }
  return out;
}

bool is_reserved_event_name(std::string_view name) {
  return name == "eps" || name == "ε" || name == "epsilon";
}

EventId EventAlphabet::add_event(std::string name, EventFlags flags) {
  if (find(name)) throw std::invalid_argument("duplicate event '" + name + "'");
  if (size() >= kMaxEvents) throw std::invalid_argument("too many events (limit 64)");
  const EventId id = size();
  names_.push_back(std::move(name));
  if (flags.controllable) controllable_.insert(id);
  if (flags.observable) observable_.insert(id);
  if (flags.sensor_attackable) sensor_attackable_.insert(id);
  if (flags.actuator_attackable) actuator_attackable_.insert(id);
  return id;
}

std::optional<EventId> EventAlphabet::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<EventId>(i);
  }
  return std::nullopt;
}

EventId EventAlphabet::id(std::string_view name) const {
  if (auto e = find(name)) return *e;
  throw std::invalid_argument("unknown event '" + std::string(name) + "'");
}

EventFlags EventAlphabet::flags(EventId e) const {
  return {controllable_.contains(e), observable_.contains(e), sensor_attackable_.contains(e),
          actuator_attackable_.contains(e)};
}

std::vector<std::string> EventAlphabet::violations() const {
  std::vector<std::string> out;
  for (EventId e = 0; e < size(); ++e) {
    if (is_reserved_event_name(name(e))) {
      out.push_back("event name '" + name(e) + "' is reserved for the empty label");
    }
    if (sensor_attackable_.contains(e) && !observable_.contains(e)) {
      out.push_back("event '" + name(e) + "' is sensor-attackable but unobservable");
    }
    if (actuator_attackable_.contains(e) && !controllable_.contains(e)) {
      out.push_back("event '" + name(e) + "' is actuator-attackable but uncontrollable");
    }
  }
  return out;
}

namespace {

std::vector<std::string_view> split_names(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  auto is_sep = [](char c) { return c == ' ' || c == ',' || c == '\t' || c == '\n'; };
  while (i < text.size()) {
    while (i < text.size() && is_sep(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_sep(text[j])) ++j;
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

Word parse_word(const EventAlphabet& alphabet, std::string_view text) {
  Word out;
  for (auto name : split_names(text)) {
    if (is_reserved_event_name(name)) continue;
    out.push_back(alphabet.id(name));
  }
  return out;
}

EventSet parse_event_set(const EventAlphabet& alphabet, std::string_view text) {
  EventSet out;
  for (EventId e : parse_word(alphabet, text)) out.insert(e);
  return out;
}

std::string format_word(const EventAlphabet& alphabet, const Word& word) {
  if (word.empty()) return "eps";
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i > 0) out += ' ';
    out += alphabet.name(word[i]);
  }
  return out;
}

std::string format_event_set(const EventAlphabet& alphabet, EventSet events) {
  std::string out = "{";
  bool first = true;
  for (EventId e : events.members()) {
    if (!first) out += ',';
    first = false;
    out += alphabet.name(e);
  }
  return out + "}";
}

Word natural_projection(const Word& s, const EventAlphabet& alphabet) {
  Word out;
  const EventSet observable = alphabet.observable();
  for (EventId e : s) {
    if (observable.contains(e)) out.push_back(e);
  }
  return out;
}

}  // namespace desca
