#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace desca {

using EventId = int;

/// Upper bound on the number of events an alphabet may hold.
inline constexpr int kMaxEvents = 64;

/// Finite set of events, stored as a bit mask over event ids.
class EventSet {
 public:
  constexpr EventSet() = default;
  constexpr explicit EventSet(std::uint64_t bits) : bits_(bits) {}
  EventSet(std::initializer_list<EventId> events) {
    for (EventId e : events) insert(e);
  }

  static constexpr EventSet first(int n) {
    return EventSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr bool contains(EventId e) const { return (bits_ >> e) & 1U; }
  constexpr void insert(EventId e) { bits_ |= std::uint64_t{1} << e; }
  constexpr void erase(EventId e) { bits_ &= ~(std::uint64_t{1} << e); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr std::uint64_t bits() const { return bits_; }

  constexpr bool subset_of(EventSet other) const { return (bits_ & ~other.bits_) == 0; }

  std::vector<EventId> members() const;

  friend constexpr EventSet operator|(EventSet a, EventSet b) { return EventSet(a.bits_ | b.bits_); }
  friend constexpr EventSet operator&(EventSet a, EventSet b) { return EventSet(a.bits_ & b.bits_); }
  friend constexpr EventSet operator-(EventSet a, EventSet b) { return EventSet(a.bits_ & ~b.bits_); }
  constexpr EventSet& operator|=(EventSet o) { bits_ |= o.bits_; return *this; }
  constexpr EventSet& operator&=(EventSet o) { bits_ &= o.bits_; return *this; }
  constexpr EventSet& operator-=(EventSet o) { bits_ &= ~o.bits_; return *this; }

  friend constexpr auto operator<=>(EventSet, EventSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

/// A control pattern: the set of events enabled for the plant.
using Control = EventSet;

/// Event string. Also used for observations (strings over observable events).
using Word = std::vector<EventId>;

struct EventFlags {
  bool controllable = false;
  bool observable = false;
  bool sensor_attackable = false;
  bool actuator_attackable = false;

  friend bool operator==(const EventFlags&, const EventFlags&) = default;
};

/// Event identifiers plus the controllable/observable/attackable partitions.
/// Uncontrollable and unobservable sets are derived, never stored.
class EventAlphabet {
 public:
  /// Adds an event; throws std::invalid_argument on duplicates or when full.
  EventId add_event(std::string name, EventFlags flags = {});

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(EventId e) const { return names_.at(static_cast<std::size_t>(e)); }
  std::optional<EventId> find(std::string_view name) const;
  /// Throws std::invalid_argument naming the unknown event.
  EventId id(std::string_view name) const;
  EventFlags flags(EventId e) const;

  EventSet all() const { return EventSet::first(size()); }
  EventSet controllable() const { return controllable_; }
  EventSet uncontrollable() const { return all() - controllable_; }
  EventSet observable() const { return observable_; }
  EventSet unobservable() const { return all() - observable_; }
  EventSet sensor_attackable() const { return sensor_attackable_; }
  EventSet actuator_attackable() const { return actuator_attackable_; }

  /// Reserved names, Σ_o^a ⊄ Σ_o, Σ_c^a ⊄ Σ_c.
  std::vector<std::string> violations() const;

  friend bool operator==(const EventAlphabet&, const EventAlphabet&) = default;

 private:
  std::vector<std::string> names_;
  EventSet controllable_;
  EventSet observable_;
  EventSet sensor_attackable_;
  EventSet actuator_attackable_;
};

/// True for the names reserved for the empty label.
bool is_reserved_event_name(std::string_view name);

/// Parses whitespace- or comma-separated event names. "eps" or an empty
/// string yields the empty word. Unknown names throw std::invalid_argument.
Word parse_word(const EventAlphabet& alphabet, std::string_view text);
EventSet parse_event_set(const EventAlphabet& alphabet, std::string_view text);

/// Space-separated names, "eps" for the empty word.
std::string format_word(const EventAlphabet& alphabet, const Word& word);
/// "{a,b,c}" in event-id order.
std::string format_event_set(const EventAlphabet& alphabet, EventSet events);

/// Erases unobservable events, keeping order.
Word natural_projection(const Word& s, const EventAlphabet& alphabet);

}  // namespace desca
