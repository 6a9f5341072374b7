#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "desca/attack.hpp"
#include "desca/automaton.hpp"

namespace desca {

/// One self-contained scenario: alphabet, plant, specification and attacks.
/// The grammar is documented in docs/model-format.md.
struct ModelDocument {
  std::shared_ptr<const EventAlphabet> alphabet;
  Automaton plant;
  /// Specification as a set of safe plant states ("spec safe ...;").
  std::optional<std::vector<std::string>> safe_states;
  /// Specification as an explicit sub-automaton ("spec { ... }").
  std::optional<Automaton> spec_automaton;
  SensorAttackPolicy policy;
  std::optional<ObservationAttackStrategy> strategy;

  bool has_spec() const { return safe_states.has_value() || spec_automaton.has_value(); }
  /// The specification automaton H; throws std::invalid_argument if absent.
  Automaton spec() const;

  friend bool operator==(const ModelDocument& a, const ModelDocument& b);
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message, std::string expected = {});

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& expected() const { return expected_; }
  /// what() without the location prefix.
  const std::string& detail() const { return detail_; }

 private:
  int line_;
  int column_;
  std::string expected_;
  std::string detail_;
};

/// Throws ParseError on syntax errors and on references to undeclared names.
ModelDocument parse_model(std::string_view text);
ModelDocument load_model(const std::filesystem::path& path);

/// Canonical text form; parse_model(serialize_model(d)) == d.
std::string serialize_model(const ModelDocument& doc);

/// Semantic checks that the grammar cannot express: automaton and policy
/// invariants, the specification being a sub-automaton, SA determinism.
std::vector<std::string> check_model(const ModelDocument& doc);

}  // namespace desca
