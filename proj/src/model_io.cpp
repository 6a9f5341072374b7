#include "desca/model_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace desca {

ParseError::ParseError(int line, int column, const std::string& message, std::string expected)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message +
                         (expected.empty() ? std::string() : " (expected " + expected + ")")),
      line_(line),
      column_(column),
      expected_(std::move(expected)),
      detail_(message + (expected_.empty() ? std::string() : " (expected " + expected_ + ")")) {}

Automaton ModelDocument::spec() const {
  if (spec_automaton) return *spec_automaton;
  if (safe_states) return induced_subautomaton(plant, *safe_states);
  throw std::invalid_argument("model declares no specification");
}

bool operator==(const ModelDocument& a, const ModelDocument& b) {
  const bool same_alphabet = a.alphabet == b.alphabet || (a.alphabet && b.alphabet && *a.alphabet == *b.alphabet);
  return same_alphabet && a.plant == b.plant && a.safe_states == b.safe_states &&
         a.spec_automaton == b.spec_automaton && a.policy == b.policy && a.strategy == b.strategy;
}

namespace {

struct Token {
  enum class Kind { name, quoted, punct, end };
  Kind kind = Kind::end;
  std::string text;
  int line = 0;
  int column = 0;
};

bool is_punct(char c) { return c == '{' || c == '}' || c == ';' || c == ':'; }

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  int column = 1;
  std::size_t i = 0;
  auto advance = [&] {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
    ++i;
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance();
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance();
    } else if (is_punct(c)) {
      out.push_back({Token::Kind::punct, std::string(1, c), line, column});
      advance();
    } else if (c == '"') {
      Token t{Token::Kind::quoted, {}, line, column};
      advance();
      while (i < text.size() && text[i] != '"') {
        if (text[i] == '\n') throw ParseError(line, column, "unterminated quoted name", "'\"'");
        t.text += text[i];
        advance();
      }
      if (i == text.size()) throw ParseError(line, column, "unterminated quoted name", "'\"'");
      advance();
      out.push_back(std::move(t));
    } else {
      Token t{Token::Kind::name, {}, line, column};
      while (i < text.size() && !is_punct(text[i]) && text[i] != '"' && text[i] != '#' && text[i] != ' ' &&
             text[i] != '\t' && text[i] != '\r' && text[i] != '\n') {
        t.text += text[i];
        advance();
      }
      out.push_back(std::move(t));
    }
  }
  out.push_back({Token::Kind::end, {}, line, column});
  return out;
}

const std::set<std::string>& keywords() {
  static const std::set<std::string> k{"alphabet", "plant", "spec", "attack", "observation-attack", "states",
                                       "initial", "marked", "safe", "transition", "event", "sa", "omega"};
  return k;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  ModelDocument parse() {
    ModelDocument doc;
    if (peek().kind == Token::Kind::end) fail(peek(), "missing alphabet", "'alphabet'");
    while (peek().kind != Token::Kind::end) {
      const Token& t = peek();
      if (is_keyword(t, "alphabet")) {
        if (doc.alphabet) fail(t, "duplicate alphabet");
        next();
        doc.alphabet = parse_alphabet();
        continue;
      }
      if (!doc.alphabet) fail(t, "missing alphabet", "'alphabet'");
      if (is_keyword(t, "plant")) {
        if (have_plant_) fail(t, "duplicate plant");
        next();
        doc.plant = parse_block(doc.alphabet, doc.alphabet->all());
        have_plant_ = true;
      } else if (is_keyword(t, "spec")) {
        if (doc.has_spec()) fail(t, "duplicate spec");
        require_plant(t);
        next();
        if (is_keyword(peek(), "safe")) {
          next();
          std::vector<std::string> safe;
          while (!is_punct(peek(), ";")) {
            const Token& s = expect_name("state name");
            if (!doc.plant.find_state(s.text)) fail(s, "undeclared state '" + s.text + "'");
            safe.push_back(s.text);
          }
          next();
          doc.safe_states = std::move(safe);
        } else {
          doc.spec_automaton = parse_block(doc.alphabet, doc.alphabet->all());
        }
      } else if (is_keyword(t, "attack")) {
        require_plant(t);
        next();
        parse_attack(doc);
      } else if (is_keyword(t, "observation-attack")) {
        if (doc.strategy) fail(t, "duplicate observation-attack");
        next();
        doc.strategy = parse_strategy(doc.alphabet);
      } else {
        fail(t, "unexpected '" + t.text + "'", "'plant', 'spec', 'attack' or 'observation-attack'");
      }
    }
    if (!have_plant_) fail(peek(), "missing plant", "'plant'");
    return doc;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] static void fail(const Token& t, const std::string& message, std::string expected = {}) {
    throw ParseError(t.line, t.column, message, std::move(expected));
  }

  static bool is_keyword(const Token& t, std::string_view word) {
    return t.kind == Token::Kind::name && t.text == word;
  }
  static bool is_punct(const Token& t, std::string_view p) { return t.kind == Token::Kind::punct && t.text == p; }

  void expect_punct(std::string_view p) {
    if (!is_punct(peek(), p)) fail(peek(), describe(peek()), "'" + std::string(p) + "'");
    next();
  }

  static std::string describe(const Token& t) {
    if (t.kind == Token::Kind::end) return "unexpected end of input";
    return "unexpected '" + t.text + "'";
  }

  const Token& expect_name(const std::string& what) {
    const Token& t = peek();
    if (t.kind == Token::Kind::quoted || (t.kind == Token::Kind::name && keywords().count(t.text) == 0)) {
      return next();
    }
    fail(t, describe(t), what);
  }

  void require_plant(const Token& t) {
    if (!have_plant_) fail(t, "plant must be declared before '" + t.text + "'", "'plant'");
  }

  std::shared_ptr<const EventAlphabet> parse_alphabet() {
    auto alphabet = std::make_shared<EventAlphabet>();
    expect_punct("{");
    while (!is_punct(peek(), "}")) {
      const Token& name = expect_name("event name");
      if (is_reserved_event_name(name.text)) fail(name, "event name '" + name.text + "' is reserved");
      if (alphabet->find(name.text)) fail(name, "duplicate event '" + name.text + "'");
      EventFlags flags;
      if (is_punct(peek(), ":")) {
        next();
        while (!is_punct(peek(), ";")) {
          const Token& f = next();
          if (f.text == "controllable") {
            flags.controllable = true;
          } else if (f.text == "observable") {
            flags.observable = true;
          } else if (f.text == "sensor-attackable") {
            flags.sensor_attackable = true;
          } else if (f.text == "actuator-attackable") {
            flags.actuator_attackable = true;
          } else {
            fail(f, describe(f), "'controllable', 'observable', 'sensor-attackable' or 'actuator-attackable'");
          }
        }
      }
      expect_punct(";");
      try {
        alphabet->add_event(name.text, flags);
      } catch (const std::invalid_argument& e) {
        fail(name, e.what());
      }
    }
    next();
    return alphabet;
  }

  Label parse_label(const Token& t, const EventAlphabet& alphabet) {
    if (is_reserved_event_name(t.text)) return kEpsilon;
    auto e = alphabet.find(t.text);
    if (!e) fail(t, "undeclared event '" + t.text + "'");
    return *e;
  }

  Automaton parse_block(const std::shared_ptr<const EventAlphabet>& alphabet, EventSet events) {
    Automaton a(alphabet);
    a.set_events(events);
    const Token& open = peek();
    expect_punct("{");
    auto state_of = [&](const Token& t) {
      if (auto q = a.find_state(t.text)) return *q;
      return a.add_state(t.text);
    };
    bool have_initial = false;
    while (!is_punct(peek(), "}")) {
      const Token& t = peek();
      if (t.kind == Token::Kind::end) fail(t, describe(t), "'}'");
      if (is_keyword(t, "states")) {
        next();
        while (!is_punct(peek(), ";")) {
          const Token& s = expect_name("state name");
          if (a.find_state(s.text)) fail(s, "duplicate state '" + s.text + "'");
          a.add_state(s.text);
        }
        next();
      } else if (is_keyword(t, "initial")) {
        next();
        if (have_initial) fail(t, "duplicate initial state");
        a.set_initial(state_of(expect_name("state name")));
        have_initial = true;
        expect_punct(";");
      } else if (is_keyword(t, "marked")) {
        next();
        while (!is_punct(peek(), ";")) a.set_marked(state_of(expect_name("state name")));
        next();
      } else {
        const Token& src = expect_name("'states', 'initial', 'marked' or a transition");
        const Token& event = expect_name("event name");
        const Token& dst = expect_name("state name");
        const Label label = parse_label(event, *alphabet);
        if (label != kEpsilon && !events.contains(label)) {
          fail(event, "event '" + event.text + "' is not allowed in this automaton");
        }
        const StateId s = state_of(src);
        a.add_transition(s, label, state_of(dst));
        expect_punct(";");
      }
    }
    next();
    if (!have_initial) fail(open, "automaton has no initial state", "'initial'");
    return a;
  }

  void parse_attack(ModelDocument& doc) {
    const Token& kind = peek();
    const EventAlphabet& alphabet = *doc.alphabet;
    if (is_keyword(kind, "transition")) {
      next();
      const Token& src = expect_name("state name");
      const Token& event = expect_name("event name");
      const Token& dst = expect_name("state name");
      if (!doc.plant.find_state(src.text)) fail(src, "undeclared state '" + src.text + "'");
      const Label label = parse_label(event, alphabet);
      if (label == kEpsilon) fail(event, "cannot attack an empty label");
      if (!doc.plant.find_state(dst.text)) fail(dst, "undeclared state '" + dst.text + "'");
      doc.policy.attack_transition({src.text, label, dst.text}, parse_block(doc.alphabet, alphabet.all()));
    } else if (is_keyword(kind, "event")) {
      next();
      const Token& event = expect_name("event name");
      const Label label = parse_label(event, alphabet);
      if (label == kEpsilon) fail(event, "cannot attack an empty label");
      doc.policy.attack_event(label, parse_block(doc.alphabet, alphabet.all()));
    } else {
      fail(kind, describe(kind), "'transition' or 'event'");
    }
  }

  ObservationAttackStrategy parse_strategy(const std::shared_ptr<const EventAlphabet>& alphabet) {
    ObservationAttackStrategy strategy;
    bool have_sa = false;
    expect_punct("{");
    while (!is_punct(peek(), "}")) {
      const Token& t = peek();
      if (is_keyword(t, "sa")) {
        if (have_sa) fail(t, "duplicate sa");
        next();
        strategy.sa = parse_block(alphabet, alphabet->observable());
        have_sa = true;
      } else if (is_keyword(t, "omega")) {
        if (!have_sa) fail(t, "sa must be declared before omega", "'sa'");
        next();
        const Token& z = expect_name("sa state name");
        auto zs = strategy.sa.find_state(z.text);
        if (!zs) fail(z, "undeclared state '" + z.text + "'");
        const Token& event = expect_name("event name");
        const Label label = parse_label(event, *alphabet);
        if (label == kEpsilon) fail(event, "cannot attack an empty label");
        strategy.omega.push_back({*zs, label, parse_block(alphabet, alphabet->all())});
      } else {
        fail(t, describe(t), "'sa' or 'omega'");
      }
    }
    const Token& close = next();
    if (!have_sa) fail(close, "observation-attack without sa", "'sa'");
    return strategy;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  bool have_plant_ = false;
};

bool is_plain(const std::string& name) {
  if (name.empty() || keywords().count(name) != 0 || is_reserved_event_name(name)) return false;
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
                    c == '.' || c == '-' || c == '/';
    if (!ok) return false;
  }
  return true;
}

std::string quote(const std::string& name) { return is_plain(name) ? name : "\"" + name + "\""; }

std::string label_text(const Automaton& a, Label label) {
  return label == kEpsilon ? std::string("eps") : quote(a.alphabet().name(label));
}

void write_block(std::ostream& out, const Automaton& a, const std::string& indent) {
  out << "{\n";
  const std::string inner = indent + "  ";
  out << inner << "states";
  for (StateId q = 0; q < a.state_count(); ++q) out << ' ' << quote(a.state_name(q));
  out << ";\n" << inner << "initial " << quote(a.state_name(a.initial())) << ";\n";
  const StateSet marked = a.marked_states();
  if (!marked.empty()) {
    out << inner << "marked";
    for (StateId q : marked) out << ' ' << quote(a.state_name(q));
    out << ";\n";
  }
  for (const Transition& t : a.transitions()) {
    out << inner << quote(a.state_name(t.src)) << ' ' << label_text(a, t.label) << ' '
        << quote(a.state_name(t.dst)) << ";\n";
  }
  out << indent << "}\n";
}

}  // namespace

ModelDocument parse_model(std::string_view text) { return Parser(text).parse(); }

ModelDocument load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open model file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_model(buffer.str());
}

std::string serialize_model(const ModelDocument& doc) {
  std::ostringstream out;
  const EventAlphabet& alphabet = *doc.alphabet;
  out << "alphabet {\n";
  for (EventId e = 0; e < alphabet.size(); ++e) {
    const EventFlags f = alphabet.flags(e);
    out << "  " << quote(alphabet.name(e));
    if (f.controllable || f.observable || f.sensor_attackable || f.actuator_attackable) {
      out << " :";
      if (f.controllable) out << " controllable";
      if (f.observable) out << " observable";
      if (f.sensor_attackable) out << " sensor-attackable";
      if (f.actuator_attackable) out << " actuator-attackable";
    }
    out << ";\n";
  }
  out << "}\n\nplant ";
  write_block(out, doc.plant, "");
  if (doc.safe_states) {
    out << "\nspec safe";
    for (const auto& s : *doc.safe_states) out << ' ' << quote(s);
    out << ";\n";
  } else if (doc.spec_automaton) {
    out << "\nspec ";
    write_block(out, *doc.spec_automaton, "");
  }
  for (const auto& [key, f] : doc.policy.transition_entries()) {
    out << "\nattack transition " << quote(key.src) << ' ' << quote(alphabet.name(key.event)) << ' '
        << quote(key.dst) << ' ';
    write_block(out, f, "");
  }
  for (const auto& [event, f] : doc.policy.event_entries()) {
    out << "\nattack event " << quote(alphabet.name(event)) << ' ';
    write_block(out, f, "");
  }
  if (doc.strategy) {
    out << "\nobservation-attack {\n  sa ";
    write_block(out, doc.strategy->sa, "  ");
    for (const auto& entry : doc.strategy->omega) {
      out << "  omega " << quote(doc.strategy->sa.state_name(entry.state)) << ' '
          << quote(alphabet.name(entry.event)) << ' ';
      write_block(out, entry.language, "  ");
    }
    out << "}\n";
  }
  return out.str();
}

std::vector<std::string> check_model(const ModelDocument& doc) {
  std::vector<std::string> out;
  auto add_all = [&](const std::string& where, std::vector<std::string> issues) {
    for (auto& i : issues) out.push_back(where + ": " + i);
  };
  add_all("plant", validate(doc.plant));
  if (!doc.plant.is_deterministic()) out.emplace_back("plant: plant must be deterministic");
  if (doc.has_spec()) {
    try {
      const Automaton h = doc.spec();
      add_all("spec", validate(h));
      if (!is_subautomaton(h, doc.plant)) out.emplace_back("spec: not a sub-automaton of the plant");
    } catch (const std::invalid_argument& e) {
      out.push_back(std::string("spec: ") + e.what());
    }
  }
  add_all("policy", doc.policy.violations(doc.plant));
  if (doc.strategy) {
    const Automaton& sa = doc.strategy->sa;
    add_all("sa", validate(sa));
    if (!sa.is_deterministic()) out.emplace_back("sa: SA must be deterministic");
    for (const auto& entry : doc.strategy->omega) {
      const std::string where = "omega(" + sa.state_name(entry.state) + ", " + doc.alphabet->name(entry.event) + ")";
      if (!doc.alphabet->sensor_attackable().contains(entry.event)) {
        out.push_back(where + ": event is not sensor-attackable");
      }
      add_all(where, validate(entry.language));
    }
    if (!doc.policy.empty()) {
      out.emplace_back("model declares both a transition-based policy and an observation-attack strategy");
    }
  }
  return out;
}

}  // namespace desca
