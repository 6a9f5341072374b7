#include "desca/dot.hpp"

#include <sstream>

namespace desca {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string export_dot(const Automaton& a, const std::string& graph_name) {
  std::ostringstream out;
  out << "digraph \"" << escape(graph_name) << "\" {\n";
  out << "  rankdir=LR;\n";
  out << "  __init [shape=point];\n";
  for (StateId q = 0; q < a.state_count(); ++q) {
    out << "  n" << q << " [label=\"" << escape(a.state_name(q)) << "\", shape="
        << (a.is_marked(q) ? "doublecircle" : "circle") << "];\n";
  }
  if (a.initial() != kNoState) out << "  __init -> n" << a.initial() << ";\n";
  for (const Transition& t : a.transitions()) {
    out << "  n" << t.src << " -> n" << t.dst;
    if (t.label == kEpsilon) {
      out << " [label=\"eps\", style=dashed];\n";
    } else {
      out << " [label=\"" << escape(a.alphabet().name(t.label)) << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string export_dot(const CAObserver& obs, const std::string& graph_name) {
  return export_dot(obs.observer, graph_name);
}

}  // namespace desca
