#pragma once

#include <string>

#include "desca/automaton.hpp"
#include "desca/estimation.hpp"

namespace desca {

/// Graphviz digraph. Marked states are drawn as double circles, ε-edges
/// dashed. Nodes appear in state-id order and edges in transition order.
std::string export_dot(const Automaton& a, const std::string& graph_name = "G");

/// The observer of a CA-observer, nodes labelled by their state-set encoding.
std::string export_dot(const CAObserver& obs, const std::string& graph_name = "OBS");

}  // namespace desca
