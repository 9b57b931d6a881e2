#pragma once

#include <string>
#include <string_view>

#include "pegsa/automaton.hpp"

namespace pegsa {

/// JSON document with fields sigma, d, gamma, k, states, start, accepting and
/// rules[{from, symbol, pattern, to, label, edges}]. Symbol "*" matches any
/// input symbol. Patterns: "*" wildcard, null ∅, or {"label", "children"}
/// where label "*" is any label and "" the base's ∅. Edges: "self", null, or
/// an array of edge indices. Computed automata have no table and are rejected.
std::string automaton_to_json(const AutomatonDef& a);
AutomatonDef automaton_from_json(std::string_view text);

/// Graphviz digraph of a run: one node per scaffold node, labelled with its γ
/// and annotated with the state entered when it was created; nodes created in
/// an accepting state are double circles.
std::string export_dot(const AutomatonDef& a, const RunTrace& trace);

}  // namespace pegsa
