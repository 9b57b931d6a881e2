#include "pegsa/automaton_io.hpp"

namespace pegsa {

namespace {

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string export_dot(const AutomatonDef& a, const RunTrace& trace) {
  const Scaffold& s = trace.scaffold;
  std::string out = "digraph run {\n  rankdir=RL;\n  node [shape=circle];\n";
  for (NodeId v = 0; v <= s.top(); ++v) {
    const auto i = static_cast<std::size_t>(v);
    std::string label = s.label(v) == kNoLabel ? "" : a.label_name(s.label(v));
    out += "  n" + std::to_string(v) + " [label=" + quote(label) + ", xlabel=" +
           quote(a.state_name(trace.states.at(i)));
    if (trace.accepting.at(i)) out += ", shape=doublecircle";
    out += "];\n";
  }
  for (NodeId v = 0; v <= s.top(); ++v) {
    for (std::size_t e = 0; e < s.degree(); ++e) {
      NodeId w = s.edge(v, e);
      if (w == kNoNode) continue;
      out += "  n" + std::to_string(v) + " -> n" + std::to_string(w) + " [label=" + quote(std::to_string(e)) + "];\n";
    }
  }
  return out + "}\n";
}

}  // namespace pegsa
