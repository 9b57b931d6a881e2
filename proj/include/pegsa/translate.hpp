#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pegsa/automaton.hpp"
#include "pegsa/peg.hpp"

namespace pegsa {

/// The computed automaton simulating a total grammar in binary normal form on
/// reversed input: d = k = |NT|, Γ = {□}, Q = {yes, no}. Edge A of node i
/// points at the node reached after R(A) consumes from the length-i suffix, or
/// is ∅ when R(A) fails there. State yes means the start edge reached the base.
/// Throws TotalityError when the grammar diverges on the empty input.
AutomatonDef peg_to_automaton(const Grammar& normalized);

struct EdgeReport {
  std::size_t checked = 0;
  std::vector<std::string> violations;
  /// Violations found beyond the reporting cap.
  std::size_t suppressed = 0;

  bool ok() const { return violations.empty() && suppressed == 0; }
};

/// Runs peg_to_automaton(g) on reverse(input) and checks, for every node i ≥ 1
/// and nonterminal A, that edge A is present exactly when R(A) accepts the
/// length-i suffix, pointing at i minus the consumed length, and that the
/// state is yes exactly when the suffix is in L(g). The base node carries no
/// edges and is checked through the start state only.
EdgeReport verify_edge_semantics(const Grammar& normalized, std::string_view input);
EdgeReport verify_edge_semantics(const Grammar& normalized, const AutomatonDef& automaton, std::string_view input);

/// verify_edge_semantics for every input of length ≤ max_len at once, walking
/// the inputs as a trie so each string costs one scaffold node and one row of
/// recognition cells.
EdgeReport verify_edge_semantics_upto(const Grammar& normalized, std::size_t max_len, std::size_t max_reported = 20);

/// Grammar G with x ∈ L(G) iff the automaton accepts reverse(x). Nonterminals
/// State_<q>, Label_<γ>, Neighbourhood_<n>, Path[_<i>...] and the start
/// symbol AutomatonAccepts. Needs a table automaton whose rules all carry a
/// symbol and a concrete pattern; throws UnsupportedError otherwise.
Grammar automaton_to_peg(const AutomatonDef& a);

/// Copy of `a` in which no rule enters the start state; when some rule does,
/// the start state gets an entry-only twin that becomes the new start.
AutomatonDef split_start_state(const AutomatonDef& a);

}  // namespace pegsa
