#pragma once

#include <cstddef>

#include "pegsa/automaton.hpp"

namespace pegsa {

/// A table automaton that agrees with its source on every input of length at
/// most `faithful_length`. Longer inputs may hit transition holes.
struct BoundedTable {
  AutomatonDef automaton;
  std::size_t faithful_length = 0;
};

/// Replaces every rule that has a wildcard symbol or a non-concrete pattern by
/// the concrete instances it matched from configurations reachable on inputs
/// of length ≤ bound. Concrete rules are kept as they are, so an automaton
/// that is already concrete comes back unchanged.
BoundedTable expand_patterns(const AutomatonDef& a, std::size_t bound);

enum class MaterializeMode {
  /// Each rule constrains exactly what the hook looked at; everything else is
  /// a wildcard. Sound for any neighbourhood matching the recorded pattern.
  Observed,
  /// Each rule carries the full concrete neighbourhood.
  Concrete,
};

/// Samples a computed automaton's hook on configurations reachable on inputs
/// of length ≤ bound.
BoundedTable materialize(const AutomatonDef& a, std::size_t bound, MaterializeMode mode = MaterializeMode::Concrete);

}  // namespace pegsa
