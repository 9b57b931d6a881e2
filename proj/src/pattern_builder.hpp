#pragma once

// Builds neighbourhood patterns from a list of per-path constraints; every
// unconstrained position stays WILD.

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "pegsa/automaton.hpp"

namespace pegsa::detail {

struct Constraint {
  enum class Kind : std::uint8_t { Label, Empty, Absent, Present };
  std::vector<std::uint16_t> path;
  Kind kind = Kind::Present;
  LabelId label = kNoLabel;
};

inline Constraint has_label(std::vector<std::uint16_t> path, LabelId g) {
  return {std::move(path), Constraint::Kind::Label, g};
}
inline Constraint is_base(std::vector<std::uint16_t> path) { return {std::move(path), Constraint::Kind::Empty, kNoLabel}; }
inline Constraint is_absent(std::vector<std::uint16_t> path) { return {std::move(path), Constraint::Kind::Absent, kNoLabel}; }
inline Constraint is_present(std::vector<std::uint16_t> path) {
  return {std::move(path), Constraint::Kind::Present, kNoLabel};
}

PatternPtr build_pattern(std::size_t d, const std::vector<Constraint>& cs, std::size_t at = 0,
                         const std::vector<std::uint16_t>& prefix = {});

inline PatternPtr build_pattern(std::size_t d, std::initializer_list<Constraint> cs) {
  return build_pattern(d, std::vector<Constraint>(cs));
}

/// Small helper for table-building code.
class RuleWriter {
 public:
  explicit RuleWriter(AutomatonDef& a) : a_(a) {}

  void add(StateId from, std::optional<char> symbol, std::vector<Constraint> cs, StateId to, LabelId label,
           std::vector<PathSpec> edges) {
    TransitionRule r;
    r.from = from;
    r.symbol = symbol;
    r.pattern = cs.empty() ? Pattern::wild() : build_pattern(a_.degree(), cs);
    r.result = Transition{to, label, std::move(edges)};
    a_.add_rule(std::move(r));
  }

 private:
  AutomatonDef& a_;
};

inline PathSpec P(std::initializer_list<std::uint16_t> steps) { return PathSpec::of(std::vector<std::uint16_t>(steps)); }
inline PathSpec L() { return PathSpec::lambda(); }
inline PathSpec N() { return PathSpec::absent(); }
inline PathSpec SELF() { return PathSpec::self(); }

}  // namespace pegsa::detail
