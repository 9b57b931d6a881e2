#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pegsa/scaffold.hpp"

namespace pegsa {

/// Constraint on a neighbourhood label: anything, the base's ∅, or one γ.
struct LabelPattern {
  enum class Kind : std::uint8_t { Wild, Empty, Is };
  Kind kind = Kind::Wild;
  LabelId value = kNoLabel;

  static LabelPattern wild() { return {Kind::Wild, kNoLabel}; }
  static LabelPattern empty() { return {Kind::Empty, kNoLabel}; }
  static LabelPattern is(LabelId g) { return {Kind::Is, g}; }

  friend bool operator==(const LabelPattern&, const LabelPattern&) = default;
};

struct Pattern;
using PatternPtr = std::shared_ptr<const Pattern>;

/// Neighbourhood pattern. A Node with no child patterns leaves its children
/// unconstrained; otherwise it lists exactly d of them.
struct Pattern {
  enum class Kind : std::uint8_t { Wild, Absent, Node };
  Kind kind = Kind::Wild;
  LabelPattern label;
  std::vector<PatternPtr> children;

  static PatternPtr wild();
  static PatternPtr absent();
  static PatternPtr node(LabelPattern label, std::vector<PatternPtr> children = {});

  /// Depth of the deepest constrained child position.
  std::size_t depth() const;
  /// No WILD anywhere, labels fixed, and every node above depth k lists d children.
  bool is_concrete(std::size_t d, std::size_t k) const;

  friend bool operator==(const Pattern& a, const Pattern& b);
};

bool match_pattern(const Pattern& p, const Neighborhood* n);
bool match_pattern(const Pattern& p, const NeighborhoodView& v);
/// Some neighbourhood of depth k matches both patterns.
bool patterns_overlap(const Pattern& a, const Pattern& b);

/// The concrete pattern equal to N_k(S, v).
PatternPtr concrete_pattern(const Neighborhood* n);

struct Transition {
  StateId to = 0;
  LabelId label = 0;
  std::vector<PathSpec> edges;

  friend bool operator==(const Transition&, const Transition&) = default;
};

struct TransitionRule {
  StateId from = 0;
  /// nullopt matches every symbol.
  std::optional<char> symbol;
  PatternPtr pattern = Pattern::wild();
  Transition result;
};

using TransitionHook = std::function<Transition(StateId, char, const NeighborhoodView&)>;

/// A scaffolding automaton (Σ, d, Γ, k, Q, q₀, F, δ). δ is either an ordered
/// rule table, first match wins, or a computed hook.
class AutomatonDef {
 public:
  AutomatonDef(std::string sigma, std::size_t d, std::size_t k);

  const std::string& sigma() const { return sigma_; }
  bool has_symbol(char c) const;
  std::size_t degree() const { return d_; }
  std::size_t depth() const { return k_; }

  StateId add_state(std::string name, bool accepting = false);
  LabelId add_label(std::string name);
  void set_start(StateId q);
  void set_accepting(StateId q, bool accepting);

  std::size_t state_count() const { return states_.size(); }
  std::size_t label_count() const { return labels_.size(); }
  const std::string& state_name(StateId q) const { return states_.at(static_cast<std::size_t>(q)); }
  const std::string& label_name(LabelId g) const { return labels_.at(static_cast<std::size_t>(g)); }
  StateId state(std::string_view name) const;
  LabelId label(std::string_view name) const;
  std::optional<StateId> find_state(std::string_view name) const;
  std::optional<LabelId> find_label(std::string_view name) const;
  StateId start() const { return start_; }
  bool accepting(StateId q) const { return accepting_.at(static_cast<std::size_t>(q)); }

  /// Appends a table rule after checking its states, labels, symbol and shape.
  void add_rule(TransitionRule rule);
  const std::vector<TransitionRule>& rules() const { return rules_; }
  void set_hook(TransitionHook hook);
  bool is_computed() const { return static_cast<bool>(hook_); }

  /// Index of the first rule for (q, σ) matching the view, if any.
  std::optional<std::size_t> find_rule(StateId q, char sigma, const NeighborhoodView& view) const;
  /// δ(q, σ, view). Throws TransitionHole for a table without a matching rule.
  Transition transition(StateId q, char sigma, const NeighborhoodView& view) const;

  /// Pairs of rule indices (i < j) with the same state, compatible symbols and
  /// jointly satisfiable patterns.
  std::vector<std::pair<std::size_t, std::size_t>> overlapping_rules() const;

  /// Structural equality of the declared parts; hooks never compare equal.
  friend bool operator==(const AutomatonDef& a, const AutomatonDef& b);

 private:
  void check_transition(const Transition& t) const;
  const std::vector<std::size_t>& candidates(StateId q, char sigma) const;

  std::string sigma_;
  std::size_t d_;
  std::size_t k_;
  std::vector<std::string> states_;
  std::vector<bool> accepting_;
  std::vector<std::string> labels_;
  StateId start_ = 0;
  std::vector<TransitionRule> rules_;
  // Rule indices per (state, symbol index), wildcard rules merged in order.
  std::vector<std::vector<std::size_t>> index_;
  TransitionHook hook_;
};

/// Appends node t+1 for δ(q, σ, N_k(S, t)); returns q′.
StateId step_in_place(const AutomatonDef& a, char sigma, StateId q, Scaffold& s);
/// The single-step function: (q′, S′).
std::pair<StateId, Scaffold> step(const AutomatonDef& a, char sigma, StateId q, const Scaffold& s);

/// Computation (q_0, S_0) … (q_n, S_n). S_i is scaffold.prefix(i + 1).
struct RunTrace {
  std::string input;
  std::vector<StateId> states;
  std::vector<bool> accepting;
  Scaffold scaffold{1};

  bool accepted() const { return accepting.back(); }
  StateId final_state() const { return states.back(); }
  /// Prefix lengths i with q_i ∈ F.
  std::vector<std::size_t> accepting_prefixes() const;
};

RunTrace run(const AutomatonDef& a, std::string_view input);
bool accepts(const AutomatonDef& a, std::string_view input);

/// Throws InputError when a symbol of input is outside Σ.
void check_symbols(const AutomatonDef& a, std::string_view input);

/// Describes the top neighbourhood for error messages.
std::string describe_neighborhood(const AutomatonDef& a, const Neighborhood* n);

}  // namespace pegsa
