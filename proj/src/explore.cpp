#include "pegsa/explore.hpp"

#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

#include "pegsa/errors.hpp"

namespace pegsa {

namespace {

constexpr std::size_t kConfigBudget = 20'000'000;

// Hash-conses concrete patterns so equal neighbourhoods share one pointer.
class PatternInterner {
 public:
  PatternPtr node(LabelId label, std::vector<PatternPtr> children) {
    std::string key = std::to_string(label);
    for (const auto& c : children) {
      key += ',';
      key += std::to_string(reinterpret_cast<std::uintptr_t>(c.get()));
    }
    auto it = table_.find(key);
    if (it != table_.end()) return it->second;
    LabelPattern lp = label == kNoLabel ? LabelPattern::empty() : LabelPattern::is(label);
    PatternPtr p = Pattern::node(lp, std::move(children));
    table_.emplace(std::move(key), p);
    return p;
  }

  /// Concrete pattern of N_k(S, v).
  PatternPtr of(const Scaffold& s, NodeId v, std::size_t k) {
    std::map<std::pair<NodeId, std::size_t>, PatternPtr> memo;
    auto build = [&](auto&& self, NodeId u, std::size_t depth) -> PatternPtr {
      if (u == kNoNode) return Pattern::absent();
      auto key = std::make_pair(u, depth);
      auto it = memo.find(key);
      if (it != memo.end()) return it->second;
      std::vector<PatternPtr> children;
      if (depth > 0)
        for (std::size_t i = 0; i < s.degree(); ++i) children.push_back(self(self, s.edge(u, i), depth - 1));
      PatternPtr p = node(s.label(u), std::move(children));
      memo.emplace(key, p);
      return p;
    };
    return build(build, v, k);
  }

 private:
  std::unordered_map<std::string, PatternPtr> table_;
};

AutomatonDef empty_copy(const AutomatonDef& a) {
  AutomatonDef out(a.sigma(), a.degree(), a.depth());
  for (std::size_t g = 0; g < a.label_count(); ++g) out.add_label(a.label_name(static_cast<LabelId>(g)));
  for (std::size_t q = 0; q < a.state_count(); ++q)
    out.add_state(a.state_name(static_cast<StateId>(q)), a.accepting(static_cast<StateId>(q)));
  out.set_start(a.start());
  return out;
}

// Visits every configuration reachable on inputs of length ≤ bound and calls
// decide(q, σ, scaffold) for each σ; decide returns the transition to follow.
template <typename Decide>
void explore(const AutomatonDef& a, std::size_t bound, Decide&& decide) {
  std::size_t visited = 0;
  auto visit = [&](auto&& self, StateId q, const Scaffold& s, std::size_t depth) -> void {
    if (++visited > kConfigBudget) throw ResourceError("exploration exceeded the configuration budget");
    for (char c : a.sigma()) {
      Transition t = decide(q, c, s);
      if (depth == bound) continue;
      Scaffold next = s;
      const NodeId top = s.top();
      std::vector<NodeId> targets(a.degree(), kNoNode);
      for (std::size_t i = 0; i < a.degree(); ++i) {
        const PathSpec& p = t.edges[i];
        if (p.is_self()) targets[i] = top + 1;
        else if (p.is_steps()) targets[i] = resolve_path(s, top, p.steps);
      }
      next.append(t.label, targets);
      self(self, t.to, next, depth + 1);
    }
  };
  visit(visit, a.start(), Scaffold(a.degree()), 0);
}

PatternPtr observed_pattern(const AccessLog& log, const Scaffold& s, NodeId v) {
  auto build = [&](auto&& self, std::size_t entry, NodeId u) -> PatternPtr {
    const auto& e = log.at(entry);
    LabelPattern lp = LabelPattern::wild();
    if (e.label_read) lp = s.label(u) == kNoLabel ? LabelPattern::empty() : LabelPattern::is(s.label(u));
    bool any_child = false;
    for (auto c : e.child) any_child = any_child || c != AccessLog::kUnread;
    if (!any_child) {
      if (!e.label_read) return Pattern::wild();
      return Pattern::node(lp);
    }
    std::vector<PatternPtr> children;
    for (std::size_t i = 0; i < e.child.size(); ++i) {
      auto c = e.child[i];
      if (c == AccessLog::kUnread) children.push_back(Pattern::wild());
      else if (c == AccessLog::kAbsent) children.push_back(Pattern::absent());
      else children.push_back(self(self, static_cast<std::size_t>(c), s.edge(u, i)));
    }
    return Pattern::node(lp, std::move(children));
  };
  return build(build, 0, v);
}

}  // namespace

BoundedTable expand_patterns(const AutomatonDef& a, std::size_t bound) {
  if (a.is_computed()) throw ContractError("expand_patterns needs a table automaton; use materialize");
  const auto& rules = a.rules();
  std::vector<bool> concrete(rules.size());
  for (std::size_t i = 0; i < rules.size(); ++i)
    concrete[i] = rules[i].symbol.has_value() && rules[i].pattern->is_concrete(a.degree(), a.depth());

  PatternInterner interner;
  std::vector<std::vector<std::pair<char, PatternPtr>>> instances(rules.size());
  std::set<std::tuple<std::size_t, char, const Pattern*>> seen;
  explore(a, bound, [&](StateId q, char c, const Scaffold& s) {
    NeighborhoodView view(s, s.top(), a.depth());
    auto id = a.find_rule(q, c, view);
    if (!id) a.transition(q, c, view);  // throws the transition hole
    if (!concrete[*id]) {
      PatternPtr p = interner.of(s, s.top(), a.depth());
      if (seen.emplace(*id, c, p.get()).second) instances[*id].emplace_back(c, p);
    }
    return rules[*id].result;
  });

  AutomatonDef out = empty_copy(a);
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (concrete[i]) {
      out.add_rule(rules[i]);
      continue;
    }
    for (auto& [c, p] : instances[i]) out.add_rule(TransitionRule{rules[i].from, c, p, rules[i].result});
  }
  return BoundedTable{std::move(out), bound + 1};
}

BoundedTable materialize(const AutomatonDef& a, std::size_t bound, MaterializeMode mode) {
  if (!a.is_computed()) throw ContractError("materialize needs a computed automaton");
  AutomatonDef out = empty_copy(a);
  PatternInterner interner;
  std::map<std::tuple<StateId, char, const Pattern*>, std::size_t> known;
  explore(a, bound, [&](StateId q, char c, const Scaffold& s) -> Transition {
    if (mode == MaterializeMode::Concrete) {
      PatternPtr p = interner.of(s, s.top(), a.depth());
      auto key = std::make_tuple(q, c, p.get());
      auto it = known.find(key);
      if (it != known.end()) return out.rules()[it->second].result;
      Transition t = a.transition(q, c, NeighborhoodView(s, s.top(), a.depth()));
      known.emplace(key, out.rules().size());
      out.add_rule(TransitionRule{q, c, p, t});
      return t;
    }
    NeighborhoodView plain(s, s.top(), a.depth());
    if (auto id = out.find_rule(q, c, plain)) return out.rules()[*id].result;
    AccessLog log;
    Transition t = a.transition(q, c, NeighborhoodView(s, s.top(), a.depth(), &log));
    out.add_rule(TransitionRule{q, c, observed_pattern(log, s, s.top()), t});
    return t;
  });
  return BoundedTable{std::move(out), bound + 1};
}

}  // namespace pegsa
