#include "pegsa/automaton.hpp"

#include <algorithm>
#include <unordered_map>

#include "pegsa/errors.hpp"

namespace pegsa {

PatternPtr Pattern::wild() {
  static const PatternPtr p = std::make_shared<Pattern>(Pattern{Kind::Wild, {}, {}});
  return p;
}

PatternPtr Pattern::absent() {
  static const PatternPtr p = std::make_shared<Pattern>(Pattern{Kind::Absent, {}, {}});
  return p;
}

PatternPtr Pattern::node(LabelPattern label, std::vector<PatternPtr> children) {
  for (const auto& c : children)
    if (!c) throw ContractError("pattern children must not be null");
  return std::make_shared<Pattern>(Pattern{Kind::Node, label, std::move(children)});
}

std::size_t Pattern::depth() const {
  if (kind != Kind::Node || children.empty()) return 0;
  std::size_t deepest = 0;
  for (const auto& c : children) deepest = std::max(deepest, c->depth());
  return deepest + 1;
}

bool Pattern::is_concrete(std::size_t d, std::size_t k) const {
  switch (kind) {
    case Kind::Wild: return false;
    case Kind::Absent: return true;
    case Kind::Node: break;
  }
  if (label.kind == LabelPattern::Kind::Wild) return false;
  if (k == 0) return children.empty();
  if (children.size() != d) return false;
  return std::all_of(children.begin(), children.end(), [&](const PatternPtr& c) { return c->is_concrete(d, k - 1); });
}

bool operator==(const Pattern& a, const Pattern& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind || !(a.label == b.label) || a.children.size() != b.children.size()) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!(*a.children[i] == *b.children[i])) return false;
  return true;
}

namespace {

bool label_matches(const LabelPattern& p, LabelId l) {
  switch (p.kind) {
    case LabelPattern::Kind::Wild: return true;
    case LabelPattern::Kind::Empty: return l == kNoLabel;
    case LabelPattern::Kind::Is: return l == p.value;
  }
  return false;
}

bool labels_compatible(const LabelPattern& a, const LabelPattern& b) {
  if (a.kind == LabelPattern::Kind::Wild || b.kind == LabelPattern::Kind::Wild) return true;
  return a == b;
}

}  // namespace

bool match_pattern(const Pattern& p, const Neighborhood* n) {
  switch (p.kind) {
    case Pattern::Kind::Wild: return true;
    case Pattern::Kind::Absent: return n == nullptr;
    case Pattern::Kind::Node: break;
  }
  if (!n || !label_matches(p.label, n->label)) return false;
  if (p.children.empty()) return true;
  if (n->children.size() != p.children.size())
    throw ContractError("pattern is deeper than the neighbourhood");
  for (std::size_t i = 0; i < p.children.size(); ++i)
    if (!match_pattern(*p.children[i], n->children[i].get())) return false;
  return true;
}

bool match_pattern(const Pattern& p, const NeighborhoodView& v) {
  switch (p.kind) {
    case Pattern::Kind::Wild: return true;
    case Pattern::Kind::Absent: return !v.present();
    case Pattern::Kind::Node: break;
  }
  if (!v.present() || !label_matches(p.label, v.label())) return false;
  if (p.children.empty()) return true;
  if (v.depth() == 0 || p.children.size() != v.degree())
    throw ContractError("pattern is deeper than the neighbourhood");
  for (std::size_t i = 0; i < p.children.size(); ++i) {
    const Pattern& c = *p.children[i];
    if (c.kind == Pattern::Kind::Wild) continue;
    if (!match_pattern(c, v.child(i))) return false;
  }
  return true;
}

bool patterns_overlap(const Pattern& a, const Pattern& b) {
  if (a.kind == Pattern::Kind::Wild || b.kind == Pattern::Kind::Wild) return true;
  if (a.kind == Pattern::Kind::Absent || b.kind == Pattern::Kind::Absent) return a.kind == b.kind;
  if (!labels_compatible(a.label, b.label)) return false;
  if (a.children.empty() || b.children.empty()) return true;
  for (std::size_t i = 0; i < a.children.size() && i < b.children.size(); ++i)
    if (!patterns_overlap(*a.children[i], *b.children[i])) return false;
  return true;
}

PatternPtr concrete_pattern(const Neighborhood* n) {
  std::unordered_map<const Neighborhood*, PatternPtr> memo;
  auto build = [&](auto&& self, const Neighborhood* m) -> PatternPtr {
    if (!m) return Pattern::absent();
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;
    std::vector<PatternPtr> children;
    children.reserve(m->children.size());
    for (const auto& c : m->children) children.push_back(self(self, c.get()));
    LabelPattern lp = m->label == kNoLabel ? LabelPattern::empty() : LabelPattern::is(m->label);
    PatternPtr p = Pattern::node(lp, std::move(children));
    memo.emplace(m, p);
    return p;
  };
  return build(build, n);
}

AutomatonDef::AutomatonDef(std::string sigma, std::size_t d, std::size_t k)
    : sigma_(std::move(sigma)), d_(d), k_(k) {
  if (d_ == 0) throw ContractError("automaton degree must be at least 1");
  if (sigma_.empty()) throw ContractError("automaton alphabet must not be empty");
  std::string seen;
  for (char c : sigma_) {
    if (seen.find(c) != std::string::npos) throw ContractError("duplicate symbol in alphabet");
    seen += c;
  }
}

bool AutomatonDef::has_symbol(char c) const { return sigma_.find(c) != std::string::npos; }

StateId AutomatonDef::add_state(std::string name, bool accepting) {
  if (find_state(name)) throw ContractError("duplicate state " + name);
  states_.push_back(std::move(name));
  accepting_.push_back(accepting);
  index_.resize(states_.size() * sigma_.size());
  return static_cast<StateId>(states_.size() - 1);
}

LabelId AutomatonDef::add_label(std::string name) {
  if (find_label(name)) throw ContractError("duplicate label " + name);
  labels_.push_back(std::move(name));
  return static_cast<LabelId>(labels_.size() - 1);
}

void AutomatonDef::set_start(StateId q) {
  if (q < 0 || static_cast<std::size_t>(q) >= states_.size()) throw ContractError("unknown start state");
  start_ = q;
}

void AutomatonDef::set_accepting(StateId q, bool accepting) {
  accepting_.at(static_cast<std::size_t>(q)) = accepting;
}

std::optional<StateId> AutomatonDef::find_state(std::string_view name) const {
  for (std::size_t i = 0; i < states_.size(); ++i)
    if (states_[i] == name) return static_cast<StateId>(i);
  return std::nullopt;
}

std::optional<LabelId> AutomatonDef::find_label(std::string_view name) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == name) return static_cast<LabelId>(i);
  return std::nullopt;
}

StateId AutomatonDef::state(std::string_view name) const {
  if (auto q = find_state(name)) return *q;
  throw ContractError("unknown state " + std::string(name));
}

LabelId AutomatonDef::label(std::string_view name) const {
  if (auto g = find_label(name)) return *g;
  throw ContractError("unknown label " + std::string(name));
}

void AutomatonDef::check_transition(const Transition& t) const {
  if (t.to < 0 || static_cast<std::size_t>(t.to) >= states_.size()) throw ContractError("transition to unknown state");
  if (t.label < 0 || static_cast<std::size_t>(t.label) >= labels_.size())
    throw ContractError("transition writes an unknown label");
  if (t.edges.size() != d_) throw ContractError("transition must give exactly d edges");
  for (const auto& p : t.edges) {
    if (!p.is_steps()) continue;
    if (p.steps.size() > k_) throw ContractError("edge path " + to_string(p) + " is longer than k");
    for (auto i : p.steps)
      if (i >= d_) throw ContractError("edge path " + to_string(p) + " uses an index beyond d");
  }
}

void AutomatonDef::add_rule(TransitionRule rule) {
  if (hook_) throw ContractError("a computed automaton has no rule table");
  if (rule.from < 0 || static_cast<std::size_t>(rule.from) >= states_.size())
    throw ContractError("rule from unknown state");
  if (rule.symbol && !has_symbol(*rule.symbol))
    throw ContractError("rule symbol '" + std::string(1, *rule.symbol) + "' is not in the alphabet");
  if (!rule.pattern) throw ContractError("rule pattern must not be null");
  if (rule.pattern->depth() > k_) throw ContractError("rule pattern is deeper than k");
  auto check_pattern = [&](auto&& self, const Pattern& p) -> void {
    if (p.kind != Pattern::Kind::Node) return;
    if (p.label.kind == LabelPattern::Kind::Is &&
        (p.label.value < 0 || static_cast<std::size_t>(p.label.value) >= labels_.size()))
      throw ContractError("rule pattern uses an unknown label");
    if (!p.children.empty() && p.children.size() != d_)
      throw ContractError("pattern nodes list either no children or exactly d");
    for (const auto& c : p.children) self(self, *c);
  };
  check_pattern(check_pattern, *rule.pattern);
  check_transition(rule.result);
  const std::size_t id = rules_.size();
  const std::size_t base = static_cast<std::size_t>(rule.from) * sigma_.size();
  for (std::size_t s = 0; s < sigma_.size(); ++s)
    if (!rule.symbol || *rule.symbol == sigma_[s]) index_[base + s].push_back(id);
  rules_.push_back(std::move(rule));
}

void AutomatonDef::set_hook(TransitionHook hook) {
  if (!rules_.empty()) throw ContractError("a table automaton cannot also have a hook");
  hook_ = std::move(hook);
}

const std::vector<std::size_t>& AutomatonDef::candidates(StateId q, char sigma) const {
  const std::size_t s = sigma_.find(sigma);
  if (s == std::string::npos) throw InputError("symbol '" + std::string(1, sigma) + "' is not in the alphabet");
  return index_.at(static_cast<std::size_t>(q) * sigma_.size() + s);
}

std::optional<std::size_t> AutomatonDef::find_rule(StateId q, char sigma, const NeighborhoodView& view) const {
  for (std::size_t id : candidates(q, sigma))
    if (match_pattern(*rules_[id].pattern, view)) return id;
  return std::nullopt;
}

Transition AutomatonDef::transition(StateId q, char sigma, const NeighborhoodView& view) const {
  if (hook_) {
    Transition t = hook_(q, sigma, view);
    check_transition(t);
    return t;
  }
  if (auto id = find_rule(q, sigma, view)) return rules_[*id].result;
  auto n = neighborhood(view.scaffold(), view.node(), view.depth());
  throw TransitionHole("no transition for state " + state_name(q) + ", symbol '" + std::string(1, sigma) +
                       "', neighbourhood " + describe_neighborhood(*this, n.get()));
}

std::vector<std::pair<std::size_t, std::size_t>> AutomatonDef::overlapping_rules() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    for (std::size_t j = i + 1; j < rules_.size(); ++j) {
      const auto& a = rules_[i];
      const auto& b = rules_[j];
      if (a.from != b.from) continue;
      if (a.symbol && b.symbol && *a.symbol != *b.symbol) continue;
      if (patterns_overlap(*a.pattern, *b.pattern)) out.emplace_back(i, j);
    }
  }
  return out;
}

bool operator==(const AutomatonDef& a, const AutomatonDef& b) {
  if (a.hook_ || b.hook_) return false;
  if (a.sigma_ != b.sigma_ || a.d_ != b.d_ || a.k_ != b.k_ || a.states_ != b.states_ ||
      a.accepting_ != b.accepting_ || a.labels_ != b.labels_ || a.start_ != b.start_ ||
      a.rules_.size() != b.rules_.size())
    return false;
  for (std::size_t i = 0; i < a.rules_.size(); ++i) {
    const auto& x = a.rules_[i];
    const auto& y = b.rules_[i];
    if (x.from != y.from || x.symbol != y.symbol || !(*x.pattern == *y.pattern) || !(x.result == y.result))
      return false;
  }
  return true;
}

StateId step_in_place(const AutomatonDef& a, char sigma, StateId q, Scaffold& s) {
  const NodeId top = s.top();
  Transition t = a.transition(q, sigma, NeighborhoodView(s, top, a.depth()));
  const NodeId fresh = top + 1;
  std::vector<NodeId> targets(a.degree(), kNoNode);
  for (std::size_t i = 0; i < a.degree(); ++i) {
    const PathSpec& p = t.edges[i];
    if (p.is_self()) targets[i] = fresh;
    else if (p.is_steps()) targets[i] = resolve_path(s, top, p.steps);
  }
  s.append(t.label, targets);
  return t.to;
}

std::pair<StateId, Scaffold> step(const AutomatonDef& a, char sigma, StateId q, const Scaffold& s) {
  if (!a.has_symbol(sigma)) throw InputError("symbol '" + std::string(1, sigma) + "' is not in the alphabet");
  Scaffold next = s;
  StateId q2 = step_in_place(a, sigma, q, next);
  return {q2, std::move(next)};
}

void check_symbols(const AutomatonDef& a, std::string_view input) {
  for (std::size_t i = 0; i < input.size(); ++i)
    if (!a.has_symbol(input[i]))
      throw InputError("symbol '" + std::string(1, input[i]) + "' at position " + std::to_string(i) +
                       " is not in the alphabet");
}

std::vector<std::size_t> RunTrace::accepting_prefixes() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < accepting.size(); ++i)
    if (accepting[i]) out.push_back(i);
  return out;
}

RunTrace run(const AutomatonDef& a, std::string_view input) {
  check_symbols(a, input);
  RunTrace trace;
  trace.input = std::string(input);
  trace.scaffold = Scaffold(a.degree());
  StateId q = a.start();
  trace.states.push_back(q);
  trace.accepting.push_back(a.accepting(q));
  for (char c : input) {
    q = step_in_place(a, c, q, trace.scaffold);
    trace.states.push_back(q);
    trace.accepting.push_back(a.accepting(q));
  }
  return trace;
}

bool accepts(const AutomatonDef& a, std::string_view input) {
  check_symbols(a, input);
  Scaffold s(a.degree());
  StateId q = a.start();
  for (char c : input) q = step_in_place(a, c, q, s);
  return a.accepting(q);
}

std::string describe_neighborhood(const AutomatonDef& a, const Neighborhood* n) {
  constexpr std::size_t kLimit = 4000;
  std::string out;
  auto emit = [&](auto&& self, const Neighborhood* m) -> void {
    if (out.size() > kLimit) return;
    if (!m) {
      out += "-";
      return;
    }
    std::string label = m->label == kNoLabel ? "\xE2\x88\x85" : a.label_name(m->label);
    if (m->children.empty()) {
      out += label;
      return;
    }
    out += "[" + label;
    for (const auto& c : m->children) {
      out += ' ';
      self(self, c.get());
    }
    out += "]";
  };
  emit(emit, n);
  if (out.size() > kLimit) out = out.substr(0, kLimit) + "...";
  return out;
}

}  // namespace pegsa
