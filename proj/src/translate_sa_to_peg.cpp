#include <map>
#include <set>

#include "pegsa/errors.hpp"
#include "pegsa/translate.hpp"

namespace pegsa {

namespace {

using Steps = std::vector<std::uint16_t>;

std::string path_name(const Steps& p) {
  std::string name = "Path";
  for (auto i : p) name += "_" + std::to_string(i);
  return name;
}

// Canonical text of a concrete pattern, used to merge equal neighbourhoods.
std::string pattern_key(const Pattern& p) {
  switch (p.kind) {
    case Pattern::Kind::Wild: return "*";
    case Pattern::Kind::Absent: return "-";
    case Pattern::Kind::Node: break;
  }
  std::string out = "[";
  out += p.label.kind == LabelPattern::Kind::Empty ? std::string("e") : std::to_string(p.label.value);
  for (const auto& c : p.children) out += " " + pattern_key(*c);
  return out + "]";
}

PatternPtr initial_pattern(std::size_t d, std::size_t k) {
  std::vector<PatternPtr> children;
  if (k > 0) children.assign(d, Pattern::absent());
  return Pattern::node(LabelPattern::empty(), std::move(children));
}

}  // namespace

AutomatonDef split_start_state(const AutomatonDef& a) {
  const StateId q0 = a.start();
  bool reentered = false;
  for (const auto& r : a.rules()) reentered = reentered || r.result.to == q0;
  if (!reentered) return a;
  AutomatonDef out(a.sigma(), a.degree(), a.depth());
  for (std::size_t g = 0; g < a.label_count(); ++g) out.add_label(a.label_name(static_cast<LabelId>(g)));
  for (std::size_t q = 0; q < a.state_count(); ++q)
    out.add_state(a.state_name(static_cast<StateId>(q)), a.accepting(static_cast<StateId>(q)));
  std::string name = a.state_name(q0) + "_entry";
  while (out.find_state(name)) name += "_";
  const StateId entry = out.add_state(name, a.accepting(q0));
  out.set_start(entry);
  for (const auto& r : a.rules()) out.add_rule(r);
  for (const auto& r : a.rules()) {
    if (r.from != q0) continue;
    TransitionRule copy = r;
    copy.from = entry;
    out.add_rule(std::move(copy));
  }
  return out;
}

Grammar automaton_to_peg(const AutomatonDef& input) {
  if (input.is_computed()) throw UnsupportedError("automaton_to_peg needs a table automaton; materialize it first");
  for (std::size_t i = 0; i < input.rules().size(); ++i) {
    const auto& r = input.rules()[i];
    if (!r.symbol || !r.pattern->is_concrete(input.degree(), input.depth()))
      throw UnsupportedError("rule " + std::to_string(i) +
                             " uses wildcards; expand the patterns to concrete neighbourhoods first");
  }
  const AutomatonDef a = split_start_state(input);
  const std::size_t d = a.degree();
  const auto& rules = a.rules();

  auto state_name = [](StateId q) { return "State_" + std::to_string(q); };
  auto label_name = [](LabelId g) { return "Label_" + std::to_string(g); };
  const Expr end = Expr::not_pred(Expr::any());

  // Distinct neighbourhoods; the initial one always gets index 0.
  std::map<std::string, std::size_t> nbhd_index;
  std::vector<PatternPtr> nbhds;
  auto nbhd_of = [&](const PatternPtr& p) {
    auto [it, fresh] = nbhd_index.emplace(pattern_key(*p), nbhds.size());
    if (fresh) nbhds.push_back(p);
    return it->second;
  };
  nbhd_of(initial_pattern(d, a.depth()));
  std::vector<std::size_t> rule_nbhd;
  for (const auto& r : rules) rule_nbhd.push_back(nbhd_of(r.pattern));
  auto nbhd_name = [](std::size_t i) { return "Neighbourhood_" + std::to_string(i); };

  auto transition = [&](std::size_t i) {
    const auto& r = rules[i];
    Expr sym = Expr::terminal(*r.symbol);
    return Expr::seq(Expr::and_pred(Expr::seq(sym, Expr::ref(state_name(r.from)))),
                     Expr::and_pred(Expr::seq(sym, Expr::ref(nbhd_name(rule_nbhd[i])))));
  };

  // Paths needed by the neighbourhood conjunctions, closed under the Path rules.
  std::set<Steps> needed;
  std::vector<Steps> work;
  auto need = [&](const Steps& p) {
    if (needed.insert(p).second) work.push_back(p);
  };
  for (const auto& p : nbhds) {
    auto walk = [&](auto&& self, const Pattern& q, Steps& at) -> void {
      need(at);
      for (std::size_t i = 0; i < q.children.size(); ++i) {
        at.push_back(static_cast<std::uint16_t>(i));
        if (q.children[i]->kind == Pattern::Kind::Node) self(self, *q.children[i], at);
        else need(at);
        at.pop_back();
      }
    };
    Steps root;
    walk(walk, *p, root);
  }
  while (!work.empty()) {
    Steps p = work.back();
    work.pop_back();
    if (p.empty()) continue;
    need(Steps(p.begin() + 1, p.end()));
    for (const auto& r : rules) {
      const PathSpec& e = r.result.edges[p.front()];
      if (e.is_steps()) need(e.steps);
    }
  }

  Grammar g(a.sigma());
  g.add_rule("AutomatonAccepts", Expr::fail());

  for (std::size_t q = 0; q < a.state_count(); ++q) {
    std::vector<Expr> alts;
    if (static_cast<StateId>(q) == a.start()) alts.push_back(end);
    for (std::size_t i = 0; i < rules.size(); ++i)
      if (rules[i].result.to == static_cast<StateId>(q)) alts.push_back(transition(i));
    g.add_rule(state_name(static_cast<StateId>(q)), Expr::choice(std::move(alts)));
  }
  for (std::size_t l = 0; l < a.label_count(); ++l) {
    std::vector<Expr> alts;
    for (std::size_t i = 0; i < rules.size(); ++i)
      if (rules[i].result.label == static_cast<LabelId>(l)) alts.push_back(transition(i));
    g.add_rule(label_name(static_cast<LabelId>(l)), Expr::choice(std::move(alts)));
  }
  for (std::size_t n = 0; n < nbhds.size(); ++n) {
    if (n == 0) {
      g.add_rule(nbhd_name(n), end);
      continue;
    }
    std::vector<Expr> conj;
    auto walk = [&](auto&& self, const Pattern& q, Steps& at) -> void {
      Expr path = Expr::ref(path_name(at));
      if (q.kind == Pattern::Kind::Absent) {
        conj.push_back(Expr::not_pred(path));
        return;
      }
      conj.push_back(Expr::and_pred(path));
      if (q.label.kind == LabelPattern::Kind::Empty) conj.push_back(Expr::and_pred(Expr::seq(path, end)));
      else conj.push_back(Expr::and_pred(Expr::seq(path, Expr::ref(label_name(q.label.value)))));
      for (std::size_t i = 0; i < q.children.size(); ++i) {
        at.push_back(static_cast<std::uint16_t>(i));
        self(self, *q.children[i], at);
        at.pop_back();
      }
    };
    Steps root;
    walk(walk, *nbhds[n], root);
    g.add_rule(nbhd_name(n), Expr::seq(std::move(conj)));
  }
  for (const Steps& p : needed) {
    if (p.empty()) {
      g.add_rule(path_name(p), Expr::empty());
      continue;
    }
    const Steps rest(p.begin() + 1, p.end());
    std::vector<Expr> alts;
    for (std::size_t i = 0; i < rules.size(); ++i) {
      const PathSpec& e = rules[i].result.edges[p.front()];
      std::vector<Expr> parts{transition(i)};
      if (e.is_absent()) {
        parts.push_back(Expr::fail());
      } else if (e.is_steps()) {
        parts.push_back(Expr::terminal(*rules[i].symbol));
        parts.push_back(Expr::ref(path_name(e.steps)));
        parts.push_back(Expr::ref(path_name(rest)));
      } else {
        parts.push_back(Expr::ref(path_name(rest)));
      }
      alts.push_back(Expr::seq(std::move(parts)));
    }
    g.add_rule(path_name(p), Expr::choice(std::move(alts)));
  }

  std::vector<Expr> finals;
  for (std::size_t q = 0; q < a.state_count(); ++q)
    if (a.accepting(static_cast<StateId>(q))) finals.push_back(Expr::ref(state_name(static_cast<StateId>(q))));
  g.set_rule("AutomatonAccepts", Expr::seq(Expr::choice(std::move(finals)), Expr::star(Expr::any())));
  g.set_start("AutomatonAccepts");
  g.validate();
  return g;
}

}  // namespace pegsa
