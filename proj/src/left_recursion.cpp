#include <algorithm>
#include <functional>

#include "pegsa/tabular.hpp"

namespace pegsa {

namespace {

// May `e` succeed without consuming, given the current guess for each rule.
bool may_be_silent(const Grammar& g, const Expr& e, const std::vector<bool>& silent) {
  switch (e.kind()) {
    case ExprKind::Empty:
    case ExprKind::Not:
    case ExprKind::And:
    case ExprKind::Star:
      return true;
    case ExprKind::Fail:
    case ExprKind::Terminal:
    case ExprKind::AnyChar:
      return false;
    case ExprKind::Literal:
      return e.text().empty();
    case ExprKind::Ref:
      return silent[*g.index_of(e.name())];
    case ExprKind::Seq:
      return may_be_silent(g, e.left(), silent) && may_be_silent(g, e.right(), silent);
    case ExprKind::Choice:
      return may_be_silent(g, e.left(), silent) || may_be_silent(g, e.right(), silent);
    case ExprKind::Plus:
      return may_be_silent(g, e.child(0), silent);
    case ExprKind::Repeat:
      return e.count() == 0 || may_be_silent(g, e.child(0), silent);
  }
  return true;
}

// Nonterminals `e` may call at the position where `e` starts.
void same_position_calls(const Grammar& g, const Expr& e, const std::vector<bool>& silent,
                         std::vector<std::size_t>& out) {
  switch (e.kind()) {
    case ExprKind::Ref:
      out.push_back(*g.index_of(e.name()));
      break;
    case ExprKind::Not:
    case ExprKind::And:
    case ExprKind::Star:
    case ExprKind::Plus:
      same_position_calls(g, e.child(0), silent, out);
      break;
    case ExprKind::Repeat:
      if (e.count() > 0) same_position_calls(g, e.child(0), silent, out);
      break;
    case ExprKind::Seq:
      same_position_calls(g, e.left(), silent, out);
      if (may_be_silent(g, e.left(), silent)) same_position_calls(g, e.right(), silent, out);
      break;
    case ExprKind::Choice:
      same_position_calls(g, e.left(), silent, out);
      same_position_calls(g, e.right(), silent, out);
      break;
    default:
      break;
  }
}

}  // namespace

LeftRecursionReport check_left_recursion(const Grammar& input) {
  // Star rules become explicit so a silent loop body shows up as a cycle.
  const Grammar g = desugar(input);
  const auto rules = g.rules();
  const std::size_t n = rules.size();

  // Least fixpoint of "may succeed silently".
  std::vector<bool> silent(n, false);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!silent[i] && may_be_silent(g, rules[i].body, silent)) {
        silent[i] = true;
        changed = true;
      }
    }
  }

  std::vector<std::vector<std::size_t>> edges(n);
  for (std::size_t i = 0; i < n; ++i) same_position_calls(g, rules[i].body, silent, edges[i]);

  // Tarjan's strongly connected components.
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  int counter = 0;
  LeftRecursionReport report;
  std::function<void(std::size_t)> connect = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w : edges[v]) {
      if (index[w] < 0) {
        connect(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] != index[v]) return;
    std::vector<std::size_t> comp;
    std::size_t w;
    do {
      w = stack.back();
      stack.pop_back();
      on_stack[w] = false;
      comp.push_back(w);
    } while (w != v);
    bool cyclic = comp.size() > 1 || std::find(edges[v].begin(), edges[v].end(), v) != edges[v].end();
    if (!cyclic) return;
    std::sort(comp.begin(), comp.end());
    std::vector<std::string> names;
    for (std::size_t c : comp) names.push_back(rules[c].name);
    report.cycles.push_back(std::move(names));
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] < 0) connect(v);
  std::sort(report.cycles.begin(), report.cycles.end(),
            [&](const auto& a, const auto& b) { return *g.index_of(a[0]) < *g.index_of(b[0]); });
  return report;
}

}  // namespace pegsa
