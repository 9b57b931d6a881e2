#include <algorithm>
#include <memory>

#include "pegsa/errors.hpp"
#include "pegsa/recognize.hpp"
#include "pegsa/translate.hpp"

namespace pegsa {

namespace {

enum class Shape : std::uint8_t { Empty, Fail, Terminal, Not, And, Seq, Choice };

struct NormalRule {
  Shape shape;
  char symbol = 0;
  std::uint16_t b = 0;
  std::uint16_t c = 0;
};

struct Compiled {
  std::vector<NormalRule> rules;
  std::vector<bool> accepts_empty;
  std::uint16_t start = 0;
};

enum class Status : std::uint8_t { Unknown, Active, Done };

// Edge paths of the node created by reading σ, one per nonterminal.
class EdgeSolver {
 public:
  EdgeSolver(const Compiled& g, char sigma, const NeighborhoodView& top, std::size_t k)
      : g_(g), sigma_(sigma), top_(top), k_(k), paths_(g.rules.size()), status_(g.rules.size()) {}

  const PathSpec& path(std::uint16_t a) {
    if (status_[a] == Status::Done) return paths_[a];
    // A same-position cycle: the re-entered edge reads as ∅.
    if (status_[a] == Status::Active) return absent_;
    status_[a] = Status::Active;
    PathSpec p = compute(a);
    paths_[a] = std::move(p);
    status_[a] = Status::Done;
    return paths_[a];
  }

 private:
  PathSpec compute(std::uint16_t a) {
    const NormalRule& r = g_.rules[a];
    switch (r.shape) {
      case Shape::Empty: return PathSpec::self();
      case Shape::Fail: return PathSpec::absent();
      case Shape::Terminal: return r.symbol == sigma_ ? PathSpec::lambda() : PathSpec::absent();
      case Shape::Not: return path(r.b).is_absent() ? PathSpec::self() : PathSpec::absent();
      case Shape::And: return path(r.b).is_absent() ? PathSpec::absent() : PathSpec::self();
      case Shape::Choice: {
        PathSpec left = path(r.b);
        if (!left.is_absent()) return left;
        return path(r.c);
      }
      case Shape::Seq: break;
    }
    PathSpec left = path(r.b);
    if (left.is_absent()) return left;
    if (left.is_self()) return path(r.c);
    NeighborhoodView u = top_.follow(left.steps);
    if (!u.present()) throw InternalError("edge path resolved to nothing");
    if (u.is_base()) {
      // B consumed the whole suffix; the base carries no edges, so C is
      // evaluated on the empty input directly.
      return g_.accepts_empty[r.c] ? left : PathSpec::absent();
    }
    if (left.steps.size() >= k_)
      throw InternalError("edge path longer than the neighbourhood depth k = " + std::to_string(k_));
    if (!u.child(r.c).present()) return PathSpec::absent();
    left.steps.push_back(r.c);
    return left;
  }

  const Compiled& g_;
  char sigma_;
  const NeighborhoodView& top_;
  std::size_t k_;
  std::vector<PathSpec> paths_;
  std::vector<Status> status_;
  PathSpec absent_ = PathSpec::absent();
};

}  // namespace

AutomatonDef peg_to_automaton(const Grammar& g) {
  if (!g.is_normalized()) throw ContractError("peg_to_automaton needs a grammar in binary normal form");
  g.validate();
  if (g.terminals().empty()) throw ContractError("peg_to_automaton needs a non-empty terminal alphabet");
  const std::size_t n = g.size();
  if (n > 0xFFFF) throw UnsupportedError("too many nonterminals");

  auto compiled = std::make_shared<Compiled>();
  for (const auto& r : g.rules()) {
    const Expr& e = r.body;
    auto idx = [&](const Expr& x) { return static_cast<std::uint16_t>(*g.index_of(x.name())); };
    switch (e.kind()) {
      case ExprKind::Empty: compiled->rules.push_back({Shape::Empty}); break;
      case ExprKind::Fail: compiled->rules.push_back({Shape::Fail}); break;
      case ExprKind::Terminal: compiled->rules.push_back({Shape::Terminal, e.symbol()}); break;
      case ExprKind::Not: compiled->rules.push_back({Shape::Not, 0, idx(e.child(0))}); break;
      case ExprKind::And: compiled->rules.push_back({Shape::And, 0, idx(e.child(0))}); break;
      case ExprKind::Seq: compiled->rules.push_back({Shape::Seq, 0, idx(e.left()), idx(e.right())}); break;
      case ExprKind::Choice: compiled->rules.push_back({Shape::Choice, 0, idx(e.left()), idx(e.right())}); break;
      default: throw InternalError("normal form check missed a rule");
    }
  }
  compiled->start = static_cast<std::uint16_t>(*g.index_of(g.start()));

  Recognizer rec(g);
  const auto empty = rec.all_outcomes("");
  for (std::size_t a = 0; a < n; ++a) {
    if (empty[a].diverged())
      throw TotalityError("grammar diverges on the empty input at " + empty[a].nonterminal);
    compiled->accepts_empty.push_back(empty[a].accepted());
  }

  AutomatonDef out(g.terminals(), n, n);
  const LabelId box = out.add_label("\xE2\x96\xA1");
  const StateId yes = out.add_state("yes", true);
  const StateId no = out.add_state("no", false);
  out.set_start(compiled->accepts_empty[compiled->start] ? yes : no);
  const std::size_t k = n;
  out.set_hook([compiled, box, yes, no, k](StateId, char sigma, const NeighborhoodView& top) {
    EdgeSolver solver(*compiled, sigma, top, k);
    Transition t;
    t.label = box;
    t.edges.reserve(compiled->rules.size());
    for (std::size_t a = 0; a < compiled->rules.size(); ++a)
      t.edges.push_back(solver.path(static_cast<std::uint16_t>(a)));
    const PathSpec& s = t.edges[compiled->start];
    t.to = s.is_steps() && top.follow(s.steps).is_base() ? yes : no;
    return t;
  });
  return out;
}

EdgeReport verify_edge_semantics(const Grammar& g, std::string_view input) {
  return verify_edge_semantics(g, peg_to_automaton(g), input);
}

EdgeReport verify_edge_semantics(const Grammar& g, const AutomatonDef& a, std::string_view input) {
  Recognizer rec(g);
  const std::size_t n = input.size();
  const std::size_t nts = rec.nonterminal_count();
  const auto outcomes = rec.all_outcomes(input);
  std::string reversed(input.rbegin(), input.rend());
  const RunTrace trace = run(a, reversed);
  const std::size_t start = rec.nonterminal_index(g.start());
  const StateId yes = a.state("yes");

  EdgeReport report;
  for (std::size_t i = 0; i <= n; ++i) {
    const std::size_t pos = n - i;
    const Outcome& s = outcomes[pos * nts + start];
    const bool member = s.accepted() && s.length == i;
    ++report.checked;
    if ((trace.states[i] == yes) != member)
      report.violations.push_back("suffix length " + std::to_string(i) + ": state " +
                                  a.state_name(trace.states[i]) + " but recognition says " +
                                  (member ? "member" : "nonmember"));
    if (i == 0) continue;
    for (std::size_t A = 0; A < nts; ++A) {
      const Outcome& o = outcomes[pos * nts + A];
      const NodeId e = trace.scaffold.edge(static_cast<NodeId>(i), A);
      ++report.checked;
      const std::string where = "node " + std::to_string(i) + ", " + rec.nonterminal_name(A) + ": ";
      if (o.diverged()) {
        report.violations.push_back(where + "recognition diverges");
      } else if (o.accepted()) {
        const NodeId want = static_cast<NodeId>(i - o.length);
        if (e != want)
          report.violations.push_back(where + "edge " + (e == kNoNode ? std::string("absent") : std::to_string(e)) +
                                      ", expected " + std::to_string(want));
      } else if (e != kNoNode) {
        report.violations.push_back(where + "edge " + std::to_string(e) + " present but recognition fails");
      }
    }
  }
  return report;
}

EdgeReport verify_edge_semantics_upto(const Grammar& g, std::size_t max_len, std::size_t max_reported) {
  const AutomatonDef a = peg_to_automaton(g);
  Recognizer rec(g);
  PrependRecognizer x(rec);
  const std::size_t nts = rec.nonterminal_count();
  const StateId yes = a.state("yes");
  const std::string& sigma = g.terminals();

  EdgeReport report;
  Scaffold s(a.degree());
  std::string w;  // automaton input; the grammar sees reverse(w)
  std::vector<StateId> states{a.start()};
  auto note = [&](std::string msg) {
    if (report.violations.size() < max_reported) report.violations.push_back("\"" + std::string(w.rbegin(), w.rend()) + "\": " + msg);
    else ++report.suppressed;
  };
  auto check_top = [&] {
    const Membership m = x.membership();
    ++report.checked;
    if (m == Membership::Diverges) {
      note("recognition diverges");
      return;
    }
    if ((states.back() == yes) != (m == Membership::Member)) note("state " + a.state_name(states.back()) + " but recognition says " + std::string(to_string(m)));
    if (w.empty()) return;
    const NodeId top = s.top();
    for (std::size_t A = 0; A < nts; ++A) {
      const Outcome o = x.outcome(A);
      const NodeId e = s.edge(top, A);
      ++report.checked;
      if (o.diverged()) {
        note(rec.nonterminal_name(A) + ": recognition diverges");
      } else if (o.accepted()) {
        const NodeId want = static_cast<NodeId>(w.size() - o.length);
        if (e != want) note(rec.nonterminal_name(A) + ": edge " + (e == kNoNode ? std::string("absent") : std::to_string(e)) + ", expected " + std::to_string(want));
      } else if (e != kNoNode) {
        note(rec.nonterminal_name(A) + ": edge " + std::to_string(e) + " present but recognition fails");
      }
    }
  };
  // Depth-first over all strings: every node's check only involves the
  // newest scaffold node and the newest recognition row.
  std::vector<std::size_t> next{0};
  check_top();
  while (!next.empty()) {
    if (w.size() == max_len || next.back() == sigma.size()) {
      next.pop_back();
      if (!w.empty()) {
        w.pop_back();
        x.pop_front();
        states.pop_back();
        s.truncate(s.size() - 1);
      }
      continue;
    }
    const char c = sigma[next.back()++];
    w.push_back(c);
    x.push_front(c);
    states.push_back(step_in_place(a, c, states.back(), s));
    check_top();
    next.push_back(0);
  }
  return report;
}

}  // namespace pegsa
