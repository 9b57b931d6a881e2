#include "pegsa/peg.hpp"

#include <algorithm>
#include <utility>

#include "pegsa/errors.hpp"

namespace pegsa {

Expr Expr::empty() { return Expr(ExprKind::Empty); }

Expr Expr::fail() { return Expr(ExprKind::Fail); }

Expr Expr::terminal(char symbol) {
  Expr e(ExprKind::Terminal);
  e.symbol_ = symbol;
  return e;
}

Expr Expr::ref(std::string name) {
  Expr e(ExprKind::Ref);
  e.text_ = std::move(name);
  return e;
}

Expr Expr::not_pred(Expr child) {
  Expr e(ExprKind::Not);
  e.children_.push_back(std::move(child));
  return e;
}

Expr Expr::and_pred(Expr child) {
  Expr e(ExprKind::And);
  e.children_.push_back(std::move(child));
  return e;
}

Expr Expr::seq(Expr left, Expr right) {
  Expr e(ExprKind::Seq);
  e.children_.push_back(std::move(left));
  e.children_.push_back(std::move(right));
  return e;
}

Expr Expr::choice(Expr left, Expr right) {
  Expr e(ExprKind::Choice);
  e.children_.push_back(std::move(left));
  e.children_.push_back(std::move(right));
  return e;
}

Expr Expr::seq(std::vector<Expr> parts) {
  if (parts.empty()) return empty();
  Expr acc = std::move(parts.back());
  for (std::size_t i = parts.size() - 1; i-- > 0;) acc = seq(std::move(parts[i]), std::move(acc));
  return acc;
}

Expr Expr::choice(std::vector<Expr> alternatives) {
  if (alternatives.empty()) return fail();
  Expr acc = std::move(alternatives.back());
  for (std::size_t i = alternatives.size() - 1; i-- > 0;)
    acc = choice(std::move(alternatives[i]), std::move(acc));
  return acc;
}

Expr Expr::star(Expr child) {
  Expr e(ExprKind::Star);
  e.children_.push_back(std::move(child));
  return e;
}

Expr Expr::plus(Expr child) {
  Expr e(ExprKind::Plus);
  e.children_.push_back(std::move(child));
  return e;
}

Expr Expr::any() { return Expr(ExprKind::AnyChar); }

Expr Expr::literal(std::string text) {
  Expr e(ExprKind::Literal);
  e.text_ = std::move(text);
  return e;
}

Expr Expr::repeat(Expr child, std::size_t count) {
  Expr e(ExprKind::Repeat);
  e.count_ = count;
  e.children_.push_back(std::move(child));
  return e;
}

bool Expr::is_sugar() const {
  switch (kind_) {
    case ExprKind::Star:
    case ExprKind::Plus:
    case ExprKind::AnyChar:
    case ExprKind::Literal:
    case ExprKind::Repeat:
      return true;
    default:
      return false;
  }
}

bool Expr::is_core() const {
  if (is_sugar()) return false;
  return std::all_of(children_.begin(), children_.end(), [](const Expr& c) { return c.is_core(); });
}

bool operator==(const Expr& a, const Expr& b) {
  return a.kind_ == b.kind_ && a.symbol_ == b.symbol_ && a.text_ == b.text_ &&
         a.count_ == b.count_ && a.children_ == b.children_;
}

Grammar::Grammar(std::string terminals, std::string start) : start_(std::move(start)) {
  set_terminals(terminals);
}

void Grammar::set_terminals(std::string_view terminals) {
  terminals_.clear();
  for (char c : terminals)
    if (terminals_.find(c) == std::string::npos) terminals_.push_back(c);
}

bool Grammar::has_terminal(char c) const { return terminals_.find(c) != std::string::npos; }

void Grammar::add_rule(std::string name, Expr body) {
  if (index_.count(name)) throw FormatError("duplicate rule for nonterminal '" + name + "'");
  if (start_.empty()) start_ = name;
  index_.emplace(name, rules_.size());
  rules_.push_back(Rule{std::move(name), std::move(body)});
}

void Grammar::set_rule(std::string_view name, Expr body) {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) throw ContractError("no rule for nonterminal '" + std::string(name) + "'");
  rules_[it->second].body = std::move(body);
}

bool Grammar::has_rule(std::string_view name) const { return index_.count(std::string(name)) != 0; }

const Expr& Grammar::rule(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) throw ContractError("no rule for nonterminal '" + std::string(name) + "'");
  return rules_[it->second].body;
}

std::optional<std::size_t> Grammar::index_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

namespace {

void validate_expr(const Grammar& g, const std::string& owner, const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Terminal:
      if (!g.has_terminal(e.symbol()))
        throw FormatError("rule '" + owner + "': terminal '" + std::string(1, e.symbol()) +
                          "' is not in the terminal alphabet");
      return;
    case ExprKind::Literal:
      for (char c : e.text())
        if (!g.has_terminal(c))
          throw FormatError("rule '" + owner + "': literal symbol '" + std::string(1, c) +
                            "' is not in the terminal alphabet");
      return;
    case ExprKind::Ref:
      if (!g.has_rule(e.name()))
        throw FormatError("rule '" + owner + "' references undefined nonterminal '" + e.name() + "'");
      return;
    case ExprKind::AnyChar:
      if (g.terminals().empty())
        throw FormatError("rule '" + owner + "': '.' requires a declared terminal alphabet");
      return;
    default:
      for (std::size_t i = 0; i < e.arity(); ++i) validate_expr(g, owner, e.child(i));
  }
}

bool is_ref(const Expr& e) { return e.kind() == ExprKind::Ref; }

}  // namespace

void Grammar::validate() const {
  if (rules_.empty()) throw FormatError("grammar has no rules");
  if (!has_rule(start_)) throw FormatError("start symbol '" + start_ + "' has no rule");
  for (const auto& r : rules_) validate_expr(*this, r.name, r.body);
}

bool Grammar::is_desugared() const {
  return std::all_of(rules_.begin(), rules_.end(), [](const Rule& r) { return r.body.is_core(); });
}

bool Grammar::is_normalized() const {
  for (const auto& r : rules_) {
    const Expr& e = r.body;
    switch (e.kind()) {
      case ExprKind::Empty:
      case ExprKind::Fail:
      case ExprKind::Terminal:
        break;
      case ExprKind::Not:
      case ExprKind::And:
        if (!is_ref(e.child(0))) return false;
        break;
      case ExprKind::Seq:
      case ExprKind::Choice:
        if (!is_ref(e.left()) || !is_ref(e.right())) return false;
        break;
      default:
        return false;
    }
  }
  return true;
}

bool operator==(const Grammar& a, const Grammar& b) {
  return a.terminals_ == b.terminals_ && a.start_ == b.start_ && a.rules_ == b.rules_;
}

std::string to_string(const Outcome& o) {
  switch (o.kind) {
    case Outcome::Kind::Consumed:
      return "consumed(" + std::to_string(o.length) + ")";
    case Outcome::Kind::Fail:
      return "fail";
    case Outcome::Kind::Diverges:
      return "diverges(" + o.nonterminal + "@" + std::to_string(o.position) + ")";
  }
  return "?";
}

std::string_view to_string(Membership m) {
  switch (m) {
    case Membership::Member:
      return "member";
    case Membership::Nonmember:
      return "nonmember";
    case Membership::Diverges:
      return "diverges";
  }
  return "?";
}

}  // namespace pegsa
