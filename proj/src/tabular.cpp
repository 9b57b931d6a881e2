#include "pegsa/tabular.hpp"

#include <cstdint>

#include "pegsa/errors.hpp"

namespace pegsa {

PackratTable::PackratTable(std::vector<std::string> nonterminals, std::size_t n)
    : names_(std::move(nonterminals)), n_(n), cells_(names_.size() * (n + 1)) {}

const TableCell& PackratTable::at(std::size_t pos, std::string_view nt) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == nt) return at(pos, i);
  throw ContractError("unknown nonterminal " + std::string(nt));
}

Outcome PackratTable::outcome(std::size_t pos, std::string_view nt) const {
  const TableCell& c = at(pos, nt);
  if (c.kind == TableCell::Kind::Consumed) return Outcome::consumed(c.length);
  return Outcome::failure();
}

namespace {

enum class Shape : std::uint8_t { Empty, Fail, Terminal, Not, And, Seq, Choice };

struct CompiledRule {
  Shape shape;
  char symbol = 0;
  std::size_t b = 0;
  std::size_t c = 0;
};

std::vector<CompiledRule> compile_rules(const Grammar& g) {
  std::vector<CompiledRule> out;
  auto idx = [&](const Expr& e) { return *g.index_of(e.name()); };
  for (const auto& r : g.rules()) {
    const Expr& e = r.body;
    switch (e.kind()) {
      case ExprKind::Empty: out.push_back({Shape::Empty}); break;
      case ExprKind::Fail: out.push_back({Shape::Fail}); break;
      case ExprKind::Terminal: out.push_back({Shape::Terminal, e.symbol()}); break;
      case ExprKind::Not: out.push_back({Shape::Not, 0, idx(e.child(0))}); break;
      case ExprKind::And: out.push_back({Shape::And, 0, idx(e.child(0))}); break;
      case ExprKind::Seq: out.push_back({Shape::Seq, 0, idx(e.left()), idx(e.right())}); break;
      case ExprKind::Choice: out.push_back({Shape::Choice, 0, idx(e.left()), idx(e.right())}); break;
      default: throw InternalError("normal form check missed a rule");
    }
  }
  return out;
}

}  // namespace

SuffixTable::SuffixTable(const Grammar& g) {
  if (!g.is_normalized()) throw ContractError("tabular recognition needs a grammar in binary normal form");
  g.validate();
  grammar_ = g;
  for (const auto& r : compile_rules(g)) rules_.push_back({static_cast<std::uint8_t>(r.shape), r.symbol, r.b, r.c});
  for (const auto& r : g.rules()) names_.push_back(r.name);
  visit_.resize(rules_.size());
  fill_row();
}

std::size_t SuffixTable::index_of(std::string_view nt) const {
  auto idx = grammar_.index_of(nt);
  if (!idx) throw ContractError("unknown nonterminal " + std::string(nt));
  return *idx;
}

void SuffixTable::push_front(char c) {
  if (!grammar_.has_terminal(c))
    throw InputError("symbol '" + std::string(1, c) + "' is not in the terminal alphabet");
  rev_.push_back(c);
  fill_row();
}

void SuffixTable::pop_front() {
  if (rev_.empty()) throw ContractError("pop_front on an empty string");
  rev_.pop_back();
  cells_.resize(cells_.size() - rules_.size());
  broken_.pop_back();
}

// Fills the row of suffix length L = size(): positions are counted from the
// end, so the cell at L − j is the one j symbols further right.
void SuffixTable::fill_row() {
  const std::size_t nts = rules_.size();
  const std::size_t L = rev_.size();
  cells_.resize(cells_.size() + nts);
  TableCell* row = cells_.data() + L * nts;
  bool broken = !broken_.empty() && broken_.back();
  std::fill(visit_.begin(), visit_.end(), Visit::New);
  auto read = [&](std::size_t nt) -> const TableCell& {
    const TableCell& c = row[nt];
    if (c.kind == TableCell::Kind::Broken) broken = true;
    return c;
  };
  auto consumed = [](const TableCell& c) { return c.kind == TableCell::Kind::Consumed; };
  // Requests nt in this row; returns true when the value is ready.
  auto need = [&](std::size_t nt) {
    if (visit_[nt] == Visit::Done) return true;
    if (visit_[nt] == Visit::OnStack) {
      row[nt] = TableCell{TableCell::Kind::Broken, 0};
      return true;
    }
    visit_[nt] = Visit::OnStack;
    stack_.push_back(Frame{nt, 0});
    return false;
  };
  auto finish = [&](std::size_t nt, TableCell value) {
    TableCell& c = row[nt];
    if (c.kind != TableCell::Kind::Broken) c = value;
    visit_[nt] = Visit::Done;
    stack_.pop_back();
  };

  for (std::size_t root = 0; root < nts; ++root) {
    if (visit_[root] != Visit::New) continue;
    visit_[root] = Visit::OnStack;
    stack_.push_back(Frame{root, 0});
    while (!stack_.empty()) {
      Frame& f = stack_.back();
      const std::size_t a = f.nt;
      const Rule& r = rules_[a];
      switch (static_cast<Shape>(r.shape)) {
        case Shape::Empty:
          finish(a, {TableCell::Kind::Consumed, 0});
          break;
        case Shape::Fail:
          finish(a, {TableCell::Kind::Fail, 0});
          break;
        case Shape::Terminal:
          if (L > 0 && rev_[L - 1] == r.symbol) finish(a, {TableCell::Kind::Consumed, 1});
          else finish(a, {TableCell::Kind::Fail, 0});
          break;
        case Shape::Not:
        case Shape::And:
          if (f.stage == 0) {
            f.stage = 1;
            if (!need(r.b)) break;
          }
          {
            bool ok = consumed(read(r.b));
            if (static_cast<Shape>(r.shape) == Shape::Not) ok = !ok;
            finish(a, ok ? TableCell{TableCell::Kind::Consumed, 0} : TableCell{TableCell::Kind::Fail, 0});
          }
          break;
        case Shape::Seq:
          if (f.stage == 0) {
            f.stage = 1;
            if (!need(r.b)) break;
          }
          if (f.stage == 1) {
            const TableCell left = read(r.b);
            if (!consumed(left)) {
              finish(a, {TableCell::Kind::Fail, 0});
              break;
            }
            if (left.length > 0) {
              const TableCell& right = cells_[(L - left.length) * nts + r.c];
              if (right.kind == TableCell::Kind::Broken) broken = true;
              if (consumed(right)) finish(a, {TableCell::Kind::Consumed, left.length + right.length});
              else finish(a, {TableCell::Kind::Fail, 0});
              break;
            }
            f.stage = 2;
            if (!need(r.c)) break;
          }
          {
            const TableCell& right = read(r.c);
            if (consumed(right)) finish(a, {TableCell::Kind::Consumed, right.length});
            else finish(a, {TableCell::Kind::Fail, 0});
          }
          break;
        case Shape::Choice:
          if (f.stage == 0) {
            f.stage = 1;
            if (!need(r.b)) break;
          }
          if (f.stage == 1) {
            const TableCell left = read(r.b);
            if (consumed(left)) {
              finish(a, left);
              break;
            }
            f.stage = 2;
            if (!need(r.c)) break;
          }
          {
            const TableCell right = read(r.c);
            if (consumed(right)) finish(a, right);
            else finish(a, {TableCell::Kind::Fail, 0});
          }
          break;
      }
    }
  }
  broken_.push_back(broken);
}

PackratTable recognize_tabular(const Grammar& g, std::string_view input) {
  SuffixTable t(g);
  const std::size_t n = input.size();
  for (std::size_t i = n; i-- > 0;) {
    try {
      t.push_front(input[i]);
    } catch (const InputError&) {
      throw InputError("symbol '" + std::string(1, input[i]) + "' at position " + std::to_string(i) +
                       " is not in the terminal alphabet");
    }
  }
  PackratTable table(t.nonterminals(), n);
  for (std::size_t pos = 0; pos <= n; ++pos)
    for (std::size_t a = 0; a < t.nonterminal_count(); ++a) table.mutable_at(pos, a) = t.cell(n - pos, a);
  if (t.broken_consulted()) table.set_broken_consulted();
  return table;
}

}  // namespace pegsa
