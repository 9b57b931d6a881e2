#include "pegsa/recognize.hpp"

#include <memory>

#include "pegsa/errors.hpp"

namespace pegsa {

namespace {

enum class Res : std::uint8_t { Consumed, Fail, Diverges };

enum class Mark : std::uint8_t { Unknown, Active, Done };

struct Cell {
  Mark mark = Mark::Unknown;
  Res res = Res::Fail;
  std::uint32_t len = 0;
};

struct Frame {
  std::int32_t node;
  std::uint32_t pos;
  std::uint32_t saved;
  std::uint8_t stage;
};

}  // namespace

// Positions are tracked as remaining suffix lengths and the input is held
// reversed, so memo cells stay valid when symbols are prepended.
class Recognizer::Session {
 public:
  explicit Session(const Recognizer& r) : r_(r), cells_(r.names_.size()) {}
  Session(const Recognizer& r, std::string_view input)
      : r_(r), rev_(input.rbegin(), input.rend()), cells_(r.names_.size() * (input.size() + 1)) {}

  std::size_t size() const { return rev_.size(); }

  void push_front(char c) {
    rev_.push_back(c);
    cells_.resize(cells_.size() + r_.names_.size());
  }

  void pop_front() {
    rev_.pop_back();
    cells_.resize(cells_.size() - r_.names_.size());
  }

  Outcome eval(std::int32_t root, std::size_t start) {
    const auto& nodes = r_.nodes_;
    const std::size_t nts = r_.names_.size();
    stack_.clear();
    stack_.push_back(Frame{root, static_cast<std::uint32_t>(rev_.size() - start), 0, 0});
    Res res = Res::Fail;
    std::uint32_t len = 0;

    // f.pos is the number of symbols left from the frame's position.
    while (!stack_.empty()) {
      Frame& f = stack_.back();
      const Node& nd = nodes[static_cast<std::size_t>(f.node)];
      switch (nd.kind) {
        case ExprKind::Empty:
          res = Res::Consumed;
          len = 0;
          stack_.pop_back();
          break;
        case ExprKind::Fail:
          res = Res::Fail;
          stack_.pop_back();
          break;
        case ExprKind::Terminal:
          if (f.pos > 0 && rev_[f.pos - 1] == nd.symbol) {
            res = Res::Consumed;
            len = 1;
          } else {
            res = Res::Fail;
          }
          stack_.pop_back();
          break;
        case ExprKind::Ref: {
          Cell& c = cells_[f.pos * nts + static_cast<std::size_t>(nd.a)];
          if (f.stage == 0) {
            if (c.mark == Mark::Done) {
              res = c.res;
              len = c.len;
              stack_.pop_back();
            } else if (c.mark == Mark::Active) {
              return diverge(static_cast<std::size_t>(nd.a), f.pos);
            } else {
              c.mark = Mark::Active;
              f.stage = 1;
              push(r_.bodies_[static_cast<std::size_t>(nd.a)], f.pos);
            }
          } else {
            if (r_.options_.memoize) {
              c.mark = Mark::Done;
              c.res = res;
              c.len = len;
            } else {
              c.mark = Mark::Unknown;
            }
            stack_.pop_back();
          }
          break;
        }
        case ExprKind::Not:
          if (f.stage == 0) {
            f.stage = 1;
            push(nd.a, f.pos);
          } else {
            if (res == Res::Consumed) {
              res = Res::Fail;
            } else {
              res = Res::Consumed;
              len = 0;
            }
            stack_.pop_back();
          }
          break;
        case ExprKind::And:
          if (f.stage == 0) {
            f.stage = 1;
            push(nd.a, f.pos);
          } else {
            if (res == Res::Consumed) len = 0;
            stack_.pop_back();
          }
          break;
        case ExprKind::Seq:
          if (f.stage == 0) {
            f.stage = 1;
            push(nd.a, f.pos);
          } else if (f.stage == 1) {
            if (res != Res::Consumed) {
              stack_.pop_back();
            } else {
              f.stage = 2;
              f.saved = len;
              push(nd.b, f.pos - len);
            }
          } else {
            if (res == Res::Consumed) len += f.saved;
            stack_.pop_back();
          }
          break;
        case ExprKind::Choice:
          if (f.stage == 0) {
            f.stage = 1;
            push(nd.a, f.pos);
          } else if (f.stage == 1 && res == Res::Fail) {
            f.stage = 2;
            push(nd.b, f.pos);
          } else {
            stack_.pop_back();
          }
          break;
        default:
          throw InternalError("recognizer met a sugar node");
      }
    }
    if (res == Res::Consumed) return Outcome::consumed(len);
    return Outcome::failure();
  }

 private:
  void push(std::int32_t node, std::uint32_t rem) {
    if (stack_.size() >= r_.options_.frame_cap)
      throw ResourceError("recognition exceeded " + std::to_string(r_.options_.frame_cap) + " frames");
    stack_.push_back(Frame{node, rem, 0, 0});
  }

  // Unwinds the stack, clearing Active marks so later queries in this
  // session start from a consistent table.
  Outcome diverge(std::size_t nt, std::size_t rem) {
    const std::size_t nts = r_.names_.size();
    for (const Frame& f : stack_) {
      const Node& nd = r_.nodes_[static_cast<std::size_t>(f.node)];
      if (nd.kind == ExprKind::Ref && f.stage == 1)
        cells_[f.pos * nts + static_cast<std::size_t>(nd.a)].mark = Mark::Unknown;
    }
    stack_.clear();
    return Outcome::diverges(r_.names_[nt], rev_.size() - rem);
  }

  const Recognizer& r_;
  std::string rev_;
  std::vector<Cell> cells_;
  std::vector<Frame> stack_;
};

Recognizer::Recognizer(const Grammar& g, RecognizerOptions options)
    : grammar_(desugar(g)), options_(options) {
  grammar_.validate();
  for (const auto& r : grammar_.rules()) names_.push_back(r.name);
  bodies_.resize(names_.size());
  for (std::size_t i = 0; i < names_.size(); ++i)
    bodies_[i] = compile(grammar_.rules()[i].body);
  // Queries enter through a Ref node so the (A, pos) pair is marked active.
  for (std::size_t i = 0; i < names_.size(); ++i) {
    nodes_.push_back(Node{ExprKind::Ref, 0, static_cast<std::int32_t>(i), -1});
    refs_.push_back(static_cast<std::int32_t>(nodes_.size() - 1));
  }
  start_ = static_cast<std::int32_t>(nonterminal_index(grammar_.start()));
  for (char c : grammar_.terminals()) alphabet_[static_cast<unsigned char>(c)] = true;
}

std::int32_t Recognizer::compile(const Expr& e) {
  Node nd{e.kind(), e.symbol(), -1, -1};
  switch (e.kind()) {
    case ExprKind::Ref:
      nd.a = static_cast<std::int32_t>(nonterminal_index(e.name()));
      break;
    case ExprKind::Not:
    case ExprKind::And:
      nd.a = compile(e.child(0));
      break;
    case ExprKind::Seq:
    case ExprKind::Choice:
      nd.a = compile(e.left());
      nd.b = compile(e.right());
      break;
    case ExprKind::Empty:
    case ExprKind::Fail:
    case ExprKind::Terminal:
      break;
    default:
      throw ContractError("recognizer needs a desugared expression");
  }
  nodes_.push_back(nd);
  return static_cast<std::int32_t>(nodes_.size() - 1);
}

std::size_t Recognizer::nonterminal_index(std::string_view name) const {
  auto idx = grammar_.index_of(name);
  if (!idx) throw ContractError("unknown nonterminal " + std::string(name));
  return *idx;
}

void Recognizer::check_input(std::string_view input) const {
  for (std::size_t i = 0; i < input.size(); ++i) {
    if (!alphabet_[static_cast<unsigned char>(input[i])])
      throw InputError("symbol '" + std::string(1, input[i]) + "' at position " + std::to_string(i) +
                       " is not in the terminal alphabet");
  }
}

Outcome Recognizer::recognize(std::string_view nonterminal, std::string_view input, std::size_t pos) const {
  check_input(input);
  if (pos > input.size()) throw ContractError("position past end of input");
  Session s(*this, input);
  return s.eval(ref_node(static_cast<std::int32_t>(nonterminal_index(nonterminal))), pos);
}

Outcome Recognizer::recognize(const Expr& e, std::string_view input) const {
  Grammar g = grammar_;
  std::string name = "Query";
  for (std::size_t n = 1; g.has_rule(name); ++n) name = "Query_" + std::to_string(n);
  std::string start = g.start();
  g.add_rule(name, e);
  g.set_start(start);
  Recognizer r(g, options_);
  return r.recognize(name, input);
}

Membership Recognizer::recognizes(std::string_view input) const {
  check_input(input);
  Session s(*this, input);
  Outcome o = s.eval(ref_node(start_), 0);
  if (o.diverged()) return Membership::Diverges;
  return o.accepted() && o.length == input.size() ? Membership::Member : Membership::Nonmember;
}

std::vector<Outcome> Recognizer::all_outcomes(std::string_view input) const {
  check_input(input);
  Session s(*this, input);
  std::vector<Outcome> out;
  out.reserve((input.size() + 1) * names_.size());
  for (std::size_t i = 0; i <= input.size(); ++i)
    for (std::size_t a = 0; a < names_.size(); ++a)
      out.push_back(s.eval(ref_node(static_cast<std::int32_t>(a)), i));
  return out;
}

PrependRecognizer::PrependRecognizer(const Recognizer& r) : r_(r), session_(std::make_unique<Recognizer::Session>(r)) {
  if (!r.options_.memoize) throw ContractError("prepend recognition needs memoization");
}

PrependRecognizer::~PrependRecognizer() = default;

void PrependRecognizer::push_front(char c) {
  if (!r_.alphabet_[static_cast<unsigned char>(c)])
    throw InputError("symbol '" + std::string(1, c) + "' is not in the terminal alphabet");
  session_->push_front(c);
}

void PrependRecognizer::pop_front() {
  if (session_->size() == 0) throw ContractError("pop_front on an empty string");
  session_->pop_front();
}

std::size_t PrependRecognizer::size() const { return session_->size(); }

Outcome PrependRecognizer::outcome(std::size_t nt) {
  return session_->eval(r_.ref_node(static_cast<std::int32_t>(nt)), 0);
}

Membership PrependRecognizer::membership() {
  Outcome o = session_->eval(r_.ref_node(r_.start_), 0);
  if (o.diverged()) return Membership::Diverges;
  return o.accepted() && o.length == session_->size() ? Membership::Member : Membership::Nonmember;
}

Outcome recognize(const Grammar& g, const Expr& e, std::string_view input) {
  return Recognizer(g).recognize(e, input);
}

Membership recognizes(const Grammar& g, std::string_view input) {
  return Recognizer(g).recognizes(input);
}

}  // namespace pegsa
