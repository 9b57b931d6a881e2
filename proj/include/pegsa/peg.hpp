#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pegsa {

enum class ExprKind {
  Empty,
  Fail,
  Terminal,
  Ref,
  Not,
  And,
  Seq,
  Choice,
  // Sugar; removed by desugar().
  Star,
  Plus,
  AnyChar,
  Literal,
  Repeat,
};

/// Parsing expression. A finite tree; nonterminals are referenced by name.
class Expr {
 public:
  static Expr empty();
  static Expr fail();
  static Expr terminal(char symbol);
  static Expr ref(std::string name);
  static Expr not_pred(Expr e);
  static Expr and_pred(Expr e);
  static Expr seq(Expr left, Expr right);
  static Expr choice(Expr left, Expr right);
  /// Right-nested sequence; an empty list yields ε.
  static Expr seq(std::vector<Expr> parts);
  /// Right-nested ordered choice; an empty list yields FAIL.
  static Expr choice(std::vector<Expr> alternatives);
  static Expr star(Expr e);
  static Expr plus(Expr e);
  static Expr any();
  static Expr literal(std::string text);
  static Expr repeat(Expr e, std::size_t count);

  ExprKind kind() const { return kind_; }
  char symbol() const { return symbol_; }
  const std::string& name() const { return text_; }
  const std::string& text() const { return text_; }
  std::size_t count() const { return count_; }
  std::size_t arity() const { return children_.size(); }
  const Expr& child(std::size_t i) const { return children_.at(i); }
  const Expr& left() const { return children_.at(0); }
  const Expr& right() const { return children_.at(1); }

  bool is_sugar() const;
  /// True when no sugar variant occurs anywhere in the tree.
  bool is_core() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  explicit Expr(ExprKind kind) : kind_(kind) {}

  ExprKind kind_ = ExprKind::Empty;
  char symbol_ = 0;
  std::string text_;
  std::size_t count_ = 0;
  std::vector<Expr> children_;
};

struct Rule {
  std::string name;
  Expr body;

  friend bool operator==(const Rule&, const Rule&) = default;
};

/// A parsing expression grammar: terminal alphabet, ordered rule list, start symbol.
class Grammar {
 public:
  Grammar() = default;
  explicit Grammar(std::string terminals, std::string start = {});

  /// Declared terminal alphabet, duplicates removed, declaration order kept.
  const std::string& terminals() const { return terminals_; }
  void set_terminals(std::string_view terminals);
  bool has_terminal(char c) const;

  const std::string& start() const { return start_; }
  void set_start(std::string name) { start_ = std::move(name); }

  std::span<const Rule> rules() const { return rules_; }
  std::size_t size() const { return rules_.size(); }

  /// Appends a rule; the first rule becomes the start symbol if none was set.
  void add_rule(std::string name, Expr body);
  /// Replaces the body of an existing rule.
  void set_rule(std::string_view name, Expr body);
  bool has_rule(std::string_view name) const;
  const Expr& rule(std::string_view name) const;
  std::optional<std::size_t> index_of(std::string_view name) const;

  /// Throws FormatError when an invariant is broken: undefined references,
  /// terminals outside Σ, missing start rule, AnyChar with empty Σ.
  void validate() const;

  bool is_desugared() const;
  /// Every rule is one of ε, FAIL, t, !B, &B, B C, B / C with B, C nonterminals.
  bool is_normalized() const;

  friend bool operator==(const Grammar&, const Grammar&);

 private:
  std::string terminals_;
  std::string start_;
  std::vector<Rule> rules_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Result of the recognition map on one (expression, input) pair.
struct Outcome {
  enum class Kind { Consumed, Fail, Diverges };

  Kind kind = Kind::Fail;
  std::size_t length = 0;
  // Set for Diverges: the re-entered (nonterminal, position) pair.
  std::string nonterminal;
  std::size_t position = 0;

  static Outcome consumed(std::size_t n) { return {Kind::Consumed, n, {}, 0}; }
  static Outcome failure() { return {Kind::Fail, 0, {}, 0}; }
  static Outcome diverges(std::string nt, std::size_t pos) {
    return {Kind::Diverges, 0, std::move(nt), pos};
  }

  bool accepted() const { return kind == Kind::Consumed; }
  bool failed() const { return kind == Kind::Fail; }
  bool diverged() const { return kind == Kind::Diverges; }

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

std::string to_string(const Outcome& o);

enum class Membership { Member, Nonmember, Diverges };

std::string_view to_string(Membership m);

/// Desugars every sugar variant: Star/Plus become fresh recursive rules,
/// AnyChar the ordered choice over Σ, Literal/Repeat explicit sequences.
Grammar desugar(const Grammar& g);

/// Rewrites a desugared grammar into binary normal form by introducing fresh
/// nonterminals named `Parent_<n>`. Original nonterminals keep their names
/// and recognition outcomes.
Grammar normalize(const Grammar& g);

}  // namespace pegsa
