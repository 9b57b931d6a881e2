#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "pegsa/peg.hpp"

namespace pegsa {

struct RecognizerOptions {
  /// Reuse (nonterminal, position) results within one query. The answer is the
  /// same either way; without it the procedure runs in exponential time on
  /// grammars such as the power-length family.
  bool memoize = true;
  /// Cap on interpreter frames; exceeding it raises ResourceError.
  std::size_t frame_cap = 1'000'000;
};

/// The recursive recognition procedure over a desugared grammar, run on an
/// explicit stack. Divergence is reported when a (nonterminal, position) pair is
/// re-entered while still active. Immutable after construction; queries may run
/// concurrently.
class Recognizer {
 public:
  explicit Recognizer(const Grammar& g, RecognizerOptions options = {});

  const Grammar& grammar() const { return grammar_; }
  std::size_t nonterminal_count() const { return names_.size(); }
  const std::string& nonterminal_name(std::size_t i) const { return names_.at(i); }
  std::size_t nonterminal_index(std::string_view name) const;

  /// Rec(A, input[pos..]).
  Outcome recognize(std::string_view nonterminal, std::string_view input, std::size_t pos = 0) const;
  /// Rec(e, input) for an arbitrary expression over the grammar's nonterminals.
  Outcome recognize(const Expr& e, std::string_view input) const;
  /// member iff Rec(S, input) consumes the whole input.
  Membership recognizes(std::string_view input) const;

  /// Rec(A, input[i..]) for every nonterminal A and position i, indexed
  /// [i * nonterminal_count() + A]. Queries share one memo table.
  std::vector<Outcome> all_outcomes(std::string_view input) const;

  /// Throws InputError when `input` has a symbol outside Σ.
  void check_input(std::string_view input) const;

  struct Node {
    ExprKind kind;
    char symbol;
    std::int32_t a;
    std::int32_t b;
  };

 private:
  class Session;
  friend class Session;
  friend class PrependRecognizer;

  std::int32_t compile(const Expr& e);
  std::int32_t ref_node(std::int32_t nt) const { return refs_[static_cast<std::size_t>(nt)]; }

  Grammar grammar_;
  RecognizerOptions options_;
  std::vector<std::string> names_;
  std::vector<std::int32_t> bodies_;
  std::vector<Node> nodes_;
  std::vector<std::int32_t> refs_;
  std::int32_t start_ = 0;
  bool alphabet_[256] = {};
};

/// Recognition on a string grown and shrunk at its front, as in a depth-first
/// walk over reversed strings. Outcomes for suffixes already present are kept,
/// so each push_front costs one row of new cells. Not thread-safe.
class PrependRecognizer {
 public:
  explicit PrependRecognizer(const Recognizer& r);
  ~PrependRecognizer();
  PrependRecognizer(const PrependRecognizer&) = delete;
  PrependRecognizer& operator=(const PrependRecognizer&) = delete;

  void push_front(char c);
  void pop_front();
  std::size_t size() const;
  /// Rec(A, current string), A by index.
  Outcome outcome(std::size_t nt);
  Membership membership();

 private:
  const Recognizer& r_;
  std::unique_ptr<Recognizer::Session> session_;
};

/// Rec(e, input) over grammar g (desugared on the fly when needed).
Outcome recognize(const Grammar& g, const Expr& e, std::string_view input);

/// Membership of input in L(g).
Membership recognizes(const Grammar& g, std::string_view input);

}  // namespace pegsa
