#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pegsa/automaton.hpp"
#include "pegsa/peg.hpp"

namespace pegsa {

// ---- grammars -----------------------------------------------------------

/// IAmPowerLLength over {a}: the strings a^(ℓ^n), n ≥ 0. Requires ℓ ≥ 2.
Grammar grammar_power_length(std::size_t ell);

/// S over {0,1}: palindromes whose length is a positive power of two.
Grammar grammar_sometimes_palindromes();

/// Sequence over {0,1,#,o}: (n)₂ʳ o (n)₂ # … (0)₂ʳ o (0)₂ #, n ≥ 0.
/// 'o' stands for the inner separator ∘.
Grammar grammar_counting();
/// The counting rules without the successor width check. Also accepts sequences in
/// which a block after (2^k - 1) holds k zeros, e.g. 0o0#1o1#0o0#.
Grammar grammar_counting_no_width_check();

// ---- table automata -----------------------------------------------------

/// A_ℓ over {a} with d = k = 2 and Γ = {⊠, □}; accepts a^(ℓ^n).
AutomatonDef automaton_power_length(std::size_t ell);

/// A_2 with input bits copied into labels; accepts the same language as
/// grammar_sometimes_palindromes (which is closed under reversal).
AutomatonDef automaton_sometimes_palindromes();

/// Decides the reversal of the counting language: #0o0 #1o1 #01o10 …
AutomatonDef automaton_counting();

/// Decides Kʳ = { x # w₁ # … # w_N : some w_i = xʳ } over {0,1,#}.
AutomatonDef automaton_K_reverse();

/// Decides H over {0,1,#}. Bits before the first # build the counting-block
/// scaffold with embedded binary trees, storing each bit in its node label;
/// bits after it walk a path from the first child of the last construction
/// node. The state accepts when the addressed stored bit is 1.
AutomatonDef automaton_H();

/// Prefix length ℓ(D) = D + 1 + Σ_{n=0}^{2^{D+1}-1} (2|n|₂ + 2).
std::size_t h_prefix_length(std::size_t depth);

/// |n|₂, with |0|₂ = 1.
std::size_t binary_length(std::size_t n);

/// (n)₂ʳ o (n)₂ #.
std::string counting_block(std::size_t n);

// ---- Turing machines ----------------------------------------------------

enum class Move { Left, Right, Stay };

/// One-tape machine on a one-way infinite tape; moving left at cell 0 stays.
/// Tape symbols are single characters; '#' is reserved.
struct TuringMachine {
  struct Action {
    std::string next;
    char write = '_';
    Move move = Move::Stay;
  };

  std::vector<std::string> states;
  std::string tape_alphabet;
  char blank = '_';
  std::string start;
  std::vector<std::string> accept;
  std::vector<std::string> halt;
  std::map<std::pair<std::string, char>, Action> transitions;

  bool is_halting(const std::string& q) const;
  /// Throws FormatError when the description is inconsistent.
  void validate() const;
};

TuringMachine turing_machine_from_json(std::string_view text);
std::string turing_machine_to_json(const TuringMachine& m);

/// The machine that halts immediately, so f(x) = x.
TuringMachine tm_identity();
/// Flips every input bit, then halts.
TuringMachine tm_negation();

struct Configuration {
  std::string state;
  std::string tape;
  std::size_t head = 0;
};

/// c_0 … c_t of m on x; c_0's tape is x, or one blank when x is empty, and the
/// tape grows by one blank when the head moves right off its end.
std::vector<Configuration> simulate(const TuringMachine& m, std::string_view x, std::size_t step_budget = 100'000);

/// Output of the final configuration: cells up to the last non-blank one.
std::string tm_output(const TuringMachine& m, std::string_view x, std::size_t step_budget = 100'000);

/// Exact number of $ needed: 2 + Σ_i (2|c_i| + 3).
std::size_t tm_dollar_count(const TuringMachine& m, std::string_view x, std::size_t step_budget = 100'000);

/// Automaton over {0,1,$} deciding Lʳ for L = { f(x) $^ℓ x : ℓ ≥ g(x) }.
AutomatonDef automaton_universal(const TuringMachine& m);

// ---- registry -----------------------------------------------------------

struct CorpusEntry {
  std::string name;
  std::string description;
  /// "grammar", "automaton" or "machine".
  std::string kind;
};

std::vector<CorpusEntry> corpus_entries();
/// Grammar text, automaton JSON or machine JSON for a named entry.
std::string corpus_emit(std::string_view name);
std::optional<Grammar> corpus_grammar(std::string_view name);
std::optional<AutomatonDef> corpus_automaton(std::string_view name);

}  // namespace pegsa
