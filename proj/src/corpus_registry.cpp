#include <functional>

#include "pegsa/automaton_io.hpp"
#include "pegsa/corpus.hpp"
#include "pegsa/errors.hpp"
#include "pegsa/grammar_text.hpp"

namespace pegsa {

namespace {

struct Builder {
  CorpusEntry entry;
  std::function<Grammar()> grammar;
  std::function<AutomatonDef()> automaton;
  std::function<TuringMachine()> machine;
};

const std::vector<Builder>& builders() {
  static const std::vector<Builder> list = {
      {{"p2", "a^(2^n): power-of-two lengths", "grammar"}, [] { return grammar_power_length(2); }, {}, {}},
      {{"p3", "a^(3^n): power-of-three lengths", "grammar"}, [] { return grammar_power_length(3); }, {}, {}},
      {{"sp", "palindromes of length 2^n, n >= 1", "grammar"}, grammar_sometimes_palindromes, {}, {}},
      {{"counting", "(n)2^r o (n)2 # ... (0)2^r o (0)2 #", "grammar"}, grammar_counting, {}, {}},
      {{"counting-no-width-check", "counting rules without the successor width check", "grammar"},
       grammar_counting_no_width_check, {}, {}},
      {{"a2", "A_2, accepts a^(2^n)", "automaton"}, {}, [] { return automaton_power_length(2); }, {}},
      {{"a3", "A_3, accepts a^(3^n)", "automaton"}, {}, [] { return automaton_power_length(3); }, {}},
      {{"sp-automaton", "palindromes of length 2^n, n >= 1", "automaton"}, {}, automaton_sometimes_palindromes, {}},
      {{"counting-automaton", "reverse of the counting language", "automaton"}, {}, automaton_counting, {}},
      {{"k-reverse", "x # w1 # ... # wN with some wi = x^r", "automaton"}, {}, automaton_K_reverse, {}},
      {{"h", "binary trees over the counting scaffold, addressed after #", "automaton"}, {}, automaton_H, {}},
      {{"universal-identity", "TM simulation for the identity machine", "automaton"},
       {},
       [] { return automaton_universal(tm_identity()); },
       {}},
      {{"universal-negation", "TM simulation for the bit-negation machine", "automaton"},
       {},
       [] { return automaton_universal(tm_negation()); },
       {}},
      {{"tm-identity", "one-tape machine computing f(x) = x", "machine"}, {}, {}, tm_identity},
      {{"tm-negation", "one-tape machine flipping every bit", "machine"}, {}, {}, tm_negation},
  };
  return list;
}

const Builder* find(std::string_view name) {
  for (const auto& b : builders()) {
    if (b.entry.name == name) return &b;
  }
  return nullptr;
}

}  // namespace

std::vector<CorpusEntry> corpus_entries() {
  std::vector<CorpusEntry> out;
  for (const auto& b : builders()) out.push_back(b.entry);
  return out;
}

std::string corpus_emit(std::string_view name) {
  const Builder* b = find(name);
  if (!b) throw InputError("unknown corpus entry '" + std::string(name) + "'");
  if (b->grammar) return print_grammar(b->grammar());
  if (b->automaton) return automaton_to_json(b->automaton());
  return turing_machine_to_json(b->machine());
}

std::optional<Grammar> corpus_grammar(std::string_view name) {
  const Builder* b = find(name);
  if (!b || !b->grammar) return std::nullopt;
  return b->grammar();
}

std::optional<AutomatonDef> corpus_automaton(std::string_view name) {
  const Builder* b = find(name);
  if (!b || !b->automaton) return std::nullopt;
  return b->automaton();
}

}  // namespace pegsa
