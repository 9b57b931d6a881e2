#include <doctest.h>

#include <random>
#include <set>

#include "pegsa/analysis.hpp"
#include "pegsa/automaton_io.hpp"
#include "pegsa/corpus.hpp"
#include "pegsa/errors.hpp"
#include "pegsa/grammar_text.hpp"
#include "pegsa/recognize.hpp"
#include "support.hpp"

using namespace pegsa;
using namespace pegsa::testing;

namespace {

bool member(const Grammar& g, std::string_view x) { return recognizes(g, x) == Membership::Member; }

// Structural symbols of the H scaffold labels "c/b" for nodes [from, to).
std::string structure(const AutomatonDef& h, const Scaffold& s, NodeId from, NodeId to) {
  std::string out;
  for (NodeId v = from; v < to; ++v) out += h.label_name(s.label(v))[0];
  return out;
}

}  // namespace

TEST_SUITE("corpus") {
  TEST_CASE("power-length grammars") {
    const Grammar p2 = grammar_power_length(2);
    std::vector<std::size_t> lengths;
    for (std::size_t n = 0; n <= 64; ++n)
      if (member(p2, std::string(n, 'a'))) lengths.push_back(n);
    CHECK(lengths == std::vector<std::size_t>{1, 2, 4, 8, 16, 32, 64});

    const Grammar p3 = grammar_power_length(3);
    CHECK(recognize(p3, Expr::ref("Helper"), "aaa") == Outcome::consumed(3));
    CHECK(recognize(p3, Expr::ref("Helper"), "aaaaa") == Outcome::consumed(3));
    CHECK(recognize(p3, Expr::ref("Helper"), "aa").failed());
    CHECK_THROWS_AS(grammar_power_length(1), ContractError);
    CHECK_THROWS_AS(automaton_power_length(1), ContractError);
  }

  TEST_CASE("palindrome grammar") {
    const Grammar sp = grammar_sometimes_palindromes();
    for (const char* x : {"00", "11", "0110", "10011001"}) CHECK(member(sp, x));
    for (const char* x : {"", "0", "01", "0100", "010", "011110"}) CHECK_FALSE(member(sp, x));
  }

  TEST_CASE("counting grammar") {
    const Grammar c = grammar_counting();
    CHECK(member(c, "0o0#"));
    CHECK(member(c, "1o1#0o0#"));
    CHECK(member(c, "01o10#1o1#0o0#"));
    CHECK_FALSE(member(c, "10o10#1o1#0o0#"));
    CHECK(member(c, ascii_circle("1\xE2\x88\x98" "1#0\xE2\x88\x98" "0#")));
    for (std::size_t n = 0; n <= 6; ++n) CHECK(member(c, oracle_counting_member(n)));
  }

  TEST_CASE("the counting rules without a width check drop a carried-out digit") {
    const Grammar unchecked = grammar_counting_no_width_check();
    const Grammar repaired = grammar_counting();
    // 0o0# after 1o1# stands for 10 with its leading digit cut off.
    for (const char* x : {"0o0#1o1#0o0#", "1o1#01o10#1o1#0o0#", "00o00#11o11#01o10#1o1#0o0#"}) {
      CHECK(member(unchecked, x));
      CHECK_FALSE(member(repaired, x));
      CHECK_FALSE(oracle_counting(x));
    }
    for (std::size_t n = 0; n <= 6; ++n) CHECK(member(unchecked, oracle_counting_member(n)));
    // Everything the repaired grammar accepts, the unchecked one accepts too.
    Recognizer a(unchecked), b(repaired);
    for (const auto& x : all_strings("01#o", 7))
      if (b.recognizes(x) == Membership::Member) CHECK(a.recognizes(x) == Membership::Member);
  }

  TEST_CASE("corpus grammars never diverge on short inputs") {
    for (const Grammar& g : {grammar_power_length(2), grammar_power_length(3), grammar_sometimes_palindromes(),
                             grammar_counting(), grammar_counting_no_width_check()}) {
      Recognizer rec(g);
      const std::size_t len = g.terminals().size() == 1 ? 81 : g.terminals().size() == 2 ? 12 : 7;
      for (const auto& x : all_strings(g.terminals(), len)) REQUIRE(rec.recognizes(x) != Membership::Diverges);
    }
  }

  TEST_CASE("power-length automata") {
    const AutomatonDef a2 = automaton_power_length(2);
    const RunTrace t = run(a2, std::string(10, 'a'));
    CHECK(t.scaffold.edge(8, 1) == 1);
    CHECK(a2.label_name(t.scaffold.label(1)) == "⊠");
    CHECK(a2.degree() == 2);
    CHECK(a2.depth() == 2);
    CHECK(a2.state_count() == 1 + 2 + 1 + 1);
    for (std::size_t ell : {2u, 3u, 4u}) {
      const AutomatonDef a = automaton_power_length(ell);
      CHECK(a.state_count() == 1 + ell + 2 * (ell - 1));
      for (std::size_t n = 0; n <= 81; ++n)
        CHECK(accepts(a, std::string(n, 'a')) == oracle_power_length(ell, std::string(n, 'a')));
    }
  }

  TEST_CASE("palindrome automaton") {
    const AutomatonDef a = automaton_sometimes_palindromes();
    CHECK(accepts(a, "0110"));
    CHECK(accepts(a, "00"));
    CHECK_FALSE(accepts(a, "01"));
    CHECK(cross_check(grammar_sometimes_palindromes(), a, 16).ok());
  }

  TEST_CASE("counting automaton") {
    const AutomatonDef a = automaton_counting();
    CHECK(accepts(a, "#0o0"));
    CHECK(accepts(a, reversed(oracle_counting_member(2))));
    CHECK_FALSE(accepts(a, "##"));
    std::mt19937 rng(3);
    for (std::size_t n = 0; n <= 6; ++n) {
      const std::string x = oracle_counting_member(n);
      CHECK(accepts(a, reversed(x)));
      for (int i = 0; i < 20; ++i) {
        std::string y = x;
        const std::size_t at = rng() % y.size();
        if (y[at] != '0' && y[at] != '1') continue;
        y[at] = y[at] == '0' ? '1' : '0';
        CHECK_FALSE(accepts(a, reversed(y)));
      }
    }
    CHECK(cross_check(grammar_counting(), a, 9).ok());
  }

  TEST_CASE("K reverse automaton") {
    const AutomatonDef a = automaton_K_reverse();
    CHECK(accepts(a, "01#10"));
    CHECK_FALSE(accepts(a, "0#1"));
    CHECK(accepts(a, "0#0"));
    CHECK(accepts(a, "10#11#01"));
    CHECK_FALSE(accepts(a, "10#11#10"));
    for (const auto& x : all_strings("01#", 10)) CHECK(accepts(a, x) == oracle_K_reverse(x));
  }

  TEST_CASE("H prefix lengths") {
    CHECK(h_prefix_length(1) == 22);
    CHECK(h_prefix_length(2) == 55);
    CHECK(binary_length(0) == 1);
    CHECK(binary_length(8) == 4);
    CHECK(counting_block(0) == "0o0#");
    CHECK(counting_block(2) == "01o10#");
    CHECK(counting_block(6) == "011o110#");
  }

  TEST_CASE("H builds counting blocks") {
    const AutomatonDef h = automaton_H();
    const RunTrace t = run(h, std::string(h_block_start(41) - 1, '0'));
    for (std::size_t n = 0; n < 41; ++n) {
      const auto from = static_cast<NodeId>(h_block_start(n));
      const auto to = static_cast<NodeId>(h_block_start(n + 1));
      CHECK(structure(h, t.scaffold, from, to) == counting_block(n));
    }
    // 0^D 1 o 1 0^D # is the block numbered 2^D.
    for (std::size_t D : {1u, 2u, 3u}) {
      const std::size_t n = std::size_t{1} << D;
      const std::string want = std::string(D, '0') + "1o1" + std::string(D, '0') + "#";
      CHECK(structure(h, t.scaffold, static_cast<NodeId>(h_block_start(n)), static_cast<NodeId>(h_block_start(n + 1))) ==
            want);
    }
    for (std::size_t n = 1; n <= 32; ++n) CHECK(h_invariant_violations(t.scaffold, n).empty());
  }

  TEST_CASE("H tree at the end of the prefix") {
    for (std::size_t D : {1u, 2u}) {
      const HAddressing addr = h_addressing(D);
      const RunTrace t = run(automaton_H(), std::string(addr.ell, '0'));
      CHECK(bin_depth(t.scaffold, addr.root) >= D);
      const std::set<NodeId> distinct(addr.leaves.begin(), addr.leaves.end());
      CHECK(distinct.size() == (std::size_t{1} << D));
      CHECK(addr.prefixes.size() == (std::size_t{1} << (std::size_t{1} << D)));
    }
  }

  TEST_CASE("H reads the addressed bit after #") {
    const AutomatonDef h = automaton_H();
    std::mt19937 rng(11);
    for (std::size_t D : {1u, 2u}) {
      const HAddressing addr = h_addressing(D);
      for (int trial = 0; trial < 20; ++trial) {
        std::string z(addr.ell, '0');
        for (char& c : z) c = rng() % 2 ? '1' : '0';
        CHECK(accepts(h, z + "#") == (z[static_cast<std::size_t>(addr.root) - 1] == '1'));
        for (std::size_t i = 0; i < addr.leaves.size(); ++i) {
          std::string path;
          for (std::size_t b = D; b-- > 0;) path += (i >> b & 1) ? '1' : '0';
          CHECK(accepts(h, z + "#" + path) == (z[static_cast<std::size_t>(addr.leaves[i]) - 1] == '1'));
        }
      }
    }
    CHECK_FALSE(accepts(h, "#"));
    CHECK_FALSE(accepts(h, "0##"));
  }

  TEST_CASE("Turing machines") {
    const TuringMachine id = tm_identity(), neg = tm_negation();
    CHECK(tm_output(id, "0110") == "0110");
    CHECK(tm_output(neg, "0110") == "1001");
    CHECK(tm_output(neg, "") == "");
    const auto configs = simulate(neg, "01");
    CHECK(configs.front().tape == "01");
    CHECK(configs.front().head == 0);
    CHECK(configs.back().state == "h");
    CHECK(tm_dollar_count(id, "0") == 2 + (2 * 1 + 3));

    CHECK(turing_machine_from_json(turing_machine_to_json(neg)).transitions.size() == neg.transitions.size());
    CHECK(turing_machine_to_json(turing_machine_from_json(turing_machine_to_json(neg))) == turing_machine_to_json(neg));

    TuringMachine loop = neg;
    loop.transitions[{"s", '_'}] = {"s", '_', Move::Stay};
    CHECK_THROWS_AS(simulate(loop, "0", 1000), ResourceError);
    TuringMachine stuck = neg;
    stuck.transitions.erase({"s", '1'});
    CHECK_THROWS_AS(simulate(stuck, "1"), ContractError);
    TuringMachine hash = neg;
    hash.tape_alphabet += '#';
    CHECK_THROWS_AS(hash.validate(), FormatError);
    TuringMachine busy = neg;
    busy.transitions[{"h", '0'}] = {"h", '0', Move::Stay};
    CHECK_THROWS_AS(busy.validate(), FormatError);
    CHECK_THROWS_AS(turing_machine_from_json("{\"states\": 1}"), FormatError);
  }

  TEST_CASE("universal automaton") {
    for (const TuringMachine& m : {tm_identity(), tm_negation()}) {
      const AutomatonDef a = automaton_universal(m);
      for (const auto& x : all_strings("01", 4)) {
        const std::string f = tm_output(m, x);
        const std::size_t g = tm_dollar_count(m, x);
        for (std::size_t j : {0u, 1u, 5u}) CHECK(accepts(a, reversed(f + std::string(g + j, '$') + x)));
        for (std::size_t l = 0; l < g; ++l) CHECK_FALSE(accepts(a, reversed(f + std::string(l, '$') + x)));
        // A wrong output is never accepted.
        const std::string wrong = f + "0";
        CHECK_FALSE(accepts(a, reversed(wrong + std::string(g + 1, '$') + x)));
      }
    }
    const AutomatonDef neg = automaton_universal(tm_negation());
    const std::size_t g = tm_dollar_count(tm_negation(), "1");
    CHECK(accepts(neg, reversed("0" + std::string(g, '$') + "1")));
    CHECK_FALSE(accepts(neg, reversed("1" + std::string(g, '$') + "1")));
  }

  TEST_CASE("registry") {
    std::set<std::string> names;
    for (const auto& e : corpus_entries()) {
      CHECK(names.insert(e.name).second);
      const std::string text = corpus_emit(e.name);
      if (e.kind == "grammar") {
        CHECK(parse_grammar(text) == *corpus_grammar(e.name));
      } else if (e.kind == "automaton") {
        CHECK(automaton_from_json(text) == *corpus_automaton(e.name));
      } else {
        CHECK(e.kind == "machine");
        CHECK_NOTHROW(turing_machine_from_json(text));
      }
    }
    CHECK(*corpus_grammar("p2") == grammar_power_length(2));
    CHECK(*corpus_automaton("a3") == automaton_power_length(3));
    CHECK_FALSE(corpus_grammar("a2").has_value());
    CHECK_THROWS(corpus_emit("nope"));
  }
}
