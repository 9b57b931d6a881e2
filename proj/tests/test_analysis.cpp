#include <doctest.h>

#include <nlohmann/json.hpp>
#include <map>
#include <random>
#include <set>

#include "pegsa/analysis.hpp"
#include "pegsa/corpus.hpp"
#include "pegsa/errors.hpp"
#include "pegsa/grammar_text.hpp"
#include "support.hpp"

using namespace pegsa;
using namespace pegsa::testing;

namespace {

Decider constant(bool value) {
  return {"constant", "01", [value](std::string_view) { return value; }};
}

std::vector<std::string> unary(std::initializer_list<std::size_t> lengths) {
  std::vector<std::string> out;
  for (std::size_t n : lengths) out.emplace_back(n, 'a');
  return out;
}

}  // namespace

TEST_SUITE("analysis") {
  TEST_CASE("oracles") {
    CHECK(oracle_power_length(2, std::string(8, 'a')));
    CHECK_FALSE(oracle_power_length(2, std::string(6, 'a')));
    CHECK_FALSE(oracle_power_length(3, ""));
    CHECK(oracle_power_length(3, "a"));
    CHECK_FALSE(oracle_power_length(2, "ab"));
    CHECK(oracle_sometimes_palindrome("0110"));
    CHECK_FALSE(oracle_sometimes_palindrome("010"));
    CHECK_FALSE(oracle_sometimes_palindrome(""));
    CHECK(oracle_counting_member(0) == "0o0#");
    CHECK(oracle_counting_member(2) == "01o10#1o1#0o0#");
    CHECK(oracle_counting_member(3) == "11o11#01o10#1o1#0o0#");
    CHECK(oracle_counting("1o1#0o0#"));
    CHECK_FALSE(oracle_counting("0o0#1o1#0o0#"));
    CHECK(oracle_K("01#11#10"));
    CHECK_FALSE(oracle_K("01#11#01"));
    CHECK_FALSE(oracle_K("01"));
    CHECK(oracle_K_reverse("01#11#10"));
    CHECK(oracle_K_reverse(reversed("01#11#10")) == oracle_K("01#11#10"));

    std::set<std::string> names;
    for (const auto& d : oracle_suite()) names.insert(d.name);
    CHECK(names == std::set<std::string>{"p2", "p3", "sp", "counting", "k", "k-reverse"});
    CHECK(find_oracle("sp").has_value());
    CHECK_FALSE(find_oracle("nope").has_value());
  }

  TEST_CASE("corpus grammars agree with their oracles") {
    const Decider p2 = grammar_decider(grammar_power_length(2)), p3 = grammar_decider(grammar_power_length(3));
    for (std::size_t n = 0; n <= 81; ++n) {
      const std::string x(n, 'a');
      CHECK(p2.member(x) == oracle_power_length(2, x));
      CHECK(p3.member(x) == oracle_power_length(3, x));
    }
    const Decider counting = grammar_decider(grammar_counting());
    for (const auto& x : all_strings("01#o", 8)) CHECK(counting.member(x) == oracle_counting(x));
  }

  TEST_CASE("enumerating members") {
    CHECK(enumerate_members(grammar_decider(grammar_power_length(2)), 16) == unary({1, 2, 4, 8, 16}));
    CHECK(enumerate_members(constant(false), 6).empty());
    CHECK(enumerate_members(constant(true), 2) == std::vector<std::string>{"", "0", "1", "00", "01", "10", "11"});
    // Length 14 would take 4^14 membership calls; the n = 2 string is
    // checked directly instead.
    const Decider counting = grammar_decider(grammar_counting());
    CHECK(enumerate_members(counting, 10) ==
          std::vector<std::string>{oracle_counting_member(0), oracle_counting_member(1)});
    CHECK(counting.member(oracle_counting_member(2)));
    CHECK_THROWS_AS(enumerate_members(constant(true), 40), ResourceError);
    CHECK_THROWS_AS(enumerate_members(grammar_decider(parse_grammar("A <- A 'a' / 'a'\n")), 2), TotalityError);
    const Decider a2 = automaton_decider(automaton_power_length(2), true);
    CHECK(enumerate_members(a2, 16) == unary({1, 2, 4, 8, 16}));
  }

  TEST_CASE("cross-checking a grammar against an automaton") {
    const auto ok = cross_check(grammar_power_length(2), automaton_power_length(2), 16);
    CHECK(ok.ok());
    CHECK(ok.checked == 17);

    const auto bad = cross_check(grammar_power_length(2), automaton_power_length(3), 9);
    REQUIRE_FALSE(bad.ok());
    CHECK(bad.counterexamples.front() == "aa");
    CHECK(bad.counterexamples == unary({2, 3, 4, 8, 9}));

    CHECK(cross_check(grammar_sometimes_palindromes(), automaton_sometimes_palindromes(), 12).ok());
    const auto capped = cross_check(grammar_power_length(2), automaton_power_length(3), 9, 2);
    CHECK(capped.counterexamples.size() == 2);
    CHECK(capped.suppressed == 3);

    AutomatonDef holey("a", 1, 0);
    const StateId q = holey.add_state("q", true);
    holey.add_label("g");
    holey.add_rule({q, 'a', Pattern::node(LabelPattern::empty()), {q, 0, {PathSpec::lambda()}}});
    try {
      (void)cross_check(grammar_power_length(2), holey, 3);
      FAIL("expected a transition hole");
    } catch (const TransitionHole& e) {
      CHECK(std::string(e.what()).find("aa") != std::string::npos);
    }
  }

  TEST_CASE("equivalence classes") {
    const Decider k = *find_oracle("k");
    SUBCASE("K at D = 1 over well-formed prefixes plus one malformed") {
      std::vector<std::string> prefixes;
      for (const char* a : {"0", "1"})
        for (const char* b : {"0", "1"}) prefixes.push_back(std::string(a) + "#" + b + "#");
      CHECK(equivalence_classes(k, 4, 1, &prefixes, std::string("01")).classes == 3);
      prefixes.push_back("####");
      const ClassReport r = equivalence_classes(k, 4, 1, &prefixes, std::string("01"));
      CHECK(r.classes == 4);
      CHECK(r.prefixes == 5);
      CHECK(r.suffixes == 2);
    }
    SUBCASE("K at D = 1 over all prefixes") {
      CHECK(equivalence_classes(k, 4, 1, nullptr, std::string("01")).classes == 4);
    }
    SUBCASE("the automaton for the reversed language gives the same count") {
      const Decider kr = automaton_decider(automaton_K_reverse(), true);
      CHECK(equivalence_classes(kr, 4, 1, nullptr, std::string("01")).classes == 4);
    }
    SUBCASE("a constant language has one class") {
      CHECK(equivalence_classes(constant(true), 5, 3).classes == 1);
      CHECK(equivalence_classes(constant(false), 5, 0).classes == 1);
    }
    SUBCASE("H at D = 1 over the constructed prefixes") {
      const HAddressing addr = h_addressing(1);
      CHECK(addr.ell == 22);
      CHECK(addr.prefixes.size() == 4);
      const ClassReport r = equivalence_classes(automaton_decider(automaton_H(), false), addr.ell + 1, 1,
                                                &addr.prefixes, std::string("01"));
      CHECK(r.classes == 4);
    }
    SUBCASE("prefixes of the wrong length are rejected") {
      const std::vector<std::string> bad{"0#"};
      CHECK_THROWS_AS(equivalence_classes(k, 4, 1, &bad), ContractError);
      CHECK_THROWS_AS(equivalence_classes(k, 30, 1), ResourceError);
    }
  }

  TEST_CASE("a prefix subset never has more classes than the full set") {
    std::mt19937 rng(5);
    const std::vector<std::string> all = all_strings("01#", 4);
    std::vector<std::string> length4;
    for (const auto& s : all)
      if (s.size() == 4) length4.push_back(s);
    for (const auto& d : {*find_oracle("k"), *find_oracle("k-reverse")}) {
      const std::size_t full = equivalence_classes(d, 4, 2).classes;
      for (int trial = 0; trial < 30; ++trial) {
        std::vector<std::string> subset;
        for (const auto& s : length4)
          if (rng() % 3 == 0) subset.push_back(s);
        CHECK(equivalence_classes(d, 4, 2, &subset).classes <= full);
      }
    }
  }

  TEST_CASE("longer suffixes and class counts") {
    // Over a fixed prefix set, adding every suffix length up to m only
    // splits classes.
    const Decider k = *find_oracle("k");
    std::vector<std::string> prefixes;
    for (const auto& s : all_strings("01#", 4))
      if (s.size() == 4) prefixes.push_back(s);
    std::map<std::string, std::string> key;
    std::size_t last = 1;
    for (std::size_t m = 0; m <= 3; ++m) {
      for (const auto& y : prefixes)
        for (const auto& x : all_strings("01#", m))
          if (x.size() == m) key[y] += k.member(y + x) ? '1' : '0';
      std::set<std::string> classes;
      for (const auto& [y, bits] : key) classes.insert(bits);
      CHECK(classes.size() >= last);
      last = classes.size();
    }
    // Suffixes of exactly length m alone need not refine: here every member
    // has length 5.
    const Decider five{"five", "ab", [](std::string_view x) { return x.size() == 5 && x[0] == 'a'; }};
    CHECK(equivalence_classes(five, 4, 1).classes == 2);
    CHECK(equivalence_classes(five, 4, 2).classes == 1);
  }

  TEST_CASE("JSON summary") {
    const auto j = nlohmann::json::parse(summary_json(12, {"aaa"}, 4));
    CHECK(j["checked"] == 12);
    CHECK(j["counterexamples"] == nlohmann::json::array({"aaa"}));
    CHECK(j["classCount"] == 4);
    CHECK(nlohmann::json::parse(summary_json(0, {}, std::nullopt))["classCount"].is_null());
    CHECK(summary_json(1, {}, 2) == "{\"checked\":1,\"counterexamples\":[],\"classCount\":2}\n");
  }
}
