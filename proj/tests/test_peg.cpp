#include <doctest.h>

#include "pegsa/analysis.hpp"
#include "pegsa/corpus.hpp"
#include "pegsa/errors.hpp"
#include "pegsa/grammar_text.hpp"
#include "pegsa/recognize.hpp"
#include "pegsa/tabular.hpp"
#include "support.hpp"

using namespace pegsa;
using namespace pegsa::testing;

namespace {

Expr t(char c) { return Expr::terminal(c); }
Expr r(const char* n) { return Expr::ref(n); }

Outcome rec(const Grammar& g, const Expr& e, std::string_view x) { return recognize(g, e, x); }

std::vector<Grammar> corpus_grammars() {
  return {grammar_power_length(2), grammar_power_length(3), grammar_sometimes_palindromes(), grammar_counting()};
}

std::size_t exhaustive_len(const Grammar& g, std::size_t binary, std::size_t unary) {
  return g.terminals().size() == 1 ? unary : binary;
}

// Every string over the terminals of g up to the bound, shortest first.
std::vector<std::string> inputs_for(const Grammar& g, std::size_t binary, std::size_t unary) {
  return all_strings(g.terminals(), exhaustive_len(g, binary, unary));
}

}  // namespace

TEST_SUITE("peg-core") {
  TEST_CASE("recognition follows each case of the procedure") {
    Grammar g("ab", "S");
    g.add_rule("S", Expr::empty());
    g.add_rule("A", t('a'));
    g.add_rule("B", t('b'));

    CHECK(rec(g, Expr::empty(), "ab") == Outcome::consumed(0));
    CHECK(rec(g, Expr::fail(), "ab") == Outcome::failure());
    CHECK(rec(g, t('a'), "ab") == Outcome::consumed(1));
    CHECK(rec(g, t('b'), "ab") == Outcome::failure());
    CHECK(rec(g, t('a'), "") == Outcome::failure());
    CHECK(rec(g, r("A"), "ab") == Outcome::consumed(1));

    // A predicate never consumes; ! inverts.
    CHECK(rec(g, Expr::not_pred(t('a')), "ab") == Outcome::failure());
    CHECK(rec(g, Expr::not_pred(t('b')), "ab") == Outcome::consumed(0));
    CHECK(rec(g, Expr::and_pred(t('a')), "ab") == Outcome::consumed(0));
    CHECK(rec(g, Expr::and_pred(t('b')), "ab") == Outcome::failure());

    // Sequence fails when either part fails, otherwise the lengths add.
    CHECK(rec(g, Expr::seq(t('a'), t('b')), "ab") == Outcome::consumed(2));
    CHECK(rec(g, Expr::seq(t('b'), t('b')), "ab") == Outcome::failure());
    CHECK(rec(g, Expr::seq(t('a'), t('a')), "ab") == Outcome::failure());

    // Choice commits to the first part whenever it succeeds.
    CHECK(rec(g, Expr::choice(t('a'), Expr::seq(t('a'), t('b'))), "ab") == Outcome::consumed(1));
    CHECK(rec(g, Expr::choice(t('b'), Expr::seq(t('a'), t('b'))), "ab") == Outcome::consumed(2));
    CHECK(rec(g, Expr::choice(t('b'), t('b')), "ab") == Outcome::failure());
  }

  TEST_CASE("lookahead consumes nothing") {
    Grammar g("a", "S");
    g.add_rule("S", Expr::empty());
    CHECK(rec(g, Expr::and_pred(Expr::seq(t('a'), t('a'))), "aa") == Outcome::consumed(0));
    CHECK(recognizes(g, "") == Membership::Member);
  }

  TEST_CASE("left recursion diverges and names the pair") {
    Grammar g("a", "A");
    g.add_rule("A", Expr::seq(r("A"), t('a')));
    const Outcome o = rec(g, r("A"), "a");
    CHECK(o.diverged());
    CHECK(o.nonterminal == "A");
    CHECK(o.position == 0);
    CHECK(recognizes(g, "a") == Membership::Diverges);
  }

  TEST_CASE("a frame cap far below the needed depth is a resource error, not divergence") {
    Grammar g("a", "A");
    g.add_rule("A", Expr::choice(Expr::seq(t('a'), r("A")), Expr::empty()));
    Recognizer small(g, {true, 50});
    CHECK_THROWS_AS(small.recognizes(std::string(200, 'a')), ResourceError);
    CHECK(Recognizer(g).recognizes(std::string(200, 'a')) == Membership::Member);
  }

  TEST_CASE("power-of-two grammar") {
    const Grammar g = grammar_power_length(2);
    CHECK(recognizes(g, "aaaa") == Membership::Member);
    CHECK(recognizes(g, "aaa") == Membership::Nonmember);
    CHECK_THROWS_AS(recognizes(g, "ab"), InputError);
  }

  TEST_CASE("memoized and plain recognition agree") {
    for (const Grammar& g : {grammar_power_length(3), grammar_sometimes_palindromes()}) {
      Recognizer memo(g), plain(g, {false, 1'000'000});
      for (const auto& x : inputs_for(g, 8, 30)) CHECK(memo.recognizes(x) == plain.recognizes(x));
    }
  }

  TEST_CASE("consumed lengths stay within the input and calls are repeatable") {
    for (const Grammar& g : corpus_grammars()) {
      Recognizer rec(g);
      for (const auto& x : inputs_for(g, 6, 27)) {
        const auto all = rec.all_outcomes(x);
        for (std::size_t pos = 0; pos <= x.size(); ++pos)
          for (std::size_t a = 0; a < rec.nonterminal_count(); ++a) {
            const Outcome& o = all[pos * rec.nonterminal_count() + a];
            REQUIRE_FALSE(o.diverged());
            if (o.accepted()) CHECK(pos + o.length <= x.size());
          }
        CHECK(rec.all_outcomes(x) == all);
      }
    }
  }

  TEST_CASE("desugaring") {
    SUBCASE("star becomes a fresh right-recursive rule") {
      Grammar g("a", "S");
      g.add_rule("S", Expr::star(t('a')));
      const Grammar d = desugar(g);
      CHECK(d.is_desugared());
      bool found = false;
      for (const auto& rule : d.rules()) {
        const Expr want = Expr::choice(Expr::seq(t('a'), Expr::ref(rule.name)), Expr::empty());
        if (rule.body == want) found = true;
      }
      CHECK(found);
      for (std::size_t n = 0; n <= 5; ++n) CHECK(recognizes(d, std::string(n, 'a')) == Membership::Member);
    }
    SUBCASE("a grammar without sugar is unchanged") {
      const Grammar sugared = grammar_power_length(2);
      CHECK_FALSE(sugared.is_desugared());
      Grammar plain("ab", "S");
      plain.add_rule("S", Expr::choice(Expr::seq(t('a'), r("S")), Expr::not_pred(t('b'))));
      CHECK(desugar(plain) == plain);
    }
    SUBCASE("any-symbol expands to the ordered choice over the terminals") {
      Grammar g("01#", "S");
      g.add_rule("S", Expr::any());
      const Grammar d = desugar(g);
      CHECK(d.rule("S") == Expr::choice(t('0'), Expr::choice(t('1'), t('#'))));
      for (const auto& x : all_strings("01#", 3)) CHECK(rec(g, r("S"), x) == rec(d, r("S"), x));
    }
  }

  TEST_CASE("normalization splits a rule into binary pieces") {
    const Grammar g = parse_grammar(
        "@terminals 'x'\n"
        "A <- &B C D / E F / !G\n"
        "B <- 'x'\nC <- 'x'\nD <- 'x'\nE <- 'x'\nF <- 'x'\nG <- 'x'\n");
    const Grammar n = normalize(g);
    CHECK(n.is_normalized());
    // A <- A1 / A3, A1 <- B1 A2, B1 <- &B, A2 <- C D, A3 <- A4 / A5, A4 <- E F, A5 <- !G
    CHECK(n.size() == g.size() + 6);
    const Expr& top = n.rule("A");
    REQUIRE(top.kind() == ExprKind::Choice);
    const Expr& a1 = n.rule(top.left().name());
    const Expr& a3 = n.rule(top.right().name());
    REQUIRE(a1.kind() == ExprKind::Seq);
    CHECK(n.rule(a1.left().name()) == Expr::and_pred(r("B")));
    CHECK(n.rule(a1.right().name()) == Expr::seq(r("C"), r("D")));
    REQUIRE(a3.kind() == ExprKind::Choice);
    CHECK(n.rule(a3.left().name()) == Expr::seq(r("E"), r("F")));
    CHECK(n.rule(a3.right().name()) == Expr::not_pred(r("G")));

    Grammar binary("ab", "S");
    binary.add_rule("S", Expr::choice(r("A"), r("B")));
    binary.add_rule("A", t('a'));
    binary.add_rule("B", Expr::seq(r("A"), r("S")));
    CHECK(normalize(binary) == binary);
  }

  TEST_CASE("normalization preserves membership") {
    for (const Grammar& g : corpus_grammars()) {
      const Grammar n = normalize(g);
      Recognizer a(g), b(n);
      for (const auto& x : inputs_for(g, g.terminals().size() > 2 ? 7 : 10, 81)) CHECK(a.recognizes(x) == b.recognizes(x));
    }
  }

  TEST_CASE("prepending symbols reuses results consistently") {
    for (const Grammar& g : corpus_grammars()) {
      const Grammar n = normalize(g);
      Recognizer base(n);
      PrependRecognizer inc(base);
      for (const auto& x : inputs_for(g, 5, 20)) {
        while (inc.size() > 0) inc.pop_front();
        for (auto it = x.rbegin(); it != x.rend(); ++it) inc.push_front(*it);
        for (std::size_t a = 0; a < base.nonterminal_count(); ++a) {
          Outcome fresh = base.recognize(base.nonterminal_name(a), x);
          CHECK(inc.outcome(a) == fresh);
        }
        CHECK(inc.membership() == base.recognizes(x));
      }
    }
  }

  TEST_CASE("tabular recognition") {
    SUBCASE("power-of-two start cell") {
      const PackratTable t = recognize_tabular(normalize(grammar_power_length(2)), "aaaa");
      CHECK(t.at(0, "IAmPowerLLength") == TableCell{TableCell::Kind::Consumed, 4});
      CHECK_FALSE(t.broken_consulted());
    }
    SUBCASE("the empty input has one row") {
      const PackratTable t = recognize_tabular(normalize(grammar_sometimes_palindromes()), "");
      CHECK(t.positions() == 1);
    }
    SUBCASE("agrees with recursive recognition on the palindrome grammar") {
      const Grammar n = normalize(grammar_sometimes_palindromes());
      Recognizer rec(n);
      for (const auto& x : all_strings("01", 10)) {
        const PackratTable t = recognize_tabular(n, x);
        const std::size_t pos = x.size() / 2;
        for (std::size_t a = 0; a < rec.nonterminal_count(); ++a)
          CHECK(t.outcome(pos, rec.nonterminal_name(a)) == rec.recognize(rec.nonterminal_name(a), x, pos));
      }
    }
    SUBCASE("same-position cycles are broken and flagged") {
      const Grammar n = normalize(parse_grammar("A <- A 'a' / 'a'\n"));
      const PackratTable t = recognize_tabular(n, "a");
      CHECK(t.broken_consulted());
      CHECK(t.at(0, "A").kind == TableCell::Kind::Broken);
    }
    SUBCASE("needs binary normal form") {
      CHECK_THROWS_AS(recognize_tabular(grammar_power_length(2), "a"), ContractError);
    }
  }

  TEST_CASE("left-recursion lint") {
    CHECK(check_left_recursion(parse_grammar("A <- A 'a'\n")).cycles == std::vector<std::vector<std::string>>{{"A"}});
    CHECK(check_left_recursion(parse_grammar("A <- B\nB <- 'a' A\n")).clean());
    CHECK_FALSE(check_left_recursion(parse_grammar("A <- !B 'a'\nB <- &A\n")).clean());
    CHECK_FALSE(check_left_recursion(parse_grammar("A <- 'b'* A / 'a'\n")).clean());
    for (const Grammar& g : corpus_grammars()) {
      CHECK(check_left_recursion(g).clean());
      const Grammar n = normalize(g);
      CHECK(check_left_recursion(n).clean());
    }
  }

  TEST_CASE("corpus grammars terminate on every short input") {
    for (const Grammar& g : corpus_grammars()) {
      Recognizer rec(g);
      for (const auto& x : inputs_for(g, 8, 81)) REQUIRE(rec.recognizes(x) != Membership::Diverges);
    }
  }

  TEST_CASE("grammar text") {
    SUBCASE("print then parse is the identity") {
      for (const Grammar& g : corpus_grammars()) {
        const std::string text = print_grammar(g);
        CHECK(parse_grammar(text) == g);
        CHECK(print_grammar(parse_grammar(text)) == text);
      }
    }
    SUBCASE("directives, comments, continuation lines and sugar") {
      const Grammar g = parse_grammar(
          "# a comment\n"
          "@terminals 'ab#'\n"
          "@start T\n"
          "S <- 'a'+ S / ()   # trailing comment with a quote ' inside\n"
          "T <- 'ab' 'b'{2}\n"
          "   / '#' !. / FAIL\n");
      CHECK(g.start() == "T");
      CHECK(g.terminals() == "ab#");
      CHECK(recognizes(g, "abbb") == Membership::Member);
      CHECK(recognizes(g, "#") == Membership::Member);
      CHECK(recognizes(g, "ab") == Membership::Nonmember);
      CHECK(parse_grammar(print_grammar(g)) == g);
    }
    SUBCASE("undeclared any-symbol and malformed text are rejected") {
      CHECK_THROWS_AS(parse_grammar("S <- 'a' (\n"), FormatError);
      CHECK_THROWS_AS(parse_grammar("S <- Missing\n"), Error);
      CHECK_THROWS_AS(parse_grammar("/ 'a'\n"), FormatError);
    }
    SUBCASE("the circle symbol maps to o") { CHECK(ascii_circle("0\xE2\x88\x98" "0#") == "0o0#"); }
  }
}
