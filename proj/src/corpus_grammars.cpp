#include "pegsa/corpus.hpp"
#include "pegsa/errors.hpp"

namespace pegsa {

namespace {

Expr t(char c) { return Expr::terminal(c); }
Expr r(const char* name) { return Expr::ref(name); }
Expr end_of_input() { return Expr::not_pred(Expr::any()); }
Expr power(Expr e, std::size_t n) { return n == 1 ? e : Expr::repeat(std::move(e), n); }

}  // namespace

Grammar grammar_power_length(std::size_t ell) {
  if (ell < 2) throw ContractError("power-length grammars need ell >= 2");
  Grammar g("a", "IAmPowerLLength");
  const Expr a = t('a');
  const Expr prefix = power(a, ell - 1);
  g.add_rule("IAmPowerLLength",
             Expr::choice(Expr::seq(a, end_of_input()), Expr::seq(r("Helper"), end_of_input())));
  g.add_rule("Helper",
             Expr::choice({Expr::seq({prefix, r("Helper"), a}),
                           Expr::seq({prefix, Expr::and_pred(r("Helper")), a}),
                           Expr::seq(a, power(Expr::seq(Expr::not_pred(r("Helper")), a), ell - 1))}));
  return g;
}

Grammar grammar_sometimes_palindromes() {
  Grammar g("01", "S");
  const Expr iam = r("IAmPowerTwoLength");
  g.add_rule("S", Expr::seq(Expr::and_pred(iam), r("Palindrome")));
  g.add_rule("Palindrome", Expr::choice({Expr::seq(r("P"), end_of_input()),
                                         Expr::seq({t('0'), t('0'), end_of_input()}),
                                         Expr::seq({t('1'), t('1'), end_of_input()})}));
  g.add_rule("P", Expr::choice({Expr::seq({t('0'), Expr::not_pred(iam), r("P"), t('0')}),
                                Expr::seq({t('1'), Expr::not_pred(iam), r("P"), t('1')}),
                                Expr::seq({t('1'), Expr::and_pred(iam), t('1')}),
                                Expr::seq({t('0'), Expr::and_pred(iam), t('0')})}));
  g.add_rule("IAmPowerTwoLength", Expr::seq(r("Helper"), end_of_input()));
  g.add_rule("Helper", Expr::choice(Expr::seq({r("Bit"), r("Helper"), r("Bit")}), Expr::seq(r("Bit"), r("Bit"))));
  g.add_rule("Bit", Expr::choice(t('0'), t('1')));
  return g;
}

Grammar grammar_counting_no_width_check() {
  Grammar g("01#o", "Sequence");
  g.add_rule("Sequence",
             Expr::choice(Expr::seq({Expr::and_pred(r("AddOneBlock")), r("InvertedBlock"), r("Sequence")}),
                          Expr::seq({t('0'), t('o'), t('0'), t('#')})));
  g.add_rule("InvertedBlock", Expr::seq(r("Inverted"), t('#')));
  g.add_rule("Inverted", Expr::choice({Expr::seq({t('1'), r("Inverted"), t('1')}),
                                       Expr::seq({t('0'), r("Inverted"), t('0')}), t('o')}));
  g.add_rule("AddOneBlock", Expr::seq({r("BitPlus"), t('o'), r("AddOneCheck")}));
  g.add_rule("AddOneCheck", Expr::choice(Expr::seq(r("AddOneDigit"), r("AddOneCheck")), t('#')));
  g.add_rule("AddOneDigit",
             Expr::choice({Expr::seq({Expr::and_pred(r("NextIs1")), Expr::and_pred(r("Carry")), t('0')}),
                           Expr::seq({Expr::and_pred(r("NextIs0")), Expr::and_pred(r("Carry")), t('1')}),
                           Expr::seq({Expr::and_pred(r("NextIs1")), Expr::not_pred(r("Carry")), t('1')}),
                           Expr::seq({Expr::and_pred(r("NextIs0")), Expr::not_pred(r("Carry")), t('0')}),
                           Expr::seq({Expr::and_pred(r("NextIsCircle")), Expr::and_pred(r("Carry")), t('1')})}));
  g.add_rule("Carry", Expr::choice(Expr::seq({Expr::any(), Expr::and_pred(r("NextIs1")), Expr::and_pred(r("Carry"))}),
                                   Expr::seq(r("Bit"), t('#'))));
  g.add_rule("NextIs0", Expr::seq({r("Bit"), r("SameLength"), t('0')}));
  g.add_rule("NextIs1", Expr::seq({r("Bit"), r("SameLength"), t('1')}));
  g.add_rule("NextIsCircle", Expr::seq({r("Bit"), r("SameLength"), t('o')}));
  g.add_rule("SameLength", Expr::choice(Expr::seq({r("Bit"), r("SameLength"), r("Bit")}), t('#')));
  g.add_rule("BitPlus", Expr::choice(Expr::seq(r("Bit"), r("BitPlus")), r("Bit")));
  g.add_rule("Bit", Expr::choice(t('0'), t('1')));
  return g;
}

// The printed rules never check that a block's number is as wide as its
// successor: after 1o1# the block 0o0# passes, being 10 with the carried-out
// digit dropped. Requiring a leading 1 and a width of |next| or |next| + 1
// closes the gap; every other rule is unchanged.
Grammar grammar_counting() {
  Grammar g = grammar_counting_no_width_check();
  Grammar out("01#o", "Sequence");
  for (const auto& rule : g.rules()) {
    if (rule.name == "AddOneBlock")
      out.add_rule("AddOneBlock", Expr::seq({r("BitPlus"), t('o'), Expr::and_pred(t('1')),
                                             Expr::and_pred(r("SuccessorWidth")), r("AddOneCheck")}));
    else
      out.add_rule(rule.name, rule.body);
  }
  out.add_rule("SuccessorWidth",
               Expr::choice(r("NextIsCircle"), Expr::seq({r("Bit"), r("SameLength"), r("Bit"), t('o')})));
  return out;
}

std::size_t binary_length(std::size_t n) {
  std::size_t len = 1;
  while (n >>= 1) ++len;
  return len;
}

std::string counting_block(std::size_t n) {
  std::string bin;
  do {
    bin.insert(bin.begin(), static_cast<char>('0' + (n & 1)));
    n >>= 1;
  } while (n);
  return std::string(bin.rbegin(), bin.rend()) + "o" + bin + "#";
}

std::size_t h_prefix_length(std::size_t depth) {
  std::size_t total = depth + 1;
  const std::size_t blocks = std::size_t{1} << (depth + 1);
  for (std::size_t n = 0; n < blocks; ++n) total += 2 * binary_length(n) + 2;
  return total;
}

}  // namespace pegsa
