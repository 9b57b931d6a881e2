#include "pegsa/analysis.hpp"

#include <algorithm>
#include <unordered_map>

#include "json.hpp"
#include "pegsa/corpus.hpp"
#include "pegsa/errors.hpp"
#include "pegsa/recognize.hpp"

namespace pegsa {

namespace {

std::vector<std::string> split_hash(std::string_view x) {
  std::vector<std::string> parts(1);
  for (char c : x) {
    if (c == '#') parts.emplace_back();
    else parts.back().push_back(c);
  }
  return parts;
}

bool is_binary(std::string_view x) { return x.find_first_not_of("01") == std::string_view::npos; }

std::string reversed(std::string_view x) { return std::string(x.rbegin(), x.rend()); }

std::string to_binary(std::size_t n) {
  std::string out = n == 0 ? "0" : "";
  for (; n; n /= 2) out.push_back(static_cast<char>('0' + n % 2));
  std::reverse(out.begin(), out.end());
  return out;
}

std::size_t string_count(std::size_t sigma, std::size_t max_len, std::size_t budget) {
  std::size_t total = 0, level = 1;
  for (std::size_t i = 0; i <= max_len; ++i) {
    total += level;
    if (total > budget) throw ResourceError("enumeration exceeds the budget of " + std::to_string(budget) + " strings");
    if (i < max_len && sigma > 0 && level > budget / sigma + 1) level = budget + 1;
    else level *= sigma;
  }
  return total;
}

// Calls f on every string of exactly `len` symbols, in lexicographic order.
template <class F>
void for_each_string(const std::string& sigma, std::size_t len, F&& f) {
  std::string s(len, sigma.empty() ? '\0' : sigma[0]);
  if (len > 0 && sigma.empty()) return;
  std::vector<std::size_t> idx(len, 0);
  while (true) {
    f(static_cast<const std::string&>(s));
    std::size_t i = len;
    while (i > 0 && idx[i - 1] + 1 == sigma.size()) {
      idx[i - 1] = 0;
      s[i - 1] = sigma[0];
      --i;
    }
    if (i == 0) return;
    s[i - 1] = sigma[++idx[i - 1]];
  }
}

}  // namespace

Decider grammar_decider(const Grammar& g, std::string name) {
  auto rec = std::make_shared<Recognizer>(g);
  return {std::move(name), g.terminals(), [rec](std::string_view x) {
            const Membership m = rec->recognizes(x);
            if (m == Membership::Diverges) throw TotalityError("grammar diverges on \"" + std::string(x) + "\"");
            return m == Membership::Member;
          }};
}

Decider automaton_decider(const AutomatonDef& a, bool reversed_input, std::string name) {
  auto shared = std::make_shared<AutomatonDef>(a);
  return {std::move(name), a.sigma(), [shared, reversed_input](std::string_view x) {
            return reversed_input ? accepts(*shared, reversed(x)) : accepts(*shared, x);
          }};
}

bool oracle_power_length(std::size_t ell, std::string_view x) {
  if (x.find_first_not_of('a') != std::string_view::npos) return false;
  std::size_t n = x.size();
  if (n == 0) return false;
  while (n % ell == 0) n /= ell;
  return n == 1;
}

bool oracle_sometimes_palindrome(std::string_view x) {
  const std::size_t n = x.size();
  if (n < 2 || (n & (n - 1)) != 0 || !is_binary(x)) return false;
  return x.substr(0, n / 2) == reversed(x.substr(n / 2));
}

std::string oracle_counting_member(std::size_t n) {
  std::string out;
  for (std::size_t k = n + 1; k-- > 0;) {
    const std::string b = to_binary(k);
    out += reversed(b) + "o" + b + "#";
  }
  return out;
}

bool oracle_counting(std::string_view x) {
  const auto blocks = static_cast<std::size_t>(std::count(x.begin(), x.end(), '#'));
  if (blocks == 0) return false;
  // The n-th member is longer than n symbols, so this never builds a string
  // much longer than x.
  if (blocks > x.size()) return false;
  return x == oracle_counting_member(blocks - 1);
}

bool oracle_K(std::string_view x) {
  const auto parts = split_hash(x);
  if (parts.size() < 2) return false;
  for (const auto& p : parts) {
    if (!is_binary(p)) return false;
  }
  const std::string want = reversed(parts.back());
  return std::find(parts.begin(), parts.end() - 1, want) != parts.end() - 1;
}

bool oracle_K_reverse(std::string_view x) {
  const auto parts = split_hash(x);
  if (parts.size() < 2) return false;
  for (const auto& p : parts) {
    if (!is_binary(p)) return false;
  }
  const std::string want = reversed(parts.front());
  return std::find(parts.begin() + 1, parts.end(), want) != parts.end();
}

std::vector<Decider> oracle_suite() {
  return {
      {"p2", "a", [](std::string_view x) { return oracle_power_length(2, x); }},
      {"p3", "a", [](std::string_view x) { return oracle_power_length(3, x); }},
      {"sp", "01", oracle_sometimes_palindrome},
      {"counting", "01#o", oracle_counting},
      {"k", "01#", oracle_K},
      {"k-reverse", "01#", oracle_K_reverse},
  };
}

std::optional<Decider> find_oracle(std::string_view name) {
  for (auto& d : oracle_suite()) {
    if (d.name == name) return d;
  }
  return std::nullopt;
}

std::vector<std::string> enumerate_members(const Decider& d, std::size_t max_len, std::size_t budget) {
  string_count(d.alphabet.size(), max_len, budget);
  std::vector<std::string> out;
  for (std::size_t len = 0; len <= max_len; ++len) {
    for_each_string(d.alphabet, len, [&](const std::string& s) {
      if (d.member(s)) out.push_back(s);
    });
  }
  return out;
}

CrossCheckReport cross_check(const Grammar& g, const AutomatonDef& a, std::size_t max_len, std::size_t max_reported) {
  const std::string& sigma = g.terminals();
  for (char c : sigma) {
    if (!a.has_symbol(c)) throw ContractError(std::string("automaton lacks the grammar terminal '") + c + "'");
  }
  Recognizer rec(g);
  PrependRecognizer x(rec);
  CrossCheckReport report;
  Scaffold s(a.degree());
  std::string w;  // automaton input; the grammar sees reverse(w)
  std::vector<StateId> states{a.start()};

  auto check = [&] {
    ++report.checked;
    const Membership m = x.membership();
    if (m == Membership::Diverges) throw TotalityError("grammar diverges on \"" + reversed(w) + "\"");
    if ((m == Membership::Member) != a.accepting(states.back())) {
      if (report.counterexamples.size() < max_reported) report.counterexamples.push_back(reversed(w));
      else ++report.suppressed;
    }
  };
  std::vector<std::size_t> next{0};
  check();
  while (!next.empty()) {
    if (w.size() == max_len || next.back() == sigma.size()) {
      next.pop_back();
      if (!w.empty()) {
        w.pop_back();
        x.pop_front();
        states.pop_back();
        s.truncate(s.size() - 1);
      }
      continue;
    }
    const char c = sigma[next.back()++];
    w.push_back(c);
    x.push_front(c);
    try {
      states.push_back(step_in_place(a, c, states.back(), s));
    } catch (const TransitionHole& e) {
      throw TransitionHole(std::string(e.what()) + " (automaton input \"" + w + "\")");
    }
    check();
    next.push_back(0);
  }
  return report;
}

ClassReport equivalence_classes(const Decider& d, std::size_t ell, std::size_t m,
                                const std::vector<std::string>* prefixes, std::optional<std::string> suffix_alphabet,
                                std::size_t budget) {
  const std::string suffix_sigma = suffix_alphabet.value_or(d.alphabet);
  std::vector<std::string> suffixes;
  string_count(suffix_sigma.size(), m, budget);
  for_each_string(suffix_sigma, m, [&](const std::string& s) { suffixes.push_back(s); });

  ClassReport report;
  report.suffixes = suffixes.size();
  std::unordered_map<std::string, std::size_t> classes;
  auto add = [&](const std::string& y) {
    if (y.size() != ell) throw ContractError("prefix \"" + y + "\" does not have length " + std::to_string(ell));
    std::string key(suffixes.size(), '0');
    for (std::size_t i = 0; i < suffixes.size(); ++i) {
      if (d.member(y + suffixes[i])) key[i] = '1';
    }
    ++classes[key];
    ++report.prefixes;
  };
  if (prefixes) {
    if (prefixes->size() * std::max<std::size_t>(suffixes.size(), 1) > budget) throw ResourceError("class count exceeds the budget");
    for (const auto& y : *prefixes) add(y);
  } else {
    std::size_t count = 1;
    for (std::size_t i = 0; i < ell; ++i) {
      count *= d.alphabet.size();
      if (count * std::max<std::size_t>(suffixes.size(), 1) > budget) throw ResourceError("class count exceeds the budget");
    }
    for_each_string(d.alphabet, ell, add);
  }
  report.classes = classes.size();
  return report;
}

HAddressing h_addressing(std::size_t depth) {
  HAddressing out;
  out.ell = h_prefix_length(depth);
  const AutomatonDef a = automaton_H();
  const RunTrace t = run(a, std::string(out.ell, '0'));
  out.root = t.scaffold.edge(static_cast<NodeId>(out.ell), 0);
  if (out.root == kNoNode) throw InternalError("H scaffold has no tree root at the prefix end");
  for_each_string("01", depth, [&](const std::string& path) {
    NodeId v = out.root;
    for (char c : path) v = v == kNoNode ? kNoNode : t.scaffold.edge(v, static_cast<std::size_t>(c - '0'));
    if (v == kNoNode || v == 0) throw InternalError("H tree path " + path + " does not reach an input position");
    out.leaves.push_back(v);
  });
  const std::size_t leaves = out.leaves.size();
  if (leaves >= 20) throw ResourceError("too many addressed positions to enumerate subsets");
  for (std::size_t mask = 0; mask < (std::size_t{1} << leaves); ++mask) {
    std::string z(out.ell, '0');
    for (std::size_t i = 0; i < leaves; ++i) {
      if (mask >> i & 1) z[static_cast<std::size_t>(out.leaves[i]) - 1] = '1';
    }
    out.prefixes.push_back(z + "#");
  }
  return out;
}

std::string summary_json(std::size_t checked, const std::vector<std::string>& counterexamples,
                         std::optional<std::size_t> class_count) {
  nlohmann::ordered_json j;
  j["checked"] = checked;
  j["counterexamples"] = counterexamples;
  if (class_count) j["classCount"] = *class_count;
  else j["classCount"] = nullptr;
  return j.dump() + "\n";
}

}  // namespace pegsa
