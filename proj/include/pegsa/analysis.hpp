#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pegsa/automaton.hpp"
#include "pegsa/peg.hpp"

namespace pegsa {

/// A membership predicate over strings of a declared alphabet.
struct Decider {
  std::string name;
  std::string alphabet;
  std::function<bool(std::string_view)> member;
};

/// Membership in L(g); divergence raises TotalityError naming the input.
Decider grammar_decider(const Grammar& g, std::string name = "grammar");
/// Acceptance by a, on the input itself or on its reversal.
Decider automaton_decider(const AutomatonDef& a, bool reversed, std::string name = "automaton");

// Direct set-builder tests. None of them touches a grammar or an automaton.
bool oracle_power_length(std::size_t ell, std::string_view x);
bool oracle_sometimes_palindrome(std::string_view x);
/// The counting-language member with n + 1 blocks.
std::string oracle_counting_member(std::size_t n);
bool oracle_counting(std::string_view x);
/// K = { w₁ # … # w_N # x : some w_i = xʳ }, N ≥ 1.
bool oracle_K(std::string_view x);
/// Kʳ = { x # w₁ # … # w_N : some w_i = xʳ }, N ≥ 1.
bool oracle_K_reverse(std::string_view x);

/// p2, p3, sp, counting, k, k-reverse.
std::vector<Decider> oracle_suite();
std::optional<Decider> find_oracle(std::string_view name);

/// Members of length ≤ max_len in length-lex order over d.alphabet.
/// Throws ResourceError when more than `budget` strings would be tested.
std::vector<std::string> enumerate_members(const Decider& d, std::size_t max_len, std::size_t budget = 50'000'000);

struct CrossCheckReport {
  std::size_t checked = 0;
  std::vector<std::string> counterexamples;
  /// Counterexamples found beyond the reporting cap.
  std::size_t suppressed = 0;
  bool ok() const { return counterexamples.empty() && suppressed == 0; }
};

/// Checks x ∈ L(g) ⇔ a accepts reverse(x) for every x over g's terminals with
/// |x| ≤ max_len. Inputs are walked as a trie, so each string costs one
/// automaton step and one row of recognition cells.
CrossCheckReport cross_check(const Grammar& g, const AutomatonDef& a, std::size_t max_len,
                             std::size_t max_reported = 20);

struct ClassReport {
  std::size_t prefixes = 0;
  std::size_t suffixes = 0;
  std::size_t classes = 0;
};

/// Groups prefixes y by the membership vector of y·x over all suffixes x of
/// length m, taken in length-lex order. Prefixes default to all of Σ^ℓ; the
/// suffix alphabet defaults to Σ. With an explicit prefix list the count is a
/// lower bound for the full one.
ClassReport equivalence_classes(const Decider& d, std::size_t ell, std::size_t m,
                                const std::vector<std::string>* prefixes = nullptr,
                                std::optional<std::string> suffix_alphabet = std::nullopt,
                                std::size_t budget = 50'000'000);

/// The prefixes separating H at depth D: z# with |z| = ℓ(D), zero except at
/// the 2^D input positions addressed by the paths {0,1}^D from the root
/// e_ℓ(0); one prefix per subset of those positions.
struct HAddressing {
  std::size_t ell = 0;
  NodeId root = kNoNode;
  /// Node reached by each path in {0,1}^D, paths in lexicographic order.
  /// Node i holds input position i.
  std::vector<NodeId> leaves;
  std::vector<std::string> prefixes;
};
HAddressing h_addressing(std::size_t depth);

/// {"checked": …, "counterexamples": […], "classCount": … or null}.
std::string summary_json(std::size_t checked, const std::vector<std::string>& counterexamples,
                         std::optional<std::size_t> class_count);

}  // namespace pegsa
