#pragma once

// Helpers shared by the test binaries.

#include <cstddef>
#include <string>
#include <vector>

#include "pegsa/corpus.hpp"
#include "pegsa/scaffold.hpp"

namespace pegsa::testing {

/// All strings over sigma of length ≤ max_len, length-lex.
inline std::vector<std::string> all_strings(const std::string& sigma, std::size_t max_len) {
  std::vector<std::string> out{""};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (char c : sigma) out.push_back(out[i] + c);
    begin = end;
  }
  return out;
}

inline std::string reversed(const std::string& s) { return {s.rbegin(), s.rend()}; }

struct CorpusPair {
  std::string name;
  Grammar grammar;
  AutomatonDef automaton;
  std::size_t exhaustive_len;
};

/// Each corpus grammar with the corpus automaton for its reversed language.
inline std::vector<CorpusPair> corpus_pairs(std::size_t binary_len, std::size_t unary_len) {
  std::vector<CorpusPair> out;
  out.push_back({"p2", grammar_power_length(2), automaton_power_length(2), unary_len});
  out.push_back({"p3", grammar_power_length(3), automaton_power_length(3), unary_len});
  out.push_back({"sp", grammar_sometimes_palindromes(), automaton_sometimes_palindromes(), binary_len});
  out.push_back({"counting", grammar_counting(), automaton_counting(), binary_len});
  return out;
}

/// Node ids of block n in the H scaffold: v_1..v_k, r, v'_1..v'_k, s, where
/// v_i and v'_i carry bit i of n (least significant first).
struct HBlock {
  std::size_t n = 0;
  std::vector<NodeId> first, second;
  NodeId inner = 0, outer = 0;
};

inline std::size_t h_block_start(std::size_t n) {
  std::size_t pos = 1;
  for (std::size_t m = 0; m < n; ++m) pos += 2 * binary_length(m) + 2;
  return pos;
}

inline HBlock h_block(std::size_t n) {
  HBlock b;
  b.n = n;
  const std::size_t k = binary_length(n);
  const auto start = static_cast<NodeId>(h_block_start(n));
  for (std::size_t i = 1; i <= k; ++i) {
    b.first.push_back(start + static_cast<NodeId>(i) - 1);
    b.second.push_back(start + static_cast<NodeId>(2 * k + 1 - i));
  }
  b.inner = start + static_cast<NodeId>(k);
  b.outer = start + static_cast<NodeId>(2 * k + 1);
  return b;
}

/// Violations of the block invariant in block n of scaffold s.
inline std::vector<std::string> h_invariant_violations(const Scaffold& s, std::size_t n) {
  std::vector<std::string> out;
  const HBlock b = h_block(n);
  std::vector<std::vector<NodeId>> trees;
  for (std::size_t i = 2; i <= b.first.size(); ++i) {
    if (!((n >> (i - 1)) & 1)) continue;
    const NodeId root = s.edge(b.first[i - 1], 0);
    const std::string where = "block " + std::to_string(n) + ", bit " + std::to_string(i) + ": ";
    if (root != s.edge(b.second[i - 1], 0)) out.push_back(where + "first edges of v_i and v'_i differ");
    if (root == kNoNode) {
      out.push_back(where + "no first edge");
      continue;
    }
    if (bin_depth(s, root) < i - 1) out.push_back(where + "binary depth below i-1");
    else trees.push_back(bin_tree(s, root, i - 1));
  }
  for (std::size_t a = 0; a < trees.size(); ++a)
    for (std::size_t c = a + 1; c < trees.size(); ++c)
      for (NodeId u : trees[a])
        for (NodeId v : trees[c])
          if (u == v) out.push_back("block " + std::to_string(n) + ": trees share node " + std::to_string(u));
  return out;
}

}  // namespace pegsa::testing
