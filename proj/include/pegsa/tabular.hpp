#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pegsa/peg.hpp"

namespace pegsa {

struct TableCell {
  enum class Kind { Consumed, Fail, Broken };
  Kind kind = Kind::Fail;
  std::size_t length = 0;

  friend bool operator==(const TableCell&, const TableCell&) = default;
};

/// Cells (i, A) for positions 0..n of one input. A Broken cell closes a
/// same-position dependency cycle; readers treat it as Fail.
class PackratTable {
 public:
  PackratTable(std::vector<std::string> nonterminals, std::size_t n);

  std::size_t input_length() const { return n_; }
  std::size_t positions() const { return n_ + 1; }
  const std::vector<std::string>& nonterminals() const { return names_; }

  const TableCell& at(std::size_t pos, std::size_t nt) const { return cells_.at(pos * names_.size() + nt); }
  const TableCell& at(std::size_t pos, std::string_view nt) const;
  TableCell& mutable_at(std::size_t pos, std::size_t nt) { return cells_.at(pos * names_.size() + nt); }

  /// True when some cell read a Broken cell while being computed.
  bool broken_consulted() const { return broken_consulted_; }
  void set_broken_consulted() { broken_consulted_ = true; }

  /// The cell viewed as a recognition outcome; Broken reads as Fail.
  Outcome outcome(std::size_t pos, std::string_view nt) const;

 private:
  std::vector<std::string> names_;
  std::size_t n_;
  std::vector<TableCell> cells_;
  bool broken_consulted_ = false;
};

/// Tabular recognition for a string grown at its front. Rows are indexed by
/// suffix length, so a push_front fills exactly one new row.
class SuffixTable {
 public:
  explicit SuffixTable(const Grammar& normalized);

  void push_front(char c);
  void pop_front();
  std::size_t size() const { return rev_.size(); }
  std::size_t nonterminal_count() const { return names_.size(); }
  const std::vector<std::string>& nonterminals() const { return names_; }
  std::size_t index_of(std::string_view nt) const;

  /// Cell of nt on the suffix of the given length.
  const TableCell& cell(std::size_t suffix_length, std::size_t nt) const {
    return cells_[suffix_length * names_.size() + nt];
  }
  /// Cell of nt on the whole current string.
  const TableCell& top(std::size_t nt) const { return cell(size(), nt); }
  /// True when some row of the current string read a Broken cell.
  bool broken_consulted() const { return broken_.back(); }

 private:
  enum class Visit : std::uint8_t { New, OnStack, Done };
  struct Rule {
    std::uint8_t shape;
    char symbol;
    std::size_t b;
    std::size_t c;
  };
  struct Frame {
    std::size_t nt;
    std::uint8_t stage;
  };

  void fill_row();

  Grammar grammar_{""};
  std::vector<Rule> rules_;
  std::vector<std::string> names_;
  std::string rev_;
  std::vector<TableCell> cells_;
  // broken_[L]: some row up to L read a Broken cell.
  std::vector<bool> broken_;
  std::vector<Visit> visit_;
  std::vector<Frame> stack_;
};

/// Fills the table from position n down to 0. Within a position, nonterminals
/// are resolved depth-first along the dependencies their rules actually consult.
PackratTable recognize_tabular(const Grammar& normalized, std::string_view input);

struct LeftRecursionReport {
  /// Each entry is one strongly connected set of nonterminals that can call each
  /// other without consuming input, listed in rule order.
  std::vector<std::vector<std::string>> cycles;

  bool clean() const { return cycles.empty(); }
};

/// Conservative lint: !e, &e and ε count as possibly consuming nothing, and
/// both branches of a choice are followed.
LeftRecursionReport check_left_recursion(const Grammar& g);

}  // namespace pegsa
