#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace pegsa {

using NodeId = std::int32_t;
using LabelId = std::int32_t;
using StateId = std::int32_t;

/// Missing edge target (∅).
inline constexpr NodeId kNoNode = -1;
/// The label of the base node (∅). Every other node carries some γ ∈ Γ.
inline constexpr LabelId kNoLabel = -1;

/// Labelled DAG with out-degree d whose edges point backwards. Node 0 is the
/// unlabelled base with all edges ∅. Nodes are only ever appended.
class Scaffold {
 public:
  explicit Scaffold(std::size_t degree);

  std::size_t degree() const { return d_; }
  std::size_t size() const { return labels_.size(); }
  NodeId top() const { return static_cast<NodeId>(labels_.size() - 1); }

  LabelId label(NodeId v) const { return labels_.at(static_cast<std::size_t>(v)); }
  NodeId edge(NodeId v, std::size_t i) const { return edges_.at(static_cast<std::size_t>(v) * d_ + i); }
  std::span<const NodeId> edges(NodeId v) const {
    return {edges_.data() + static_cast<std::size_t>(v) * d_, d_};
  }

  /// Appends node t+1; every target must be kNoNode or at most t+1.
  NodeId append(LabelId label, std::span<const NodeId> targets);

  /// The scaffold S_i made of nodes [0..count).
  Scaffold prefix(std::size_t count) const;

  /// Drops nodes past `count`. Only for backtracking searches that explore
  /// several continuations of one scaffold; runs never call it.
  void truncate(std::size_t count);

  friend bool operator==(const Scaffold&, const Scaffold&) = default;

 private:
  std::size_t d_;
  std::vector<LabelId> labels_;
  std::vector<NodeId> edges_;
};

/// Edge target: a sequence of edge indices, SELF, or ∅.
struct PathSpec {
  enum class Kind : std::uint8_t { Steps, Self, Absent };

  Kind kind = Kind::Absent;
  std::vector<std::uint16_t> steps;

  static PathSpec lambda() { return {Kind::Steps, {}}; }
  static PathSpec of(std::vector<std::uint16_t> s) { return {Kind::Steps, std::move(s)}; }
  static PathSpec self() { return {Kind::Self, {}}; }
  static PathSpec absent() { return {Kind::Absent, {}}; }

  bool is_steps() const { return kind == Kind::Steps; }
  bool is_self() const { return kind == Kind::Self; }
  bool is_absent() const { return kind == Kind::Absent; }

  friend bool operator==(const PathSpec&, const PathSpec&) = default;
  friend auto operator<=>(const PathSpec&, const PathSpec&) = default;
};

/// "λ", "(1,0)", "SELF" or "∅".
std::string to_string(const PathSpec& p);

/// Follows Steps from v; any ∅ on the way yields kNoNode. SELF is a contract error.
NodeId resolve_path(const Scaffold& s, NodeId v, const PathSpec& p);
NodeId resolve_path(const Scaffold& s, NodeId v, std::span<const std::uint16_t> steps);

/// A k-neighbourhood N_k(S, v), materialized. Children of a depth-0
/// neighbourhood are not stored; a null child is ∅.
struct Neighborhood {
  LabelId label = kNoLabel;
  std::vector<std::shared_ptr<const Neighborhood>> children;

  friend bool operator==(const Neighborhood& a, const Neighborhood& b);
};
using NeighborhoodPtr = std::shared_ptr<const Neighborhood>;

/// N_k(S, v); null when v is kNoNode. Shared subtrees are built once, so the
/// result has at most (k+1)·|S| distinct nodes.
NeighborhoodPtr neighborhood(const Scaffold& s, NodeId v, std::size_t k);

/// Records which parts of a neighbourhood a transition hook looked at.
class AccessLog {
 public:
  struct Entry {
    bool label_read = false;
    // Per edge index: -2 not consulted, -1 consulted and ∅, else entry index.
    std::vector<std::int32_t> child;
  };

  std::size_t add(std::size_t degree);
  Entry& at(std::size_t i) { return entries_.at(i); }
  const Entry& at(std::size_t i) const { return entries_.at(i); }
  std::size_t size() const { return entries_.size(); }

  static constexpr std::int32_t kUnread = -2;
  static constexpr std::int32_t kAbsent = -1;

 private:
  std::vector<Entry> entries_;
};

/// Lazy view of N_k(S, v). Navigation never leaves the depth bound: the
/// children of a depth-0 view are not observable.
class NeighborhoodView {
 public:
  NeighborhoodView(const Scaffold& s, NodeId v, std::size_t depth, AccessLog* log = nullptr);

  bool present() const { return v_ != kNoNode; }
  std::size_t depth() const { return depth_; }
  std::size_t degree() const { return s_->degree(); }
  LabelId label() const;
  bool is_base() const { return label() == kNoLabel; }
  /// The view one edge further; requires depth() > 0 and present().
  NeighborhoodView child(std::size_t i) const;
  /// Follows a step sequence; stops early (absent view) at the first ∅.
  NeighborhoodView follow(std::span<const std::uint16_t> steps) const;

  /// Node identity inside the underlying scaffold; not part of the
  /// neighbourhood, so hooks that want an exact table must not depend on it.
  NodeId node() const { return v_; }
  const Scaffold& scaffold() const { return *s_; }

 private:
  NeighborhoodView(const Scaffold* s, NodeId v, std::size_t depth, AccessLog* log, std::int32_t entry)
      : s_(s), v_(v), depth_(depth), log_(log), entry_(entry) {}

  const Scaffold* s_;
  NodeId v_;
  std::size_t depth_;
  AccessLog* log_;
  std::int32_t entry_;
};

/// Largest D such that the paths {0,1}^{≤D} from v all resolve, to pairwise
/// distinct nodes. λ always resolves, so the result is at least 0.
std::size_t bin_depth(const Scaffold& s, NodeId v);

/// Nodes reached by {0,1}^{≤depth} from v, in length-lex path order.
std::vector<NodeId> bin_tree(const Scaffold& s, NodeId v, std::size_t depth);

}  // namespace pegsa
