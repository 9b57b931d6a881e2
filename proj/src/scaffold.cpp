#include "pegsa/scaffold.hpp"

#include <algorithm>
#include <unordered_set>

#include "pegsa/errors.hpp"

namespace pegsa {

Scaffold::Scaffold(std::size_t degree) : d_(degree), labels_{kNoLabel}, edges_(degree, kNoNode) {
  if (degree == 0) throw ContractError("scaffold degree must be at least 1");
}

NodeId Scaffold::append(LabelId label, std::span<const NodeId> targets) {
  if (targets.size() != d_) throw ContractError("append needs exactly d edge targets");
  const NodeId id = static_cast<NodeId>(labels_.size());
  for (NodeId t : targets)
    if (t != kNoNode && (t < 0 || t > id)) throw ContractError("scaffold edges must point backwards");
  if (label == kNoLabel) throw ContractError("only the base node is unlabelled");
  labels_.push_back(label);
  edges_.insert(edges_.end(), targets.begin(), targets.end());
  return id;
}

Scaffold Scaffold::prefix(std::size_t count) const {
  if (count == 0 || count > size()) throw ContractError("prefix size out of range");
  Scaffold out(*this);
  out.truncate(count);
  return out;
}

void Scaffold::truncate(std::size_t count) {
  if (count == 0 || count > size()) throw ContractError("truncate size out of range");
  labels_.resize(count);
  edges_.resize(count * d_);
}

std::string to_string(const PathSpec& p) {
  switch (p.kind) {
    case PathSpec::Kind::Self: return "SELF";
    case PathSpec::Kind::Absent: return "\xE2\x88\x85";
    case PathSpec::Kind::Steps: break;
  }
  if (p.steps.empty()) return "\xCE\xBB";
  std::string out = "(";
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(p.steps[i]);
  }
  return out + ")";
}

NodeId resolve_path(const Scaffold& s, NodeId v, std::span<const std::uint16_t> steps) {
  for (std::uint16_t i : steps) {
    if (v == kNoNode) return kNoNode;
    if (i >= s.degree()) throw ContractError("path step exceeds scaffold degree");
    v = s.edge(v, i);
  }
  return v;
}

NodeId resolve_path(const Scaffold& s, NodeId v, const PathSpec& p) {
  if (p.is_self()) throw ContractError("SELF is resolved by the step function, not by resolve_path");
  if (p.is_absent()) return kNoNode;
  return resolve_path(s, v, p.steps);
}

bool operator==(const Neighborhood& a, const Neighborhood& b) {
  if (a.label != b.label || a.children.size() != b.children.size()) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    const auto& x = a.children[i];
    const auto& y = b.children[i];
    if (x == y) continue;
    if (!x || !y || !(*x == *y)) return false;
  }
  return true;
}

NeighborhoodPtr neighborhood(const Scaffold& s, NodeId v, std::size_t k) {
  if (v == kNoNode) return nullptr;
  // memo[depth][node]
  std::vector<std::vector<NeighborhoodPtr>> memo(k + 1, std::vector<NeighborhoodPtr>(s.size()));
  auto build = [&](auto&& self, NodeId u, std::size_t depth) -> NeighborhoodPtr {
    if (u == kNoNode) return nullptr;
    auto& slot = memo[depth][static_cast<std::size_t>(u)];
    if (slot) return slot;
    auto n = std::make_shared<Neighborhood>();
    n->label = s.label(u);
    if (depth > 0) {
      n->children.reserve(s.degree());
      for (std::size_t i = 0; i < s.degree(); ++i) n->children.push_back(self(self, s.edge(u, i), depth - 1));
    }
    slot = n;
    return slot;
  };
  return build(build, v, k);
}

std::size_t AccessLog::add(std::size_t degree) {
  entries_.push_back(Entry{false, std::vector<std::int32_t>(degree, kUnread)});
  return entries_.size() - 1;
}

NeighborhoodView::NeighborhoodView(const Scaffold& s, NodeId v, std::size_t depth, AccessLog* log)
    : s_(&s), v_(v), depth_(depth), log_(log), entry_(-1) {
  if (log_ && v_ != kNoNode) entry_ = static_cast<std::int32_t>(log_->add(s.degree()));
}

LabelId NeighborhoodView::label() const {
  if (v_ == kNoNode) throw ContractError("label of an absent neighbourhood");
  if (log_) log_->at(static_cast<std::size_t>(entry_)).label_read = true;
  return s_->label(v_);
}

NeighborhoodView NeighborhoodView::child(std::size_t i) const {
  if (v_ == kNoNode) throw ContractError("child of an absent neighbourhood");
  if (depth_ == 0) throw ContractError("neighbourhood depth exhausted");
  if (i >= s_->degree()) throw ContractError("edge index exceeds degree");
  NodeId target = s_->edge(v_, i);
  std::int32_t entry = -1;
  if (log_) {
    auto& slot = log_->at(static_cast<std::size_t>(entry_)).child[i];
    if (target == kNoNode) {
      slot = AccessLog::kAbsent;
    } else {
      if (slot < 0) slot = static_cast<std::int32_t>(log_->add(s_->degree()));
      entry = slot;
    }
  }
  return NeighborhoodView(s_, target, depth_ - 1, log_, entry);
}

NeighborhoodView NeighborhoodView::follow(std::span<const std::uint16_t> steps) const {
  NeighborhoodView v = *this;
  for (std::uint16_t i : steps) {
    if (!v.present()) break;
    v = v.child(i);
  }
  return v;
}

std::size_t bin_depth(const Scaffold& s, NodeId v) {
  if (s.degree() < 2) throw ContractError("binary depth needs degree at least 2");
  std::unordered_set<NodeId> seen{v};
  std::vector<NodeId> level{v};
  std::size_t depth = 0;
  while (true) {
    std::vector<NodeId> next;
    next.reserve(level.size() * 2);
    for (NodeId u : level) {
      for (std::size_t i = 0; i < 2; ++i) {
        NodeId w = s.edge(u, i);
        if (w == kNoNode || !seen.insert(w).second) return depth;
        next.push_back(w);
      }
    }
    level = std::move(next);
    ++depth;
  }
}

std::vector<NodeId> bin_tree(const Scaffold& s, NodeId v, std::size_t depth) {
  std::vector<NodeId> out{v};
  std::size_t begin = 0;
  for (std::size_t level = 0; level < depth; ++level) {
    std::size_t end = out.size();
    for (std::size_t j = begin; j < end; ++j) {
      for (std::size_t i = 0; i < 2; ++i)
        out.push_back(out[j] == kNoNode ? kNoNode : s.edge(out[j], i));
    }
    begin = end;
  }
  return out;
}

}  // namespace pegsa
