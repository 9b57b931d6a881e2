#include "pattern_builder.hpp"

#include <algorithm>

#include "pegsa/errors.hpp"

namespace pegsa::detail {

PatternPtr build_pattern(std::size_t d, const std::vector<Constraint>& cs, std::size_t at,
                         const std::vector<std::uint16_t>& prefix) {
  LabelPattern label = LabelPattern::wild();
  bool deeper = false;
  for (const Constraint& c : cs) {
    if (c.path.size() < at || !std::equal(prefix.begin(), prefix.end(), c.path.begin())) continue;
    if (c.path.size() == at) {
      switch (c.kind) {
        case Constraint::Kind::Absent: return Pattern::absent();
        case Constraint::Kind::Label: label = LabelPattern::is(c.label); break;
        case Constraint::Kind::Empty: label = LabelPattern::empty(); break;
        case Constraint::Kind::Present: break;
      }
    } else {
      deeper = true;
    }
  }
  if (!deeper) return Pattern::node(label);
  std::vector<PatternPtr> children;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<std::uint16_t> next = prefix;
    next.push_back(static_cast<std::uint16_t>(i));
    bool used = std::any_of(cs.begin(), cs.end(), [&](const Constraint& c) {
      return c.path.size() > at && std::equal(next.begin(), next.end(), c.path.begin());
    });
    children.push_back(used ? build_pattern(d, cs, at + 1, next) : Pattern::wild());
  }
  return Pattern::node(label, std::move(children));
}

}  // namespace pegsa::detail
