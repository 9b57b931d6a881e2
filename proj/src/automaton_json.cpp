#include "json.hpp"

#include <algorithm>
#include <unordered_map>

#include "pegsa/automaton_io.hpp"
#include "pegsa/errors.hpp"
#include "pegsa/grammar_text.hpp"

namespace pegsa {

namespace {

using Json = nlohmann::ordered_json;

Json pattern_to_json(const AutomatonDef& a, const Pattern& p) {
  switch (p.kind) {
    case Pattern::Kind::Wild: return "*";
    case Pattern::Kind::Absent: return nullptr;
    case Pattern::Kind::Node: break;
  }
  Json out = Json::object();
  switch (p.label.kind) {
    case LabelPattern::Kind::Wild: out["label"] = "*"; break;
    case LabelPattern::Kind::Empty: out["label"] = ""; break;
    case LabelPattern::Kind::Is: out["label"] = a.label_name(p.label.value); break;
  }
  if (!p.children.empty()) {
    Json children = Json::array();
    for (const auto& c : p.children) children.push_back(pattern_to_json(a, *c));
    out["children"] = std::move(children);
  }
  return out;
}

// Patterns share subtrees in memory but serialize as trees.
constexpr std::size_t kPatternNodeBudget = 2'000'000;

std::size_t tree_size(const Pattern& p, std::unordered_map<const Pattern*, std::size_t>& memo) {
  auto it = memo.find(&p);
  if (it != memo.end()) return it->second;
  std::size_t n = 1;
  for (const auto& c : p.children) n = std::min(kPatternNodeBudget + 1, n + tree_size(*c, memo));
  memo.emplace(&p, n);
  return n;
}

Json path_to_json(const PathSpec& p) {
  switch (p.kind) {
    case PathSpec::Kind::Self: return "self";
    case PathSpec::Kind::Absent: return nullptr;
    case PathSpec::Kind::Steps: break;
  }
  Json out = Json::array();
  for (auto i : p.steps) out.push_back(i);
  return out;
}

[[noreturn]] void bad(const std::string& msg) { throw FormatError("automaton JSON: " + msg); }

char symbol_of(const Json& j, const char* what) {
  if (!j.is_string()) bad(std::string(what) + " must be a one-symbol string");
  std::string s = ascii_circle(j.get<std::string>());
  if (s.size() != 1) bad(std::string(what) + " must be a one-symbol string, got \"" + s + "\"");
  return s[0];
}

PatternPtr pattern_from_json(const AutomatonDef& a, const Json& j) {
  if (j.is_null()) return Pattern::absent();
  if (j.is_string()) {
    if (j.get<std::string>() != "*") bad("a string pattern must be \"*\"");
    return Pattern::wild();
  }
  if (!j.is_object()) bad("pattern must be \"*\", null or an object");
  for (const auto& [key, _] : j.items())
    if (key != "label" && key != "children") bad("unknown pattern field " + key);
  LabelPattern label = LabelPattern::wild();
  if (j.contains("label")) {
    if (!j["label"].is_string()) bad("pattern label must be a string");
    std::string name = j["label"].get<std::string>();
    if (name == "") label = LabelPattern::empty();
    else if (name != "*") {
      auto id = a.find_label(name);
      if (!id) bad("pattern uses undeclared label " + name);
      label = LabelPattern::is(*id);
    }
  }
  std::vector<PatternPtr> children;
  if (j.contains("children")) {
    if (!j["children"].is_array()) bad("pattern children must be an array");
    for (const auto& c : j["children"]) children.push_back(pattern_from_json(a, c));
  }
  return Pattern::node(label, std::move(children));
}

PathSpec path_from_json(const Json& j) {
  if (j.is_null()) return PathSpec::absent();
  if (j.is_string()) {
    if (j.get<std::string>() != "self") bad("a string edge must be \"self\"");
    return PathSpec::self();
  }
  if (!j.is_array()) bad("edge must be \"self\", null or an index array");
  std::vector<std::uint16_t> steps;
  for (const auto& i : j) {
    if (!i.is_number_unsigned()) bad("edge path entries must be non-negative integers");
    steps.push_back(i.get<std::uint16_t>());
  }
  return PathSpec::of(std::move(steps));
}

const Json& field(const Json& j, const char* name) {
  if (!j.contains(name)) bad(std::string("missing field ") + name);
  return j[name];
}

}  // namespace

std::string automaton_to_json(const AutomatonDef& a) {
  if (a.is_computed()) throw UnsupportedError("a computed automaton has no rule table; materialize it first");
  Json out = Json::object();
  Json sigma = Json::array();
  for (char c : a.sigma()) sigma.push_back(std::string(1, c));
  out["sigma"] = std::move(sigma);
  out["d"] = a.degree();
  Json gamma = Json::array();
  for (std::size_t g = 0; g < a.label_count(); ++g) gamma.push_back(a.label_name(static_cast<LabelId>(g)));
  out["gamma"] = std::move(gamma);
  out["k"] = a.depth();
  Json states = Json::array();
  Json accepting = Json::array();
  for (std::size_t q = 0; q < a.state_count(); ++q) {
    states.push_back(a.state_name(static_cast<StateId>(q)));
    if (a.accepting(static_cast<StateId>(q))) accepting.push_back(a.state_name(static_cast<StateId>(q)));
  }
  out["states"] = std::move(states);
  out["start"] = a.state_name(a.start());
  out["accepting"] = std::move(accepting);
  std::unordered_map<const Pattern*, std::size_t> sizes;
  std::size_t written = 0;
  for (const auto& r : a.rules()) {
    written += tree_size(*r.pattern, sizes);
    if (written > kPatternNodeBudget)
      throw ResourceError("rule patterns unfold to more than " + std::to_string(kPatternNodeBudget) +
                          " nodes; use observed patterns instead");
  }
  Json rules = Json::array();
  for (const auto& r : a.rules()) {
    Json rule = Json::object();
    rule["from"] = a.state_name(r.from);
    rule["symbol"] = r.symbol ? std::string(1, *r.symbol) : std::string("*");
    rule["pattern"] = pattern_to_json(a, *r.pattern);
    rule["to"] = a.state_name(r.result.to);
    rule["label"] = a.label_name(r.result.label);
    Json edges = Json::array();
    for (const auto& p : r.result.edges) edges.push_back(path_to_json(p));
    rule["edges"] = std::move(edges);
    rules.push_back(std::move(rule));
  }
  out["rules"] = std::move(rules);
  return out.dump(2) + "\n";
}

AutomatonDef automaton_from_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    bad(e.what());
  }
  if (!j.is_object()) bad("top level must be an object");
  try {
    std::string sigma;
    const Json& sig = field(j, "sigma");
    if (!sig.is_array()) bad("sigma must be an array");
    for (const auto& s : sig) sigma += symbol_of(s, "sigma entry");
    const Json& d = field(j, "d");
    const Json& k = field(j, "k");
    if (!d.is_number_unsigned() || !k.is_number_unsigned()) bad("d and k must be non-negative integers");
    AutomatonDef a(sigma, d.get<std::size_t>(), k.get<std::size_t>());
    const Json& gamma = field(j, "gamma");
    if (!gamma.is_array()) bad("gamma must be an array");
    for (const auto& g : gamma) {
      if (!g.is_string()) bad("labels must be strings");
      std::string name = g.get<std::string>();
      if (name.empty() || name == "*") bad("labels \"\" and \"*\" are reserved for patterns");
      a.add_label(name);
    }
    const Json& states = field(j, "states");
    if (!states.is_array() || states.empty()) bad("states must be a non-empty array");
    for (const auto& q : states) {
      if (!q.is_string()) bad("state names must be strings");
      a.add_state(q.get<std::string>());
    }
    auto state_of = [&](const Json& q) {
      if (!q.is_string()) bad("state references must be strings");
      auto id = a.find_state(q.get<std::string>());
      if (!id) bad("undeclared state " + q.get<std::string>());
      return *id;
    };
    a.set_start(state_of(field(j, "start")));
    const Json& acc = field(j, "accepting");
    if (!acc.is_array()) bad("accepting must be an array");
    for (const auto& q : acc) a.set_accepting(state_of(q), true);
    const Json& rules = field(j, "rules");
    if (!rules.is_array()) bad("rules must be an array");
    for (const auto& r : rules) {
      if (!r.is_object()) bad("each rule must be an object");
      TransitionRule rule;
      rule.from = state_of(field(r, "from"));
      const Json& sym = field(r, "symbol");
      if (sym.is_string() && sym.get<std::string>() == "*") rule.symbol = std::nullopt;
      else rule.symbol = symbol_of(sym, "rule symbol");
      rule.pattern = pattern_from_json(a, field(r, "pattern"));
      rule.result.to = state_of(field(r, "to"));
      const Json& lab = field(r, "label");
      if (!lab.is_string() || !a.find_label(lab.get<std::string>())) bad("rule label must be a declared label");
      rule.result.label = *a.find_label(lab.get<std::string>());
      const Json& edges = field(r, "edges");
      if (!edges.is_array()) bad("edges must be an array");
      for (const auto& e : edges) rule.result.edges.push_back(path_from_json(e));
      a.add_rule(std::move(rule));
    }
    return a;
  } catch (const ContractError& e) {
    bad(e.what());
  } catch (const nlohmann::json::exception& e) {
    bad(e.what());
  }
}

}  // namespace pegsa
