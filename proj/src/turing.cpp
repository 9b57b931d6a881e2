#include <algorithm>
#include <set>

#include "json.hpp"
#include "pegsa/corpus.hpp"
#include "pegsa/errors.hpp"

namespace pegsa {

namespace {

using nlohmann::json;

char move_char(Move m) { return m == Move::Left ? 'L' : m == Move::Right ? 'R' : 'S'; }

Move parse_move(const std::string& s) {
  if (s == "L") return Move::Left;
  if (s == "R") return Move::Right;
  if (s == "S") return Move::Stay;
  throw FormatError("move must be L, R or S, got '" + s + "'");
}

char parse_symbol(const json& j) {
  const auto s = j.get<std::string>();
  if (s.size() != 1) throw FormatError("tape symbols are single characters, got '" + s + "'");
  return s[0];
}

}  // namespace

bool TuringMachine::is_halting(const std::string& q) const {
  return std::find(halt.begin(), halt.end(), q) != halt.end() ||
         std::find(accept.begin(), accept.end(), q) != accept.end();
}

void TuringMachine::validate() const {
  const std::set<std::string> known(states.begin(), states.end());
  if (known.size() != states.size()) throw FormatError("duplicate state names");
  auto check_state = [&](const std::string& q) {
    if (!known.count(q)) throw FormatError("unknown state '" + q + "'");
  };
  check_state(start);
  for (const auto& q : accept) check_state(q);
  for (const auto& q : halt) check_state(q);
  auto check_symbol = [&](char c) {
    if (tape_alphabet.find(c) == std::string::npos) throw FormatError(std::string("unknown tape symbol '") + c + "'");
  };
  check_symbol(blank);
  check_symbol('0');
  check_symbol('1');
  if (tape_alphabet.find('#') != std::string::npos) throw FormatError("'#' is reserved");
  for (const auto& [key, act] : transitions) {
    check_state(key.first);
    check_symbol(key.second);
    check_state(act.next);
    check_symbol(act.write);
    if (is_halting(key.first)) throw FormatError("halting state '" + key.first + "' has a transition");
  }
}

TuringMachine turing_machine_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    TuringMachine m;
    m.states = j.at("states").get<std::vector<std::string>>();
    m.blank = j.contains("blank") ? parse_symbol(j.at("blank")) : '_';
    for (const auto& s : j.at("tape_alphabet")) m.tape_alphabet.push_back(parse_symbol(s));
    m.start = j.at("start").get<std::string>();
    if (j.contains("accept")) m.accept = j.at("accept").get<std::vector<std::string>>();
    if (j.contains("halt")) m.halt = j.at("halt").get<std::vector<std::string>>();
    for (const auto& t : j.at("transitions")) {
      TuringMachine::Action act{t.at("next").get<std::string>(), parse_symbol(t.at("write")),
                                parse_move(t.at("move").get<std::string>())};
      const auto key = std::make_pair(t.at("state").get<std::string>(), parse_symbol(t.at("read")));
      if (!m.transitions.emplace(key, act).second) throw FormatError("nondeterministic transition for " + key.first);
    }
    m.validate();
    return m;
  } catch (const json::exception& e) {
    throw FormatError(std::string("turing machine: ") + e.what());
  }
}

std::string turing_machine_to_json(const TuringMachine& m) {
  nlohmann::ordered_json j;
  j["states"] = m.states;
  j["blank"] = std::string(1, m.blank);
  std::vector<std::string> alphabet;
  for (char c : m.tape_alphabet) alphabet.emplace_back(1, c);
  j["tape_alphabet"] = alphabet;
  j["start"] = m.start;
  j["accept"] = m.accept;
  j["halt"] = m.halt;
  j["transitions"] = nlohmann::ordered_json::array();
  for (const auto& [key, act] : m.transitions) {
    j["transitions"].push_back({{"state", key.first},
                                {"read", std::string(1, key.second)},
                                {"next", act.next},
                                {"write", std::string(1, act.write)},
                                {"move", std::string(1, move_char(act.move))}});
  }
  return j.dump(2) + "\n";
}

TuringMachine tm_identity() {
  TuringMachine m;
  m.states = {"s"};
  m.tape_alphabet = "01_";
  m.start = "s";
  m.accept = {"s"};
  return m;
}

TuringMachine tm_negation() {
  TuringMachine m;
  m.states = {"s", "h"};
  m.tape_alphabet = "01_";
  m.start = "s";
  m.accept = {"h"};
  m.transitions[{"s", '0'}] = {"s", '1', Move::Right};
  m.transitions[{"s", '1'}] = {"s", '0', Move::Right};
  m.transitions[{"s", '_'}] = {"h", '_', Move::Stay};
  return m;
}

std::vector<Configuration> simulate(const TuringMachine& m, std::string_view x, std::size_t step_budget) {
  for (char c : x) {
    if (c != '0' && c != '1') throw InputError("machine inputs are binary strings");
  }
  std::vector<Configuration> out;
  out.push_back({m.start, x.empty() ? std::string(1, m.blank) : std::string(x), 0});
  while (!m.is_halting(out.back().state)) {
    if (out.size() > step_budget) throw ResourceError("turing machine exceeded its step budget");
    Configuration c = out.back();
    const auto it = m.transitions.find({c.state, c.tape[c.head]});
    if (it == m.transitions.end()) {
      throw ContractError("no transition for state '" + c.state + "' reading '" + c.tape[c.head] + "'");
    }
    c.state = it->second.next;
    c.tape[c.head] = it->second.write;
    if (it->second.move == Move::Right) {
      if (++c.head == c.tape.size()) c.tape.push_back(m.blank);
    } else if (it->second.move == Move::Left && c.head > 0) {
      --c.head;
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::string tm_output(const TuringMachine& m, std::string_view x, std::size_t step_budget) {
  const std::string tape = simulate(m, x, step_budget).back().tape;
  const auto last = tape.find_last_not_of(m.blank);
  const std::string out = last == std::string::npos ? std::string() : tape.substr(0, last + 1);
  if (out.find_first_not_of("01") != std::string::npos) {
    throw ContractError("machine output '" + out + "' is not a binary string");
  }
  return out;
}

std::size_t tm_dollar_count(const TuringMachine& m, std::string_view x, std::size_t step_budget) {
  std::size_t total = 2;
  for (const auto& c : simulate(m, x, step_budget)) total += 2 * c.tape.size() + 3;
  return total;
}

}  // namespace pegsa
