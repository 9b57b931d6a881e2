#include <map>
#include <string>
#include <vector>

#include "pattern_builder.hpp"
#include "pegsa/corpus.hpp"
#include "pegsa/errors.hpp"

namespace pegsa {

using namespace detail;

// Scaffold labels, first to last: xʳ ## c₀ # c₀ʳ ## c₁ # c₁ʳ ## … c_t # c_tʳ ## #…#
// followed by one node per output symbol. Each c_{i+1} is written while
// scanning c_iʳ backwards, one cell per $; the head cell carries (state, symbol).
// e0: previous node, e1: scan pointer, e2: last non-blank cell of the newest
// configuration (or the ## before it).
AutomatonDef automaton_universal(const TuringMachine& m) {
  m.validate();
  AutomatonDef a("01$", 3, 2);
  const std::size_t nq = m.states.size();
  std::map<std::string, std::size_t> qi;
  for (std::size_t i = 0; i < nq; ++i) qi[m.states[i]] = i;

  const LabelId xr[2] = {a.add_label("x0"), a.add_label("x1")};
  const LabelId yo[2] = {a.add_label("y0"), a.add_label("y1")};
  const LabelId hash = a.add_label("#");
  std::map<char, LabelId> plain;
  std::map<std::pair<std::size_t, char>, LabelId> head;
  for (char c : m.tape_alphabet) plain[c] = a.add_label(std::string(1, c));
  for (std::size_t q = 0; q < nq; ++q) {
    for (char c : m.tape_alphabet) head[{q, c}] = a.add_label(m.states[q] + ":" + c);
  }
  auto halting = [&](std::size_t q) { return m.is_halting(m.states[q]); };
  // Every cell label whose tape symbol is c.
  auto cells_with = [&](char c) {
    std::vector<LabelId> out{plain.at(c)};
    for (std::size_t q = 0; q < nq; ++q) out.push_back(head.at({q, c}));
    return out;
  };
  auto anchor = [&](char written) { return written == m.blank ? P({2}) : SELF(); };

  const StateId s_xr = a.add_state("XR");
  const StateId s_h1 = a.add_state("H1");
  const StateId s_c0f = a.add_state("C0F");
  const StateId s_c0 = a.add_state("C0");
  StateId s_rev[2], s_hh[2], s_pad[2];
  for (int h = 0; h < 2; ++h) {
    s_rev[h] = a.add_state(std::string("REV") + (h ? "_halted" : ""));
    s_hh[h] = a.add_state(std::string("HH") + (h ? "_halted" : ""));
  }
  s_pad[0] = a.add_state("PAD");
  s_pad[1] = a.add_state("PAD_empty", true);
  // NX[first][incoming][halted]; incoming == nq means no head arriving from the left.
  std::vector<std::vector<std::vector<StateId>>> s_nx(2, std::vector<std::vector<StateId>>(nq + 1));
  for (int first = 0; first < 2; ++first) {
    for (std::size_t inc = 0; inc <= nq; ++inc) {
      for (int h = 0; h < 2; ++h) {
        std::string name = "NX";
        if (first) name += "_first";
        if (inc < nq) name += "_from_" + m.states[inc];
        if (h) name += "_halted";
        s_nx[first][inc].push_back(a.add_state(name));
      }
    }
  }
  const StateId s_out = a.add_state("OUT");
  const StateId s_done = a.add_state("OUT_DONE", true);
  const StateId s_rej = a.add_state("REJ");
  a.set_start(s_xr);

  const std::size_t q0 = qi.at(m.start);
  const int h0 = halting(q0) ? 1 : 0;
  RuleWriter w(a);

  for (int b = 0; b < 2; ++b) w.add(s_xr, static_cast<char>('0' + b), {}, s_xr, xr[b], {L(), N(), N()});
  w.add(s_xr, '$', {}, s_h1, hash, {L(), L(), N()});
  w.add(s_h1, '$', {}, s_c0f, hash, {L(), P({1}), SELF()});

  // c₀: x in order, read backwards off xʳ, head on cell 0.
  for (int b = 0; b < 2; ++b) {
    const char c = static_cast<char>('0' + b);
    w.add(s_c0f, '$', {has_label({1}, xr[b])}, s_c0, head.at({q0, c}), {L(), P({1, 0}), SELF()});
    w.add(s_c0, '$', {has_label({1}, xr[b])}, s_c0, plain.at(c), {L(), P({1, 0}), SELF()});
  }
  w.add(s_c0f, '$', {is_base({1})}, s_c0, head.at({q0, m.blank}), {L(), P({1}), P({2})});
  w.add(s_c0, '$', {is_base({1})}, s_rev[h0], hash, {L(), L(), P({2})});

  std::vector<LabelId> all_cells;
  for (const auto& [c, g] : plain) all_cells.push_back(g);
  for (const auto& [k, g] : head) all_cells.push_back(g);

  for (int h = 0; h < 2; ++h) {
    w.add(s_rev[h], '$', {has_label({1}, hash)}, s_hh[h], hash, {L(), L(), P({2})});
    for (LabelId g : all_cells) w.add(s_rev[h], '$', {has_label({1}, g)}, s_rev[h], g, {L(), P({1, 0}), P({2})});
  }
  w.add(s_hh[0], '$', {}, s_nx[1][nq][0], hash, {L(), P({1}), SELF()});
  w.add(s_hh[1], '$', {has_label({2}, hash)}, s_pad[1], hash, {L(), N(), P({2})});
  w.add(s_hh[1], '$', {}, s_pad[0], hash, {L(), N(), P({2})});

  for (int first = 0; first < 2; ++first) {
    for (std::size_t inc = 0; inc <= nq; ++inc) {
      for (int h = 0; h < 2; ++h) {
        const StateId from = s_nx[first][inc][h];
        auto after = [&](std::size_t incoming, bool halted) { return s_nx[0][incoming][halted ? 1 : 0]; };
        // End of c_i: grow the tape if the head ran off it, else close c_{i+1}.
        if (inc < nq) {
          w.add(from, '$', {has_label({1}, hash)}, after(nq, h || halting(inc)), head.at({inc, m.blank}),
                {L(), P({1}), P({2})});
        } else {
          w.add(from, '$', {has_label({1}, hash)}, s_rev[h], hash, {L(), L(), P({2})});
        }
        for (char c : m.tape_alphabet) {
          if (inc < nq) {
            w.add(from, '$', {has_label({1}, plain.at(c))}, after(nq, h || halting(inc)), head.at({inc, c}),
                  {L(), P({1, 0}), anchor(c)});
            continue;
          }
          for (std::size_t q = 0; q < nq; ++q) {
            const auto it = m.transitions.find({m.states[q], c});
            if (it == m.transitions.end()) continue;
            const auto& act = it->second;
            const std::size_t nxt = qi.at(act.next);
            const char wr = act.write;
            if (act.move == Move::Stay || (act.move == Move::Left && first)) {
              w.add(from, '$', {has_label({1}, head.at({q, c}))}, after(nq, h || halting(nxt)), head.at({nxt, wr}),
                    {L(), P({1, 0}), anchor(wr)});
            } else if (act.move == Move::Left) {
              w.add(from, '$', {has_label({1}, head.at({q, c}))}, after(nq, h), plain.at(wr),
                    {L(), P({1, 0}), anchor(wr)});
            } else {
              w.add(from, '$', {has_label({1}, head.at({q, c}))}, after(nxt, h), plain.at(wr),
                    {L(), P({1, 0}), anchor(wr)});
            }
          }
          // The head one cell to the right moves left onto this cell.
          for (const auto& [key, act] : m.transitions) {
            if (act.move != Move::Left) continue;
            const std::size_t nxt = qi.at(act.next);
            w.add(from, '$', {has_label({1}, plain.at(c)), has_label({1, 0}, head.at({qi.at(key.first), key.second}))},
                  after(nq, h || halting(nxt)), head.at({nxt, c}), {L(), P({1, 0}), anchor(c)});
          }
          w.add(from, '$', {has_label({1}, plain.at(c))}, after(nq, h), plain.at(c), {L(), P({1, 0}), anchor(c)});
        }
      }
    }
  }

  for (int e = 0; e < 2; ++e) w.add(s_pad[e], '$', {}, s_pad[e], hash, {L(), N(), P({2})});
  // Output f(x)ʳ: walk the final configuration backwards from its last
  // non-blank cell until the ## in front of it.
  for (int b = 0; b < 2; ++b) {
    const char sym = static_cast<char>('0' + b);
    for (LabelId g : cells_with(sym)) {
      w.add(s_pad[0], sym, {has_label({2}, g), has_label({2, 0}, hash)}, s_done, yo[b], {L(), P({2, 0}), N()});
      w.add(s_pad[0], sym, {has_label({2}, g)}, s_out, yo[b], {L(), P({2, 0}), N()});
      w.add(s_out, sym, {has_label({1}, g), has_label({1, 0}, hash)}, s_done, yo[b], {L(), P({1, 0}), N()});
      w.add(s_out, sym, {has_label({1}, g)}, s_out, yo[b], {L(), P({1, 0}), N()});
    }
  }
  for (StateId q = 0; q < static_cast<StateId>(a.state_count()); ++q) w.add(q, std::nullopt, {}, s_rej, hash, {L(), N(), N()});
  return a;
}

}  // namespace pegsa
