#include <string>
#include <vector>

#include "pattern_builder.hpp"
#include "pegsa/corpus.hpp"
#include "pegsa/errors.hpp"

namespace pegsa {

using namespace detail;

AutomatonDef automaton_power_length(std::size_t ell) {
  if (ell < 2) throw ContractError("power-length automata need ell >= 2");
  AutomatonDef a("a", 2, 2);
  const LabelId boxed = a.add_label("⊠");
  const LabelId box = a.add_label("□");

  const StateId q0 = a.add_state("q0");
  std::vector<StateId> q(ell + 1), q1(ell), q2(ell);
  for (std::size_t i = 1; i <= ell; ++i) q[i] = a.add_state("q" + std::to_string(i), i == 1 || i == ell);
  for (std::size_t i = 1; i < ell; ++i) q1[i] = a.add_state("q'" + std::to_string(i));
  for (std::size_t i = 1; i < ell; ++i) q2[i] = a.add_state("q''" + std::to_string(i), i == ell - 1);
  a.set_start(q0);

  RuleWriter w(a);
  w.add(q0, 'a', {}, q[1], boxed, {L(), N()});
  for (std::size_t i = 1; i < ell; ++i) w.add(q[i], 'a', {}, q[i + 1], box, {L(), N()});
  w.add(q[ell], 'a', {}, q1[1], box, {L(), L()});
  for (std::size_t i = 1; i + 1 < ell; ++i) w.add(q1[i], 'a', {}, q1[i + 1], box, {L(), P({1})});
  // The backtracking edge walks back one node per ℓ−1 steps; reaching ⊠
  // means the length is a power of ℓ.
  w.add(q1[ell - 1], 'a', {has_label({}, box), has_label({0}, box), has_label({1}, box), has_label({1, 0}, box)}, q1[1], box,
        {L(), P({1, 0})});
  w.add(q1[ell - 1], 'a', {has_label({}, box), has_label({0}, box), has_label({1}, box), has_label({1, 0}, boxed)}, q2[1], box,
        {L(), P({1, 0})});
  for (std::size_t i = 1; i + 1 < ell; ++i) w.add(q2[i], 'a', {}, q2[i + 1], box, {L(), P({1})});
  w.add(q2[ell - 1], 'a', {}, q1[1], box, {L(), L()});
  return a;
}

AutomatonDef automaton_sometimes_palindromes() {
  AutomatonDef a("01", 2, 2);
  LabelId boxed[2], box[2];
  boxed[0] = a.add_label("⊠0");
  boxed[1] = a.add_label("⊠1");
  box[0] = a.add_label("□0");
  box[1] = a.add_label("□1");

  // _ok / _bad: whether every comparison since the current length doubling
  // began has matched.
  const StateId q0 = a.add_state("q0");
  const StateId q1 = a.add_state("q1");
  const StateId q2[2] = {a.add_state("q2_bad"), a.add_state("q2_ok", true)};
  const StateId qa[2] = {a.add_state("q'1_bad"), a.add_state("q'1_ok")};
  const StateId qb[2] = {a.add_state("q''1_bad"), a.add_state("q''1_ok", true)};
  a.set_start(q0);

  RuleWriter w(a);
  for (int s = 0; s < 2; ++s) {
    const char sym = static_cast<char>('0' + s);
    w.add(q0, sym, {}, q1, boxed[s], {L(), N()});
    // The new node's partner is the top itself.
    for (int b = 0; b < 2; ++b) {
      w.add(q1, sym, {has_label({}, boxed[b])}, q2[s == b], box[s], {L(), N()});
      for (int f = 0; f < 2; ++f) w.add(q2[f], sym, {has_label({}, box[b])}, qa[s == b], box[s], {L(), L()});
      for (int f = 0; f < 2; ++f) w.add(qb[f], sym, {has_label({}, box[b])}, qa[s == b], box[s], {L(), L()});
    }
    // Mirrored partner one node behind the backtracking edge's target.
    for (int f = 0; f < 2; ++f) {
      for (int b = 0; b < 2; ++b) {
        const bool ok = f == 1 && s == b;
        w.add(qa[f], sym, {has_label({1, 0}, box[b])}, qa[ok], box[s], {L(), P({1, 0})});
        w.add(qa[f], sym, {has_label({1, 0}, boxed[b])}, qb[ok], box[s], {L(), P({1, 0})});
      }
    }
  }
  return a;
}

AutomatonDef automaton_counting() {
  AutomatonDef a("01#o", 2, 2);
  const LabelId g0 = a.add_label("0");
  const LabelId g1 = a.add_label("1");
  const LabelId gh = a.add_label("#");
  const LabelId go = a.add_label("o");
  const LabelId digit[2] = {g0, g1};

  const StateId s0 = a.add_state("S0");
  const StateId b0a = a.add_state("B0a");
  const StateId b0b = a.add_state("B0b");
  const StateId b0c = a.add_state("B0c");
  const StateId acc = a.add_state("ACC", true);
  // FH<c>: writing (n)₂ʳ with carry c while scanning (n−1)₂ backwards.
  const StateId fh[2] = {a.add_state("FH0"), a.add_state("FH1")};
  const StateId fh_done = a.add_state("FH_DONE");
  // SH: copying the first half in reverse.
  const StateId sh = a.add_state("SH");
  const StateId dead = a.add_state("DEAD");
  a.set_start(s0);

  RuleWriter w(a);
  w.add(s0, '#', {}, b0a, gh, {L(), N()});
  w.add(b0a, '0', {}, b0b, g0, {L(), N()});
  w.add(b0b, 'o', {}, b0c, go, {L(), N()});
  w.add(b0c, '0', {}, acc, g0, {L(), N()});
  w.add(acc, '#', {}, fh[1], gh, {L(), L()});
  for (int c = 0; c < 2; ++c) {
    for (int x = 0; x < 2; ++x) {
      const int y = x ^ c;
      w.add(fh[c], static_cast<char>('0' + y), {has_label({1}, digit[x])}, fh[x & c], digit[y], {L(), P({1, 0})});
    }
  }
  w.add(fh[0], 'o', {has_label({1}, go)}, sh, go, {L(), L()});
  w.add(fh[1], '1', {has_label({1}, go)}, fh_done, g1, {L(), P({1})});
  w.add(fh_done, 'o', {}, sh, go, {L(), L()});
  for (int x = 0; x < 2; ++x) {
    const char sym = static_cast<char>('0' + x);
    w.add(sh, sym, {has_label({1}, digit[x]), has_label({1, 0}, gh)}, acc, digit[x], {L(), P({1, 0})});
    w.add(sh, sym, {has_label({1}, digit[x])}, sh, digit[x], {L(), P({1, 0})});
  }
  for (StateId q = 0; q < static_cast<StateId>(a.state_count()); ++q) w.add(q, std::nullopt, {}, dead, gh, {L(), N()});
  return a;
}

AutomatonDef automaton_K_reverse() {
  AutomatonDef a("01#", 3, 2);
  const LabelId digit[2] = {a.add_label("0"), a.add_label("1")};
  const LabelId gh = a.add_label("#");

  // e0: previous node, e1: last symbol of x, e2: scan position inside x.
  enum Status { More = 0, Done = 1, Bad = 2 };
  const StateId x = a.add_state("X");
  StateId wst[2][3];
  const char* status_name[3] = {"more", "done", "bad"};
  for (int found = 0; found < 2; ++found) {
    for (int st = 0; st < 3; ++st) {
      wst[found][st] = a.add_state(std::string(found ? "W_found_" : "W_") + status_name[st], found || st == Done);
    }
  }
  a.set_start(x);

  RuleWriter w(a);
  for (int b = 0; b < 2; ++b) w.add(x, static_cast<char>('0' + b), {}, x, digit[b], {L(), N(), N()});
  w.add(x, '#', {is_base({})}, wst[0][Done], gh, {L(), L(), L()});
  w.add(x, '#', {}, wst[0][More], gh, {L(), L(), L()});

  for (int found = 0; found < 2; ++found) {
    for (int st = 0; st < 3; ++st) {
      const StateId from = wst[found][st];
      const int next_found = found | (st == Done);
      w.add(from, '#', {is_base({1})}, wst[next_found][Done], gh, {L(), P({1}), P({1})});
      w.add(from, '#', {}, wst[next_found][More], gh, {L(), P({1}), P({1})});
      for (int b = 0; b < 2; ++b) {
        const char sym = static_cast<char>('0' + b);
        if (st == More) {
          w.add(from, sym, {has_label({2}, digit[b]), is_base({2, 0})}, wst[found][Done], digit[b],
                {L(), P({1}), P({2, 0})});
          w.add(from, sym, {has_label({2}, digit[b])}, wst[found][More], digit[b], {L(), P({1}), P({2, 0})});
        }
        w.add(from, sym, {}, wst[found][Bad], digit[b], {L(), P({1}), N()});
      }
    }
  }
  return a;
}

namespace {

// H labels pair the structural symbol with the input bit read at the node.
struct HLabels {
  LabelId of[4][2];  // structural index: 0, 1, o, #
  LabelId post;
};

constexpr int kZero = 0, kOne = 1, kCircle = 2, kHash = 3;
constexpr const char* kStructural[4] = {"0", "1", "o", "#"};

}  // namespace

AutomatonDef automaton_H() {
  AutomatonDef a("01#", 4, 2);
  HLabels lab{};
  for (int s = 0; s < 4; ++s) {
    for (int b = 0; b < 2; ++b) lab.of[s][b] = a.add_label(std::string(kStructural[s]) + "/" + std::to_string(b));
  }
  lab.post = a.add_label("p");

  // e0, e1: tree edges; e2: previous node; e3: scan pointer (construction) or
  // tree cursor (after #).
  const StateId init[4] = {a.add_state("INIT0"), a.add_state("INIT1"), a.add_state("INIT2"), a.add_state("INIT3")};
  const StateId first = a.add_state("FIRST");
  const StateId carry = a.add_state("CARRY");
  const StateId copy = a.add_state("COPY");
  const StateId open = a.add_state("OPEN");
  const StateId second = a.add_state("SECOND");
  const StateId addr[2] = {a.add_state("ADDR0"), a.add_state("ADDR1", true)};
  const StateId rej = a.add_state("REJ");
  a.set_start(init[0]);
  const StateId construction[] = {init[0], init[1], init[2], init[3], first, carry, copy, open, second};

  RuleWriter w(a);
  auto ptr_is = [&](int s, int b) { return has_label({3}, lab.of[s][b]); };

  for (int b = 0; b < 2; ++b) {
    const char sym = static_cast<char>('0' + b);
    auto out = [&](int s) { return lab.of[s][b]; };
    w.add(init[0], sym, {}, init[1], out(kZero), {N(), N(), L(), N()});
    w.add(init[1], sym, {}, init[2], out(kCircle), {N(), N(), L(), N()});
    w.add(init[2], sym, {}, init[3], out(kZero), {N(), N(), L(), N()});
    w.add(init[3], sym, {}, first, out(kHash), {N(), N(), L(), L()});
    for (int pb = 0; pb < 2; ++pb) {
      // First digit of a new block; the top is the outer separator s.
      w.add(first, sym, {ptr_is(kZero, pb)}, copy, out(kOne), {L(), N(), L(), P({3, 2})});
      w.add(first, sym, {ptr_is(kOne, pb)}, carry, out(kZero), {P({3}), L(), L(), P({3, 2})});
      // Carry propagation: y_i = 0 roots a tree of depth i.
      w.add(carry, sym, {ptr_is(kOne, pb)}, carry, out(kZero), {P({3, 0}), L(), L(), P({3, 2})});
      w.add(carry, sym, {ptr_is(kZero, pb)}, copy, out(kOne), {L(), N(), L(), P({3, 2})});
      w.add(carry, sym, {ptr_is(kCircle, pb)}, open, out(kOne), {L(), N(), L(), P({3})});
      for (int s : {kZero, kOne}) {
        w.add(copy, sym, {ptr_is(s, pb)}, copy, out(s), {P({3, 0}), P({3, 1}), L(), P({3, 2})});
        w.add(second, sym, {ptr_is(s, pb)}, second, out(s), {P({3, 0}), P({3, 1}), L(), P({3, 2})});
      }
      w.add(copy, sym, {ptr_is(kCircle, pb)}, second, out(kCircle), {N(), N(), L(), L()});
      w.add(second, sym, {ptr_is(kHash, pb)}, first, out(kHash), {N(), N(), L(), L()});
    }
    w.add(open, sym, {}, second, out(kCircle), {N(), N(), L(), L()});
  }

  // After #, bits walk the tree rooted at the top's first edge.
  for (StateId q : construction) {
    for (int s = 0; s < 4; ++s) {
      for (int pb = 0; pb < 2; ++pb) {
        w.add(q, '#', {has_label({0}, lab.of[s][pb])}, addr[pb], lab.post, {N(), N(), L(), P({0})});
      }
    }
  }
  for (StateId q : addr) {
    for (int step = 0; step < 2; ++step) {
      const char sym = static_cast<char>('0' + step);
      for (int s = 0; s < 4; ++s) {
        for (int pb = 0; pb < 2; ++pb) {
          w.add(q, sym, {has_label({3, static_cast<std::uint16_t>(step)}, lab.of[s][pb])}, addr[pb], lab.post,
                {N(), N(), L(), P({3, static_cast<std::uint16_t>(step)})});
        }
      }
    }
  }
  for (StateId q = 0; q < static_cast<StateId>(a.state_count()); ++q) {
    w.add(q, std::nullopt, {}, rej, lab.post, {N(), N(), L(), N()});
  }
  return a;
}

}  // namespace pegsa
