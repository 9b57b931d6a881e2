#include <unordered_set>
#include <utility>

#include "pegsa/errors.hpp"
#include "pegsa/peg.hpp"

namespace pegsa {

namespace {

class NameAllocator {
 public:
  explicit NameAllocator(const Grammar& g) {
    for (const auto& r : g.rules()) taken_.insert(r.name);
  }

  std::string claim(const std::string& base) {
    std::string name = base;
    for (std::size_t n = 1; taken_.count(name); ++n) name = base + "_" + std::to_string(n);
    taken_.insert(name);
    return name;
  }

  /// Next `Parent_<n>` name, skipping anything already in use.
  std::string next_child(const std::string& parent, std::size_t& counter) {
    std::string name;
    do {
      name = parent + "_" + std::to_string(++counter);
    } while (taken_.count(name));
    taken_.insert(name);
    return name;
  }

 private:
  std::unordered_set<std::string> taken_;
};

class Desugarer {
 public:
  explicit Desugarer(const Grammar& g) : g_(g), names_(g) {}

  Grammar run() {
    Grammar out(g_.terminals(), g_.start());
    for (const auto& r : g_.rules()) out.add_rule(r.name, expand(r.name, r.body));
    // Star rules may themselves create further star rules while expanding.
    for (std::size_t i = 0; i < pending_.size(); ++i) {
      auto [name, owner, child] = pending_[i];
      Expr body = Expr::choice(Expr::seq(expand(owner, child), Expr::ref(name)), Expr::empty());
      extra_.emplace_back(name, std::move(body));
    }
    for (auto& [name, body] : extra_) out.add_rule(name, std::move(body));
    return out;
  }

 private:
  struct Pending {
    std::string name;
    std::string owner;
    Expr child;
  };

  Expr star_ref(const std::string& owner, const Expr& child) {
    for (const auto& p : pending_)
      if (p.child == child) return Expr::ref(p.name);
    std::string base = child.kind() == ExprKind::Ref ? child.name() + "star" : owner + "_star";
    std::string name = names_.claim(base);
    pending_.push_back(Pending{name, owner, child});
    return Expr::ref(name);
  }

  Expr expand(const std::string& owner, const Expr& e) {
    switch (e.kind()) {
      case ExprKind::Empty:
      case ExprKind::Fail:
      case ExprKind::Terminal:
      case ExprKind::Ref:
        return e;
      case ExprKind::Not:
        return Expr::not_pred(expand(owner, e.child(0)));
      case ExprKind::And:
        return Expr::and_pred(expand(owner, e.child(0)));
      case ExprKind::Seq:
        return Expr::seq(expand(owner, e.left()), expand(owner, e.right()));
      case ExprKind::Choice:
        return Expr::choice(expand(owner, e.left()), expand(owner, e.right()));
      case ExprKind::Star:
        return star_ref(owner, e.child(0));
      case ExprKind::Plus:
        return Expr::seq(expand(owner, e.child(0)), star_ref(owner, e.child(0)));
      case ExprKind::AnyChar: {
        if (g_.terminals().empty()) throw FormatError("'.' requires a declared terminal alphabet");
        std::vector<Expr> alts;
        for (char c : g_.terminals()) alts.push_back(Expr::terminal(c));
        return Expr::choice(std::move(alts));
      }
      case ExprKind::Literal: {
        std::vector<Expr> parts;
        for (char c : e.text()) parts.push_back(Expr::terminal(c));
        return Expr::seq(std::move(parts));
      }
      case ExprKind::Repeat: {
        std::vector<Expr> parts(e.count(), expand(owner, e.child(0)));
        return Expr::seq(std::move(parts));
      }
    }
    throw InternalError("desugar: unknown expression kind");
  }

  const Grammar& g_;
  NameAllocator names_;
  std::vector<Pending> pending_;
  std::vector<std::pair<std::string, Expr>> extra_;
};

class Normalizer {
 public:
  explicit Normalizer(const Grammar& g) : g_(g), names_(g) {}

  Grammar run() {
    for (const auto& r : g_.rules()) {
      std::size_t counter = 0;
      owner_ = r.name;
      counter_ = &counter;
      // Reserve the slot so the original rule precedes its helpers.
      std::size_t slot = out_.size();
      out_.emplace_back(r.name, Expr::fail());
      out_[slot].second = top(r.body);
    }
    Grammar g(g_.terminals(), g_.start());
    for (auto& [name, body] : out_) g.add_rule(name, std::move(body));
    return g;
  }

 private:
  std::string fresh() { return names_.next_child(owner_, *counter_); }

  // Returns a nonterminal standing for `e`, creating a helper rule if needed.
  Expr as_ref(const Expr& e) {
    if (e.kind() == ExprKind::Ref) return e;
    std::string name = fresh();
    std::size_t slot = out_.size();
    out_.emplace_back(name, Expr::fail());
    out_[slot].second = top(e);
    return Expr::ref(name);
  }

  // Body of a rule in normal form for expression `e`.
  Expr top(const Expr& e) {
    switch (e.kind()) {
      case ExprKind::Empty:
      case ExprKind::Fail:
      case ExprKind::Terminal:
        return e;
      case ExprKind::Ref: {
        // A <- B has no binary form; use A <- B E with E <- ().
        std::string eps = fresh();
        out_.emplace_back(eps, Expr::empty());
        return Expr::seq(e, Expr::ref(eps));
      }
      case ExprKind::Not:
        return Expr::not_pred(as_ref(e.child(0)));
      case ExprKind::And:
        return Expr::and_pred(as_ref(e.child(0)));
      case ExprKind::Seq: {
        Expr l = as_ref(e.left());
        return Expr::seq(std::move(l), as_ref(e.right()));
      }
      case ExprKind::Choice: {
        Expr l = as_ref(e.left());
        return Expr::choice(std::move(l), as_ref(e.right()));
      }
      default:
        throw InternalError("normalize: sugar survived desugaring");
    }
  }

  const Grammar& g_;
  NameAllocator names_;
  std::vector<std::pair<std::string, Expr>> out_;
  std::string owner_;
  std::size_t* counter_ = nullptr;
};

}  // namespace

Grammar desugar(const Grammar& g) {
  if (g.is_desugared()) return g;
  return Desugarer(g).run();
}

Grammar normalize(const Grammar& g) {
  if (!g.is_desugared()) return normalize(desugar(g));
  return Normalizer(g).run();
}

}  // namespace pegsa
