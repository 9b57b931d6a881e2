#include "pegsa/grammar_text.hpp"

#include <cctype>
#include <optional>
#include <vector>

#include "pegsa/errors.hpp"

namespace pegsa {

namespace {

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

[[noreturn]] void fail_at(std::size_t line, const std::string& msg) {
  throw FormatError("grammar line " + std::to_string(line) + ": " + msg);
}

// Removes a trailing comment while respecting quoted symbols.
std::string strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '\\') ++i;
      else if (c == '\'') quoted = false;
    } else if (c == '\'') {
      quoted = true;
    } else if (c == '#') {
      return std::string(line.substr(0, i));
    }
  }
  return std::string(line);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

class ExprParser {
 public:
  ExprParser(std::string_view src, std::size_t line, std::string* seen)
      : s_(src), line_(line), seen_(seen) {}

  Expr parse_all() {
    Expr e = choice();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

  // Parses a quoted string starting at the current quote.
  std::string quoted() {
    ++pos_;
    std::string out;
    while (true) {
      if (pos_ >= s_.size()) fail("unterminated quote");
      char c = s_[pos_++];
      if (c == '\'') break;
      if (c == '\\') {
        if (pos_ >= s_.size()) fail("dangling escape");
        char esc = s_[pos_++];
        switch (esc) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case 'r': out += '\r'; break;
          case '\\':
          case '\'': out += esc; break;
          default: fail(std::string("unknown escape \\") + esc);
        }
      } else {
        out += c;
      }
    }
    return out;
  }

  std::size_t pos() const { return pos_; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) { fail_at(line_, msg); }

  bool at_primary_start() {
    skip_ws();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return c == '\'' || c == '(' || c == '.' || c == '!' || c == '&' || is_name_start(c);
  }

  Expr choice() {
    std::vector<Expr> alts{sequence()};
    skip_ws();
    while (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      alts.push_back(sequence());
      skip_ws();
    }
    return alts.size() == 1 ? std::move(alts[0]) : Expr::choice(std::move(alts));
  }

  Expr sequence() {
    std::vector<Expr> parts;
    while (at_primary_start()) parts.push_back(prefix());
    if (parts.empty()) fail("expected an expression");
    return parts.size() == 1 ? std::move(parts[0]) : Expr::seq(std::move(parts));
  }

  Expr prefix() {
    skip_ws();
    if (s_[pos_] == '!') {
      ++pos_;
      if (!at_primary_start()) fail("'!' needs an operand");
      return Expr::not_pred(prefix());
    }
    if (s_[pos_] == '&') {
      ++pos_;
      if (!at_primary_start()) fail("'&' needs an operand");
      return Expr::and_pred(prefix());
    }
    return postfix();
  }

  Expr postfix() {
    Expr e = primary();
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '*') {
        ++pos_;
        e = Expr::star(std::move(e));
      } else if (c == '+') {
        ++pos_;
        e = Expr::plus(std::move(e));
      } else if (c == '{') {
        std::size_t close = s_.find('}', pos_);
        if (close == std::string_view::npos) fail("unterminated repetition count");
        std::string_view digits = trim(s_.substr(pos_ + 1, close - pos_ - 1));
        if (digits.empty()) fail("empty repetition count");
        std::size_t n = 0;
        for (char d : digits) {
          if (!std::isdigit(static_cast<unsigned char>(d))) fail("bad repetition count");
          n = n * 10 + static_cast<std::size_t>(d - '0');
        }
        pos_ = close + 1;
        e = Expr::repeat(std::move(e), n);
      } else {
        break;
      }
    }
    return e;
  }

  Expr primary() {
    skip_ws();
    char c = s_[pos_];
    if (c == '\'') {
      std::string text = quoted();
      if (seen_) *seen_ += text;
      if (text.size() == 1) return Expr::terminal(text[0]);
      return Expr::literal(std::move(text));
    }
    if (c == '.') {
      ++pos_;
      return Expr::any();
    }
    if (c == '(') {
      ++pos_;
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == ')') {
        ++pos_;
        return Expr::empty();
      }
      Expr e = choice();
      skip_ws();
      if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return e;
    }
    std::size_t begin = pos_;
    while (pos_ < s_.size() && is_name_char(s_[pos_])) ++pos_;
    std::string name(s_.substr(begin, pos_ - begin));
    if (name == "FAIL") return Expr::fail();
    return Expr::ref(std::move(name));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::string* seen_;
};

struct LogicalLine {
  std::size_t number;
  std::string text;
};

enum class Prec { Choice, Seq, Prefix, Postfix };

void print_into(std::string& out, const Expr& e, Prec ctx);

void print_quoted(std::string& out, std::string_view text) {
  out += '\'';
  for (char c : text) {
    switch (c) {
      case '\'': out += "\\'"; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  out += '\'';
}

Prec precedence(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Choice: return Prec::Choice;
    case ExprKind::Seq: return Prec::Seq;
    case ExprKind::Not:
    case ExprKind::And: return Prec::Prefix;
    default: return Prec::Postfix;
  }
}

void print_into(std::string& out, const Expr& e, Prec ctx) {
  if (precedence(e) < ctx) {
    out += '(';
    print_into(out, e, Prec::Choice);
    out += ')';
    return;
  }
  switch (e.kind()) {
    case ExprKind::Empty: out += "()"; break;
    case ExprKind::Fail: out += "FAIL"; break;
    case ExprKind::Terminal: print_quoted(out, std::string(1, e.symbol())); break;
    case ExprKind::Ref: out += e.name(); break;
    case ExprKind::AnyChar: out += '.'; break;
    case ExprKind::Literal:
      // A one-symbol literal reads back as a terminal; both recognize the same strings.
      print_quoted(out, e.text());
      break;
    case ExprKind::Not:
      out += '!';
      print_into(out, e.child(0), Prec::Prefix);
      break;
    case ExprKind::And:
      out += '&';
      print_into(out, e.child(0), Prec::Prefix);
      break;
    case ExprKind::Star:
      print_into(out, e.child(0), Prec::Postfix);
      out += '*';
      break;
    case ExprKind::Plus:
      print_into(out, e.child(0), Prec::Postfix);
      out += '+';
      break;
    case ExprKind::Repeat:
      print_into(out, e.child(0), Prec::Postfix);
      out += '{' + std::to_string(e.count()) + '}';
      break;
    case ExprKind::Seq:
      print_into(out, e.left(), Prec::Prefix);
      out += ' ';
      print_into(out, e.right(), Prec::Seq);
      break;
    case ExprKind::Choice:
      print_into(out, e.left(), Prec::Seq);
      out += " / ";
      print_into(out, e.right(), Prec::Choice);
      break;
  }
}

}  // namespace

Grammar parse_grammar(std::string_view text) {
  std::vector<LogicalLine> lines;
  std::size_t number = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(begin, end - begin);
    ++number;
    begin = end + 1;
    std::string_view t = trim(raw);
    if (t.rfind("@terminals", 0) == 0) {
      lines.push_back({number, std::string(t)});
      continue;
    }
    std::string body = strip_comment(raw);
    std::string_view bt = trim(body);
    if (bt.empty()) continue;
    if (bt.front() == '/') {
      if (lines.empty() || lines.back().text.front() == '@') fail_at(number, "continuation without a rule");
      lines.back().text += ' ';
      lines.back().text += bt;
      continue;
    }
    lines.push_back({number, std::string(bt)});
  }

  std::optional<std::string> terminals;
  std::optional<std::string> start;
  std::string seen;
  Grammar g;
  for (const auto& [line, t] : lines) {
    if (t.front() == '@') {
      std::size_t sp = 1;
      while (sp < t.size() && is_name_char(t[sp])) ++sp;
      std::string directive = t.substr(1, sp - 1);
      std::string_view arg = trim(std::string_view(t).substr(sp));
      if (directive == "terminals") {
        if (terminals) fail_at(line, "duplicate @terminals");
        if (!arg.empty() && arg.front() == '\'') {
          ExprParser p(arg, line, nullptr);
          terminals = p.quoted();
          p.skip_ws();
          if (p.pos() != arg.size()) fail_at(line, "trailing text after @terminals");
        } else {
          std::string sigma;
          for (char c : arg)
            if (!std::isspace(static_cast<unsigned char>(c))) sigma += c;
          terminals = sigma;
        }
      } else if (directive == "start") {
        if (start) fail_at(line, "duplicate @start");
        std::string name(arg);
        if (name.empty() || !is_name_start(name[0])) fail_at(line, "@start needs a nonterminal name");
        for (char c : name)
          if (!is_name_char(c)) fail_at(line, "bad @start name");
        start = name;
      } else {
        fail_at(line, "unknown directive @" + directive);
      }
      continue;
    }
    std::size_t arrow = t.find("<-");
    if (arrow == std::string::npos) fail_at(line, "expected 'Name <- expr'");
    std::string name(trim(std::string_view(t).substr(0, arrow)));
    if (name.empty() || !is_name_start(name[0])) fail_at(line, "bad rule name");
    for (char c : name)
      if (!is_name_char(c)) fail_at(line, "bad rule name '" + name + "'");
    if (name == "FAIL") fail_at(line, "FAIL is reserved");
    if (g.has_rule(name)) fail_at(line, "duplicate rule " + name);
    ExprParser p(std::string_view(t).substr(arrow + 2), line, &seen);
    g.add_rule(name, p.parse_all());
  }
  if (g.size() == 0) throw FormatError("grammar has no rules");
  g.set_terminals(terminals ? *terminals : seen);
  if (start) g.set_start(*start);
  g.validate();
  return g;
}

std::string print_expr(const Expr& e) {
  std::string out;
  print_into(out, e, Prec::Choice);
  return out;
}

std::string print_grammar(const Grammar& g) {
  std::string out;
  if (!g.terminals().empty()) {
    out += "@terminals ";
    print_quoted(out, g.terminals());
    out += '\n';
  }
  if (g.size() > 0 && g.start() != g.rules().front().name) out += "@start " + g.start() + '\n';
  for (const auto& r : g.rules()) {
    out += r.name;
    out += " <- ";
    print_into(out, r.body, Prec::Choice);
    out += '\n';
  }
  return out;
}

std::string ascii_circle(std::string_view s) {
  static constexpr std::string_view circle = "\xE2\x88\x98";
  std::string out;
  for (std::size_t i = 0; i < s.size();) {
    if (s.substr(i, circle.size()) == circle) {
      out += 'o';
      i += circle.size();
    } else {
      out += s[i++];
    }
  }
  return out;
}

}  // namespace pegsa
