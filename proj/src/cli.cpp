#include "pegsa/cli.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "pegsa/analysis.hpp"
#include "pegsa/automaton_io.hpp"
#include "pegsa/corpus.hpp"
#include "pegsa/errors.hpp"
#include "pegsa/explore.hpp"
#include "pegsa/grammar_text.hpp"
#include "pegsa/recognize.hpp"
#include "pegsa/tabular.hpp"
#include "pegsa/translate.hpp"

namespace pegsa {

namespace {

class NoInput : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NoInput("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// "a^N" abbreviates N copies of the symbol a.
std::string expand_input(const std::string& s) {
  static const std::regex power(R"(^(.)\^([0-9]+)$)");
  std::smatch m;
  if (std::regex_match(s, m, power)) return std::string(std::stoul(m[2].str()), m[1].str()[0]);
  return ascii_circle(s);
}

std::string read_stdin_input() {
  std::string s((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

struct InputArg {
  std::string text;
  bool from_stdin = false;

  std::string get() const {
    if (from_stdin) return expand_input(read_stdin_input());
    return expand_input(text);
  }
};

void add_input(CLI::App* cmd, InputArg& in) {
  cmd->add_option("input", in.text, "Input string; a^N abbreviates N copies of a");
  cmd->add_flag("--stdin", in.from_stdin, "Read the input string from standard input");
}

Grammar load_grammar(const std::string& path) { return parse_grammar(read_file(path)); }
AutomatonDef load_automaton(const std::string& path) { return automaton_from_json(read_file(path)); }

std::string join(const std::vector<std::size_t>& xs) {
  std::string out;
  for (std::size_t x : xs) out += (out.empty() ? "" : " ") + std::to_string(x);
  return out;
}

Decider parse_decider(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw CLI::ValidationError("decider", "expected kind:argument, got " + spec);
  const std::string kind = spec.substr(0, colon), arg = spec.substr(colon + 1);
  if (kind == "oracle") {
    auto d = find_oracle(arg);
    if (!d) throw CLI::ValidationError("decider", "unknown oracle " + arg);
    return *d;
  }
  if (kind == "grammar") return grammar_decider(load_grammar(arg), arg);
  if (kind == "automaton") return automaton_decider(load_automaton(arg), false, arg);
  if (kind == "reversed") return automaton_decider(load_automaton(arg), true, arg);
  if (kind == "corpus") {
    if (auto g = corpus_grammar(arg)) return grammar_decider(*g, arg);
    if (auto a = corpus_automaton(arg)) return automaton_decider(*a, false, arg);
    throw CLI::ValidationError("decider", "unknown corpus entry " + arg);
  }
  throw CLI::ValidationError("decider", "unknown decider kind " + kind);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parsing expression grammars and scaffolding automata"};
  app.name("pegsa");
  app.require_subcommand(1);
  int status = exit_code::ok;

  // peg
  auto* peg = app.add_subcommand("peg", "Grammar operations")->require_subcommand(1);
  std::string grammar_path;
  InputArg peg_input;
  std::string start_override;
  auto* recognize_cmd = peg->add_subcommand("recognize", "Print member, nonmember or diverges");
  recognize_cmd->add_option("grammar", grammar_path, "Grammar file")->required();
  add_input(recognize_cmd, peg_input);
  recognize_cmd->add_option("--start", start_override, "Nonterminal to recognize instead of the start symbol");
  recognize_cmd->callback([&] {
    Grammar g = load_grammar(grammar_path);
    if (!start_override.empty()) g.set_start(start_override);
    const std::string input = peg_input.get();
    Recognizer rec(g);
    const Outcome o = rec.recognize(g.start(), input);
    if (o.diverged()) {
      out << "diverges\n";
      err << "divergence at nonterminal " << o.nonterminal << ", position " << o.position << "\n";
      status = exit_code::diverges;
    } else if (o.accepted() && o.length == input.size()) {
      out << "member\n";
    } else {
      out << "nonmember\n";
      status = exit_code::negative;
    }
  });

  auto* lint_cmd = peg->add_subcommand("lint", "Report cycles of calls that consume nothing");
  lint_cmd->add_option("grammar", grammar_path, "Grammar file")->required();
  lint_cmd->callback([&] {
    const auto report = check_left_recursion(load_grammar(grammar_path));
    if (report.clean()) {
      out << "clean\n";
      return;
    }
    for (const auto& cycle : report.cycles) {
      out << "cycle:";
      for (const auto& a : cycle) out << " " << a;
      out << "\n";
    }
    status = exit_code::negative;
  });

  auto* normalize_cmd = peg->add_subcommand("normalize", "Print the binary normal form");
  normalize_cmd->add_option("grammar", grammar_path, "Grammar file")->required();
  normalize_cmd->callback([&] { out << print_grammar(normalize(load_grammar(grammar_path))); });

  // sa
  auto* sa = app.add_subcommand("sa", "Scaffolding automaton operations")->require_subcommand(1);
  std::string automaton_path, dot_path;
  InputArg sa_input;
  auto* run_cmd = sa->add_subcommand("run", "Run an automaton and report acceptance");
  run_cmd->add_option("automaton", automaton_path, "Automaton JSON file")->required();
  add_input(run_cmd, sa_input);
  run_cmd->add_option("--dot", dot_path, "Write the final scaffold as Graphviz DOT");
  run_cmd->callback([&] {
    const AutomatonDef a = load_automaton(automaton_path);
    const RunTrace t = run(a, sa_input.get());
    out << (t.accepted() ? "accept" : "reject") << "\n";
    out << "final state: " << a.state_name(t.final_state()) << "\n";
    out << "accepting prefixes: " << join(t.accepting_prefixes()) << "\n";
    if (!dot_path.empty()) {
      std::ofstream dot(dot_path, std::ios::binary);
      if (!dot) throw NoInput("cannot write " + dot_path);
      dot << export_dot(a, t);
    }
    if (!t.accepted()) status = exit_code::negative;
  });

  // translate
  auto* translate = app.add_subcommand("translate", "Grammar/automaton translations")->require_subcommand(1);
  std::size_t bound = 0;
  std::string mode = "observed";
  auto* peg2sa = translate->add_subcommand("peg2sa", "Automaton deciding the reversed language");
  peg2sa->add_option("grammar", grammar_path, "Grammar file")->required();
  peg2sa->add_option("--materialize", bound, "Tabulate the transitions used on inputs up to this length")
      ->required();
  peg2sa->add_option("--mode", mode, "observed (default) or concrete; concrete patterns grow like d^k")->check(CLI::IsMember({"concrete", "observed"}));
  peg2sa->callback([&] {
    const AutomatonDef computed = peg_to_automaton(normalize(load_grammar(grammar_path)));
    const auto table =
        materialize(computed, bound, mode == "observed" ? MaterializeMode::Observed : MaterializeMode::Concrete);
    out << automaton_to_json(table.automaton);
  });
  auto* sa2peg = translate->add_subcommand("sa2peg", "Grammar for the reversed language");
  sa2peg->add_option("automaton", automaton_path, "Automaton JSON file")->required();
  sa2peg->add_option("--expand", bound, "First replace wildcard rules by instances reachable up to this length");
  sa2peg->callback([&] {
    AutomatonDef a = load_automaton(automaton_path);
    if (bound > 0) a = expand_patterns(a, bound).automaton;
    out << print_grammar(automaton_to_peg(a));
  });

  // corpus
  auto* corpus = app.add_subcommand("corpus", "Built-in grammars, automata and machines")->require_subcommand(1);
  corpus->add_subcommand("list", "List the entries")->callback([&] {
    for (const auto& e : corpus_entries()) out << e.name << "\t" << e.kind << "\t" << e.description << "\n";
  });
  std::string entry;
  auto* emit = corpus->add_subcommand("emit", "Print one entry as grammar text or JSON");
  emit->add_option("name", entry, "Entry name")->required();
  emit->callback([&] { out << corpus_emit(entry); });

  // crosscheck
  std::size_t max_len = 0;
  bool json = false;
  auto* crosscheck = app.add_subcommand("crosscheck", "Check x in L(G) iff the automaton accepts reverse(x)");
  crosscheck->add_option("grammar", grammar_path, "Grammar file")->required();
  crosscheck->add_option("automaton", automaton_path, "Automaton JSON file")->required();
  crosscheck->add_option("--maxlen", max_len, "Longest input checked")->required();
  crosscheck->add_flag("--json", json, "Print a JSON summary");
  crosscheck->callback([&] {
    const auto report = cross_check(load_grammar(grammar_path), load_automaton(automaton_path), max_len);
    if (json) {
      out << summary_json(report.checked, report.counterexamples, std::nullopt);
    } else {
      out << "checked " << report.checked << " inputs\n";
      for (const auto& c : report.counterexamples) out << "counterexample: \"" << c << "\"\n";
      if (report.suppressed) out << "... and " << report.suppressed << " more\n";
      out << (report.ok() ? "agree" : "disagree") << "\n";
    }
    if (!report.ok()) status = exit_code::negative;
  });

  // eqclasses
  std::string decider_spec, prefix_file, suffix_alphabet;
  std::size_t prefix_len = 0, suffix_len = 0;
  auto* eq = app.add_subcommand("eqclasses", "Count (L, l, m)-equivalence classes");
  eq->add_option("decider", decider_spec, "oracle:NAME, corpus:NAME, grammar:FILE, automaton:FILE or reversed:FILE")
      ->required();
  eq->add_option("--prefix-len", prefix_len, "Prefix length l")->required();
  eq->add_option("--suffix-len", suffix_len, "Suffix length m")->required();
  eq->add_option("--prefix-file", prefix_file, "Only these prefixes, one per line");
  eq->add_option("--suffix-alphabet", suffix_alphabet, "Suffix symbols (default: the decider's alphabet)");
  eq->add_flag("--json", json, "Print a JSON summary");
  eq->callback([&] {
    const Decider d = parse_decider(decider_spec);
    std::vector<std::string> prefixes;
    if (!prefix_file.empty()) {
      std::istringstream lines(read_file(prefix_file));
      for (std::string line; std::getline(lines, line);) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) prefixes.push_back(ascii_circle(line));
      }
    }
    std::optional<std::string> sigma;
    if (!suffix_alphabet.empty()) sigma = suffix_alphabet;
    const auto r = equivalence_classes(d, prefix_len, suffix_len, prefix_file.empty() ? nullptr : &prefixes, sigma);
    if (json) {
      out << summary_json(r.prefixes, {}, r.classes);
    } else {
      out << "prefixes " << r.prefixes << ", suffixes " << r.suffixes << ", classes " << r.classes << "\n";
    }
  });

  // universal
  std::string tm_path;
  std::optional<std::string> tm_input;
  auto* universal = app.add_subcommand("universal", "Turing machine simulation automata")->require_subcommand(1);
  auto* build = universal->add_subcommand("build", "Print the automaton for a machine");
  build->add_option("machine", tm_path, "Machine JSON file")->required();
  build->add_option("--input", tm_input, "Instead print f(x) and g(x) for this binary input");
  build->callback([&] {
    const TuringMachine m = turing_machine_from_json(read_file(tm_path));
    if (tm_input) {
      out << "f(x) = " << tm_output(m, *tm_input) << "\n";
      out << "g(x) = " << tm_dollar_count(m, *tm_input) << "\n";
      return;
    }
    out << automaton_to_json(automaton_universal(m));
  });

  std::vector<std::string> reversed_args(args.rbegin(), args.rend());
  try {
    app.parse(reversed_args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_code::ok;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const NoInput& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::no_input;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << "\n";
    return exit_code::format;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return exit_code::format;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::failure;
  }
  return status;
}

}  // namespace pegsa
