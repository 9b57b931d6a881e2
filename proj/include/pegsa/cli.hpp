#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pegsa {

/// Exit statuses of the command-line tool.
namespace exit_code {
inline constexpr int ok = 0;
/// Nonmember / reject / lint findings / cross-check counterexamples.
inline constexpr int negative = 1;
/// The grammar diverged on the input.
inline constexpr int diverges = 2;
inline constexpr int usage = 64;
/// Malformed grammar, automaton or machine file, or a bad input symbol.
inline constexpr int format = 65;
inline constexpr int no_input = 66;
/// Any other failure (budgets, transition holes, unsupported operations).
inline constexpr int failure = 70;
}  // namespace exit_code

/// Runs the tool with args excluding the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pegsa
