#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace neq {

namespace exit_code {
constexpr int sat = 0;
constexpr int unsat = 1;
constexpr int unknown = 2;
constexpr int usage = 64;
constexpr int input = 65;
constexpr int internal = 70;
} // namespace exit_code

/*
 * Entry point of the `neq` tool. args[0] is the program name. Subcommands:
 * decide, reduce, encode, verify, oracle-search. Reports go to `out`,
 * diagnostics to `err`.
 */
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace neq
