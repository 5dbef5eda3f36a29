// Command-line front end, separated from main() so tests can drive it with
// captured streams.
//
// Exit codes: 0 success / affirmative verdict, 1 definitive negative
// verdict, 2 input error (unreadable file, parse error, bad binding,
// wrong-shaped map), 3 resource limit (term budget or truncation ceiling),
// 70 broken internal invariant.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace polyinv {

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace polyinv
