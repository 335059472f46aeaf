#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pagame {

// Runs the command line given without the program name. Exit status 0 on
// success, 1 on user errors, 2 on internal invariant breaches.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace pagame
