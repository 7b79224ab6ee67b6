#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace truecc {

// args excludes the program name. Exit codes: 0 success, 1 negative
// verdict, 2 error (reported on err as JSON).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace truecc
