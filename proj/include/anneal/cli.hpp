#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace anneal {

// Exit codes: 0 success, 1 verification failure, 2 config error,
// 3 numeric/domain error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace anneal
