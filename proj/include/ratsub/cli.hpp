#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ratsub {

// Command driver behind the ratsub tool. Exit codes: 0 success / positive
// decision, 1 negative decision, 2 input error, 3 precondition error,
// 4 internal inconsistency.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace ratsub
