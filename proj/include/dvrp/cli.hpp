#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dvrp::cli {

// Runs one command. Returns the process exit code: 0 on success, 1 when the
// instance is infeasible or a property suite fails, 2 on usage errors.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace dvrp::cli
