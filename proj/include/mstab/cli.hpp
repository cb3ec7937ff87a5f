#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mstab::cli {

// Runs one subcommand. Returns 0 on success, 1 when the input fails
// validation or a sign cannot be decided, 2 on usage errors, 3 on internal
// errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mstab::cli
