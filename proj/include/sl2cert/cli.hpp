#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sl2cert::cli {

/// Runs one command; `args` excludes the program name. JSON goes to `out`,
/// diagnostics to `err`. Returns 0 on verified success, 1 on a domain error
/// or failed verification, 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sl2cert::cli
