#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qgraph::cli {

/// Runs one command line (without the program name). Returns 0 on success,
/// 1 on a computational failure and 2 on a usage error.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace qgraph::cli
