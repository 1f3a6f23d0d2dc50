#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace adelic::cli {

/// Runs one command (args excludes the program name). Prints a single JSON
/// document on `out`. Returns 0 on success, 1 on malformed input and 2 on
/// domain errors; error documents have the form {"error": {"code", "detail"}}.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace adelic::cli
