#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coeffbound::cli {

// Runs the command line given by `args` (program name excluded).
// Reports/errors go to `out`/`err` unless --out redirects the report to a
// file. Returns 0 on success, 1 when a verification check fails, 2 on
// usage errors.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace coeffbound::cli
