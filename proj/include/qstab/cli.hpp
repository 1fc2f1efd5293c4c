#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qstab {

// Entry point shared by the binary and the in-process tests. Writes one
// JSON document (or SVG with --format svg) to `out` or to --out, and
// diagnostics to `err`. Returns the exit status: 0 success, 1 domain
// error, 2 usage or parse error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qstab
