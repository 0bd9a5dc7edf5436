#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nnn::cli {

enum ExitCode : int { ok = 0, failed = 1, usage = 2 };

struct Terminal {
  bool stderr_is_tty = false;
};

/// Runs one command line (without the program name). Data goes to `out`,
/// human-readable diagnostics to `err`; with --json, diagnostics go to
/// `out` as part of the JSON document.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, Terminal term = {});

}  // namespace nnn::cli
