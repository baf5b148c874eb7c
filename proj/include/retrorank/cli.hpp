#pragma once

#include <iosfwd>

namespace retrorank {

/// Entry point for the `retrorank` tool (subcommands index, query, eval, serve).
/// Results go to `out`, diagnostics to `err`; returns the process exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace retrorank
