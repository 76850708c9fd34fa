#pragma once

namespace mpslab::cli {

// Parses argv and dispatches to one subcommand.  Returns the process exit
// code: 0 on success, 1 for data/domain failures, 2 for usage errors.
int run(int argc, const char* const* argv);

}  // namespace mpslab::cli
