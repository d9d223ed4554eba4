#pragma once

#include <iosfwd>

namespace wsaz {

/// Entry point of the `wsaz` tool. Returns the process exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wsaz
