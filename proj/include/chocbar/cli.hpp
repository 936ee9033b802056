#pragma once

#include <iosfwd>

namespace chocbar {

// Entry point of the `chocbar` tool. Exit codes: 0 success (or no
// mismatches), 2 verification mismatches, 1 any error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace chocbar
