/*
 * cli.hpp
 *
 * Entry point of the bessopt tool, callable from tests.
 */

#pragma once

#include <ostream>

namespace bess {

/// Exit codes: 0 success, 1 bad arguments or invalid input, 2 runtime failure.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bess
