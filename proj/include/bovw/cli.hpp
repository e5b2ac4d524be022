#pragma once

#include <ostream>

namespace bovw {

// Entry point of the bovwsim tool. Exit status: 0 on success, 1 on invalid
// input data (validation, parse, format, domain, lookup, compatibility), 2 on
// usage and precondition errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bovw
