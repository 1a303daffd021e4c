#pragma once

#include <iosfwd>

namespace chyp {

// Exit codes: 0 ok, 2 usage or validation error, 3 numerical failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace chyp
