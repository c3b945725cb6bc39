#pragma once

#include <ostream>

namespace invis {

// Exit codes: 0 success, 1 usage or profile-format error, 2 numerical or
// designer failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace invis
