#pragma once

#include <ostream>

namespace tancascade {

// Exit codes: 0 success, 1 usage error, 2 computation failure or violated invariant.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tancascade
