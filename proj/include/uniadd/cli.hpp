#pragma once

namespace uniadd {

// Exit codes: 0 success, 1 domain error, 2 usage error, 3 cap/resource error,
// 4 acceptance criterion failed.
int cli_run(int argc, const char* const* argv);

}  // namespace uniadd
