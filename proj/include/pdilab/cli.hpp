#pragma once

namespace pdilab::cli {

// Exit codes: 0 ok, 2 config/usage error, 3 capacity error, 4 runtime error.
int run(int argc, const char* const* argv);

} // namespace pdilab::cli
