#pragma once

namespace rrscore::cli {

// Exit codes: 0 ok, 1 validation, 2 enumeration budget, 3 property violation.
int run(int argc, const char* const* argv);

}  // namespace rrscore::cli
