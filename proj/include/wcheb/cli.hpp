#pragma once

// Command-line front end. Machine output (JSON, CSV) goes to `out`, human
// text to `err`. Exit codes: 0 ok, 1 validation, 2 discrepancy or failure,
// 64 unknown property, 65 enumeration cap exceeded.

#include <iosfwd>

namespace wcheb::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitDiscrepancy = 2;
inline constexpr int kExitUnknownProperty = 64;
inline constexpr int kExitCapExceeded = 65;

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace wcheb::cli
