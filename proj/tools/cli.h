#ifndef SNDG_TOOLS_CLI_H_
#define SNDG_TOOLS_CLI_H_

#include <iosfwd>

#include "sndg/errors.h"

namespace sndg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitIo = 3;
inline constexpr int kExitParse = 4;
inline constexpr int kExitValidation = 5;
inline constexpr int kExitBudget = 6;
inline constexpr int kExitVerification = 7;
inline constexpr int kExitPrecondition = 8;

int ExitCodeFor(ErrorKind kind);

// Entry point shared by the executable and the tests. Usage errors keep
// CLI11's own exit codes.
int Run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace sndg::cli

#endif  // SNDG_TOOLS_CLI_H_
