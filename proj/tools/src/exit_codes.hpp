#pragma once

#include "flatline/error.hpp"

namespace flatline::cli {

// Process exit status per error family.
enum ExitCode : int {
  kOk = 0,
  kUnexpected = 1,
  kUsage = 2,
  kConfigParse = 3,
  kIo = 4,
  kInvalidArgument = 5,
  kSurface = 10,
  kFlow = 11,
  kRenorm = 12,
  kHodge = 13,
  kSpectral = 14,
};

int exit_code(ErrorCode code);

}  // namespace flatline::cli
