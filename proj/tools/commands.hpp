#pragma once

#include "run_config.hpp"

namespace pdual::cli {

enum ExitCode : int { kPass = 0, kVerificationFail = 2, kInputError = 3, kCapExceeded = 4, kNumericFailure = 5 };

int cmdDiscriminant(const RunConfig& cfg);
int cmdGenericResultant(const RunConfig& cfg);
int cmdGenericDiscriminant(const RunConfig& cfg);
int cmdVerify(const RunConfig& cfg);
int cmdPolytope(const RunConfig& cfg);
int cmdSlope(const RunConfig& cfg);
int cmdEnergies(const RunConfig& cfg);

/// Maps library errors onto the exit-code taxonomy.
int exitCodeFor(const std::exception& e);

}  // namespace pdual::cli
