#pragma once

// Subcommand implementations shared by the qmax binary and its tests.
// Every command is a function of a complete configuration object, which is
// what a run manifest stores and what replay feeds back in.

#include <stdexcept>
#include <string>

#include "qmax/report.hpp"

namespace qmax::cli {

enum ExitCode { kSuccess = 0, kVerificationFailure = 1, kUsageError = 2 };

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CommandOutput {
  Json result;
  int exit_code = kSuccess;
  std::string csv;
  std::string text;
};

/// Fills defaults for missing keys and validates; throws UsageError.
Json complete_config(const std::string& command, Json config);

/// Runs a command on a complete configuration. threads only affects speed.
CommandOutput run_command(const std::string& command, const Json& config, int threads = 0);

}  // namespace qmax::cli
