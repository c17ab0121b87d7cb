#pragma once

#include <stdexcept>
#include <string>

namespace ppursuit {

// Process exit codes; library errors carry the code the CLI should exit with.
enum class ExitCode : int {
  ok = 0,
  usage = 1,        // bad flags / unknown subcommand
  parse = 2,        // malformed or inconsistent input data
  empty_result = 3, // a step removed everything (e.g. no genes survive the filter)
  dimension = 4,    // dimension mismatch or numerical guard tripped
  optimizer = 5,    // every restart of the optimizer failed
};

class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

}  // namespace ppursuit
