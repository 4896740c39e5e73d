#pragma once

#include <stdexcept>
#include <string>

namespace delib {

// Stable process exit codes, shared between the library and the CLI.
enum class ExitCode : int {
  ok = 0,
  config = 1,
  io = 2,
  degenerate = 3,
};

class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ExitCode code() const { return code_; }

 private:
  ExitCode code_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ExitCode::config, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ExitCode::io, what) {}
};

// Ensemble carries no usable divergence signal (e.g. all-zero D(t)).
class DegenerateEnsemble : public Error {
 public:
  explicit DegenerateEnsemble(const std::string& what)
      : Error(ExitCode::degenerate, what) {}
};

}  // namespace delib
