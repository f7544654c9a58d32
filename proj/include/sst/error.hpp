#pragma once

#include <stdexcept>
#include <string>

namespace sst {

enum class ErrorKind {
  invalid_input,
  not_found,
  conflict,
  unknown_alias,
  parse,
  depth_exceeded,
  io,
};

const char* to_string(ErrorKind kind);

/// Every failure surfaced by the engine. `kind` lets callers (the shell,
/// tests) branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace sst
