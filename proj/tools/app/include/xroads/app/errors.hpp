#pragma once

#include <string>

#include "xroads/errors.hpp"

namespace xroads::app {

/// Malformed configuration text. The message carries "<source>:<line>:".
class ConfigParseError : public Error {
 public:
  ConfigParseError(const std::string& source, int line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Well-formed text that violates the configuration schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

class UnknownPreset : public Error {
 public:
  using Error::Error;
};

/// Two result files do not describe the same sweep points.
class AxisMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace xroads::app
