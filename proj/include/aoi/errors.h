#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aoi {

// Out-of-domain argument (probability outside its range, empty network, ...).
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A numeric routine failed to reach its tolerance.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A feedback signal that the configured mechanism can never produce.
struct ProtocolError : std::logic_error {
  using std::logic_error::logic_error;
};

// A structurally well-formed object that violates a semantic requirement,
// e.g. a cyclic schedule whose sources collide.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace aoi
