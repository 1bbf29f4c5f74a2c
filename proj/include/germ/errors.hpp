#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace germ {

/// Bad caller input: malformed polynomial text, wrong arity, violated precondition.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t position)
      : InputError(message + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// A numeric procedure failed to converge or stabilize. Results computed so far may still be
/// reported; the CLI maps this to exit code 3.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace germ
