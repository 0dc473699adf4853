#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace growthbound {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ParseErrorKind { Malformed, BelowOne, ZeroDenominator };

class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, const std::string& what) : Error(what), kind_(kind) {}
  ParseErrorKind kind() const noexcept { return kind_; }

 private:
  ParseErrorKind kind_;
};

// Thrown when a build would exceed its state budget. `partial` is the number
// of states discovered before giving up.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, std::size_t partial) : Error(what), partial_(partial) {}
  std::size_t partial() const noexcept { return partial_; }

 private:
  std::size_t partial_;
};

}  // namespace growthbound
