#pragma once

#include <stdexcept>
#include <string>

namespace mbgame {

// Invalid argument or out-of-range input.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An exact algorithm would exceed its configured size cap or node budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The input does not satisfy the hypotheses of the lemma being applied.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A certificate failed to re-verify. Always a bug in this library.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IllegalMove : public std::invalid_argument {
 public:
  IllegalMove(const std::string& what, int element)
      : std::invalid_argument(what), element_(element) {}
  // Offending board element, or -1 when the whole move is malformed.
  int element() const noexcept { return element_; }

 private:
  int element_;
};

}  // namespace mbgame
