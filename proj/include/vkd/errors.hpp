#pragma once

#include <stdexcept>
#include <string>

namespace vkd {

// Malformed textual input: word text, presentation files, diagram files,
// rational literals.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numeric parameter lies outside the range an operation accepts.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An operation's precondition does not hold for the supplied object, e.g.
// method=dehn on a presentation that is not C'(1/6).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown before starting work whose estimated size exceeds a cap.
class GuardCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vkd
