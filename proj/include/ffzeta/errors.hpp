#pragma once

#include <stdexcept>
#include <string>

namespace ffz {

/// Raised when an operation is called outside its documented domain
/// (non-prime characteristic, division by zero, malformed parameters).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an internal consistency check fails. Seeing one of these
/// means the library computed something wrong, not that the input was bad.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Objects from different coefficient fields (or variable lists) were mixed.
class MismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace ffz
