#pragma once

#include <stdexcept>
#include <string>

namespace hyperis {

// Malformed input or violated precondition.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exhaustive computation would exceed its configured budget. Never
// replaced by an estimate.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The random instance generator ran out of restarts.
class GenerationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hyperis
