#pragma once
#include <stdexcept>
#include <string>

namespace mawc {

// Invalid inputs, malformed files, contract misuse.
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Enumeration/size caps exceeded.
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace mawc
