#pragma once

#include <stdexcept>
#include <string>

namespace linerecon {

struct DuplicateCoordinate : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SamePoint : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct WalkBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InconsistentDeduction : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OracleCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace linerecon
