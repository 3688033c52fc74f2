#pragma once

#include <stdexcept>
#include <string>

namespace tonmf {

// Error taxonomy mapped onto CLI exit codes:
//   IoError -> 2, ShapeError -> 3, ConfigError -> 4, NumericError -> 5.

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ShapeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace tonmf
