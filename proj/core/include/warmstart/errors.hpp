#pragma once

#include <stdexcept>
#include <string>

namespace warmstart {

/// Invalid user-facing configuration (bad key, out-of-range value, bad board dimensions).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IllegalMoveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unreadable, truncated or mismatched checkpoint / example file.
class CorruptFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TrainingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EloError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace warmstart
