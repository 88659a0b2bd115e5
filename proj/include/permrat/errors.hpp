#pragma once

#include <stdexcept>
#include <string>

namespace permrat {

/// Malformed or inconsistent user input. CLI exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Group or request outside the supported range. CLI exit code 3.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A dual-route check or verification failed. CLI exit code 4.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void check_internal(bool cond, const std::string& what) {
  if (!cond) throw InternalError(what);
}

}  // namespace permrat
