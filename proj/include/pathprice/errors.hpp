#pragma once

#include <stdexcept>
#include <string>

namespace pathprice {

// Bad instance data or a malformed file.  CLI exit code 2.
struct InvalidInput : std::runtime_error {
  explicit InvalidInput(const std::string& msg) : std::runtime_error(msg) {}
};

// Parameter outside the admissible set (epsilon, x, y, overrides).  Exit 2.
struct InvalidParameter : std::runtime_error {
  explicit InvalidParameter(const std::string& msg) : std::runtime_error(msg) {}
};

// A broken internal invariant (missing table entry, dangling argmax).  Exit 3.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

// An oracle refusing to run past its configured bounds.  Exit 4.
struct BoundsRefused : std::runtime_error {
  explicit BoundsRefused(const std::string& msg) : std::runtime_error(msg) {}
};

// Instance shape the solver does not support (e.g. too many leaves).  Exit 2.
struct UnsupportedInstance : std::runtime_error {
  explicit UnsupportedInstance(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace pathprice
