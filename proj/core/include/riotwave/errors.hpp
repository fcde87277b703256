#pragma once

#include <stdexcept>
#include <string>

namespace riotwave {

/// Invalid parameter values, malformed configs, cross-field violations.
/// CLI maps this to exit code 2.
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// A solver, root finder or eigenvalue iteration failed to produce a
/// trustworthy result (blow-up, non-convergence, lost bracket).
/// CLI maps this to exit code 3.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

/// Missing files, unwritable outputs. CLI maps this to exit code 4.
class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace riotwave
