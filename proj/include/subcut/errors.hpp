#pragma once

#include <stdexcept>
#include <string>

namespace subcut {

/// A cost function required to be submodular is not.
class NotSubmodularError : public std::runtime_error {
 public:
  explicit NotSubmodularError(const std::string& what) : std::runtime_error(what) {}
};

/// A submodular function has no gadget over binary submodular functions.
class NotExpressibleError : public std::runtime_error {
 public:
  explicit NotExpressibleError(const std::string& what) : std::runtime_error(what) {}
};

/// A table lies outside the cone of fans (plus constant).
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

/// An exhaustive computation would exceed its size cap.
class SizeLimitError : public std::length_error {
 public:
  explicit SizeLimitError(const std::string& what) : std::length_error(what) {}
};

}  // namespace subcut
