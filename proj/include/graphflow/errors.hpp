#pragma once

#include <stdexcept>
#include <string>

namespace graphflow {

/// Malformed or structurally invalid input (bad graph, parse failure, wrong degree).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A desk-scale guard was exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace graphflow
