#pragma once

#include <stdexcept>
#include <string>

namespace broncho {

/// Malformed or missing input: bad files, invalid arguments, structurally
/// invalid trees or meshes.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inputs are well formed but the requested quantity does not exist for them
/// (absent generation, empty selector, undefined ratio, degenerate volume).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical procedure failed (singular system, divergence).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace broncho
