#pragma once

#include <stdexcept>
#include <string>

namespace collarforge {

// Error taxonomy maps 1:1 onto CLI exit codes, see tools/collarforge.cpp.
struct input_error : std::runtime_error {
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

struct inadmissible_error : std::runtime_error {
  explicit inadmissible_error(const std::string& what) : std::runtime_error(what) {}
};

struct convergence_error : std::runtime_error {
  explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

struct violation_error : std::runtime_error {
  explicit violation_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace collarforge
