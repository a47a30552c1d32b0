#pragma once

#include <stdexcept>

namespace seqrnn {

// Shape and argument-validation failures. Mapped to exit code 1 by the CLI.
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// NaN/Inf or divergence produced during numeric work. Exit code 2.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Filesystem and parse failures. Exit code 3.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace seqrnn
