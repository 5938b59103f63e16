#pragma once

#include <stdexcept>
#include <string>

namespace triad {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Evaluation failed at a point (division by a vanishing denominator,
// non-finite intermediate, sqrt of a negative field).
struct EvalError : Error {
  using Error::Error;
};

// A point lies outside the open chart (theta within the singularity margin).
struct ChartError : Error {
  using Error::Error;
};

// Graded-algebra misuse (degree overflow, wrong-degree operand).
struct AlgebraError : Error {
  using Error::Error;
};

// The pointwise connection solve is inconsistent or ill-conditioned.
struct SolveError : Error {
  using Error::Error;
};

struct QuadratureError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace triad
