#pragma once

#include <stdexcept>
#include <string>

namespace willmore {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct ShapeError : Error { using Error::Error; };
struct DenominatorVanishes : Error { using Error::Error; };
struct LambdaZero : Error { using Error::Error; };
struct SingularLocus : Error { using Error::Error; };
struct ResidualTooLarge : Error { using Error::Error; };
struct StepSizeTooCoarse : Error { using Error::Error; };
struct QNotInK : Error { using Error::Error; };
struct FirstCoordinateVanishes : Error { using Error::Error; };
struct ExactPathRequired : Error { using Error::Error; };

struct ParseError : Error {
  int line = 0;
  int column = 0;
  ParseError(const std::string& what, int l, int c)
      : Error(what + " at line " + std::to_string(l) + ", column " + std::to_string(c)),
        line(l), column(c) {}
};

}  // namespace willmore
