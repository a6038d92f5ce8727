#pragma once

#include <stdexcept>
#include <string>

namespace signet {

// Invalid or inconsistent input data. CLI maps this family to exit code 2.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ShapeError : DataError {
  using DataError::DataError;
};

struct DomainError : DataError {
  using DataError::DataError;
};

struct IndexError : DataError {
  using DataError::DataError;
};

struct InsufficientDataError : DataError {
  using DataError::DataError;
};

struct ParseError : DataError {
  ParseError(const std::string& file, long line, const std::string& what)
      : DataError(file + ":" + std::to_string(line) + ": " + what),
        file(file),
        line(line) {}
  std::string file;
  long line;
};

struct ReferenceError : DataError {
  using DataError::DataError;
};

// Runtime numerical failure. CLI maps this family to exit code 3.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivergenceError : NumericalError {
  DivergenceError(long step, const std::string& what)
      : NumericalError("step " + std::to_string(step) + ": " + what),
        step(step) {}
  long step;
};

struct TrainingError : NumericalError {
  TrainingError(long epoch, const std::string& what)
      : NumericalError("epoch " + std::to_string(epoch) + ": " + what),
        epoch(epoch) {}
  long epoch;
};

}  // namespace signet
