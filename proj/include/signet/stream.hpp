#pragma once

#include "signet/errors.hpp"
#include "signet/types.hpp"

namespace signet {

/// Timestamped multivariate samples recorded at one node. Interpolated
/// piecewise-linearly wherever a path is needed.
struct Stream {
  Vector timestamps;  // strictly increasing, length m >= 2
  Matrix values;      // m x n

  long samples() const { return values.rows(); }
  long channels() const { return values.cols(); }

  void validate() const {
    if (timestamps.size() != values.rows())
      throw ShapeError("stream: timestamp count does not match sample count");
    if (values.rows() < 2)
      throw InsufficientDataError("stream: fewer than 2 samples");
    if (values.cols() < 1) throw ShapeError("stream: no channels");
    for (long i = 0; i + 1 < timestamps.size(); ++i)
      if (!(timestamps[i] < timestamps[i + 1]))
        throw DomainError("stream: timestamps not strictly increasing");
    if (!timestamps.allFinite() || !values.allFinite())
      throw DomainError("stream: non-finite entries");
  }
};

}  // namespace signet
