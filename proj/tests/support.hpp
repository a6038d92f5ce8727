#pragma once

// Shared test helpers: deterministic random inputs for property-style checks.

#include <algorithm>
#include <vector>

#include "signet/rng.hpp"
#include "signet/stream.hpp"
#include "signet/types.hpp"

namespace signet::testing {

inline Stream random_stream(Rng& rng, long samples, long channels,
                            double amplitude = 1.0) {
  Stream s;
  s.timestamps.resize(samples);
  double t = 0.0;
  for (long i = 0; i < samples; ++i) {
    t += 0.05 + rng.uniform01();
    s.timestamps[i] = t;
  }
  s.values.resize(samples, channels);
  for (long i = 0; i < samples; ++i)
    for (long c = 0; c < channels; ++c)
      s.values(i, c) = rng.uniform(-amplitude, amplitude);
  return s;
}

inline Matrix random_points(Rng& rng, long n) {
  Matrix pts(n, 2);
  for (long i = 0; i < n; ++i) {
    pts(i, 0) = rng.uniform01();
    pts(i, 1) = rng.uniform01();
  }
  return pts;
}

inline std::vector<int> random_permutation(Rng& rng, long n) {
  std::vector<int> perm(n);
  for (long i = 0; i < n; ++i) perm[i] = static_cast<int>(i);
  for (long i = n; i > 1; --i)
    std::swap(perm[i - 1], perm[rng.below(static_cast<std::uint64_t>(i))]);
  return perm;
}

}  // namespace signet::testing
