#pragma once

// Independent oracles used to freeze expected values. These never call the
// library's signature arithmetic; indexing and integration are reimplemented
// from scratch so they can disagree with a broken implementation.

#include <cmath>
#include <vector>

#include "signet/stream.hpp"
#include "signet/types.hpp"

namespace signet::testing {

inline long oracle_ipow(long base, int exp) {
  long r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

inline long oracle_coeff_count(int dim, int depth) {
  long total = 0;
  for (int k = 1; k <= depth; ++k) total += oracle_ipow(dim, k);
  return total;
}

/// Riemann-Stieltjes accumulation of all iterated integrals of the
/// piecewise-linear interpolation of a stream, refining every segment into
/// parameter steps of at most `step`. Each word integral S_{w.j} gains
/// 0.5 * (S_w(t) + S_w(t+h)) * d_j per fine step (trapezoid rule). Layout
/// matches the library's graded-lexicographic convention (rebuilt here
/// independently).
inline Vector riemann_signature(const Stream& stream, int depth, double step) {
  const int n = static_cast<int>(stream.channels());
  std::vector<long> level_offset(depth + 1, 0);
  for (int k = 2; k <= depth; ++k)
    level_offset[k] = level_offset[k - 1] + oracle_ipow(n, k - 1);

  Vector sig = Vector::Zero(oracle_coeff_count(n, depth));
  Vector d(n), prefix_old, level_save;
  for (long seg = 0; seg + 1 < stream.samples(); ++seg) {
    const double span = stream.timestamps[seg + 1] - stream.timestamps[seg];
    const long pieces = std::max<long>(1, static_cast<long>(std::ceil(span / step)));
    d = (stream.values.row(seg + 1) - stream.values.row(seg)) / static_cast<double>(pieces);
    for (long piece = 0; piece < pieces; ++piece) {
      // Bottom-up over levels, keeping the previous grid point's values of
      // level k-1 so both trapezoid endpoints are available.
      for (int k = 1; k <= depth; ++k) {
        const long words = oracle_ipow(n, k);
        level_save = sig.segment(level_offset[k], words);
        for (long w = 0; w < words; ++w) {
          const double lo = k == 1 ? 1.0 : prefix_old[w / n];
          const double hi = k == 1 ? 1.0 : sig[level_offset[k - 1] + w / n];
          sig[level_offset[k] + w] += 0.5 * (lo + hi) * d[w % n];
        }
        prefix_old.swap(level_save);
      }
    }
  }
  return sig;
}

}  // namespace signet::testing
