#pragma once

#include <span>
#include <vector>

#include "signet/stream.hpp"
#include "signet/types.hpp"

namespace signet {

/// Truncated tensor-algebra signature of a path over n channels, kept up to
/// words of length `depth`. Coefficients are stored densely in graded
/// lexicographic order: all length-1 words (1),(2),...,(n), then all length-2
/// words (1,1),(1,2),...,(n,n), and so on. The empty-word coefficient is
/// identically 1 and not stored.
struct TruncatedSignature {
  int dim = 0;
  int depth = 0;
  Vector coeffs;

  /// Stored coefficient count: n + n^2 + ... + n^p.
  static long coeff_count(int dim, int depth);

  /// Offset of the first word of length `level` (1-based level).
  static long level_offset(int dim, int level);

  double at(std::span<const int> word) const;
};

/// Offset of a word (letters in 1..dim) into the graded-lexicographic layout.
long word_index(std::span<const int> word, int dim, int depth);

/// Signature of a single linear segment with the given displacement: the
/// coefficient of a word (i_1,...,i_k) collapses to (prod_j delta[i_j]) / k!.
TruncatedSignature segment_signature(const Vector& displacement, int depth);

/// Tensor-algebra product truncated at the common depth: the coefficient of a
/// word w is the sum of a(u) * b(v) over all splits w = u.v, with the implicit
/// empty-word coefficient 1 on both sides. Concatenating two paths multiplies
/// their signatures, so this is also the incremental update rule.
TruncatedSignature chen_product(const TruncatedSignature& a,
                                const TruncatedSignature& b);

/// Signature of the piecewise-linear interpolation of a stream: the fold of
/// chen_product over per-segment signatures. With augment_time, the timestamp
/// is prepended as channel 0 and the dimension grows by one.
TruncatedSignature signature(const Stream& stream, int depth,
                             bool augment_time = false);

/// N x F feature matrix whose row i is the flattened signature of node i's
/// stream. Streams may differ in length but must share the channel count.
Matrix spatio_temporal_signature(std::span<const Stream> streams, int depth,
                                 bool augment_time = false);

}  // namespace signet
