#include "signet/signature.hpp"

#include <cmath>
#include <string>

#include "signet/errors.hpp"

namespace signet {

namespace {

long ipow(long base, int exp) {
  long r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

void check_compatible(const TruncatedSignature& a, const TruncatedSignature& b) {
  if (a.dim != b.dim || a.depth != b.depth)
    throw ShapeError("chen_product: dim/depth mismatch (" +
                     std::to_string(a.dim) + "," + std::to_string(a.depth) +
                     ") vs (" + std::to_string(b.dim) + "," +
                     std::to_string(b.depth) + ")");
}

}  // namespace

long TruncatedSignature::coeff_count(int dim, int depth) {
  long total = 0;
  for (int k = 1; k <= depth; ++k) total += ipow(dim, k);
  return total;
}

long TruncatedSignature::level_offset(int dim, int level) {
  long off = 0;
  for (int k = 1; k < level; ++k) off += ipow(dim, k);
  return off;
}

double TruncatedSignature::at(std::span<const int> word) const {
  return coeffs[word_index(word, dim, depth)];
}

long word_index(std::span<const int> word, int dim, int depth) {
  const int k = static_cast<int>(word.size());
  if (k < 1 || k > depth)
    throw IndexError("word_index: word length " + std::to_string(k) +
                     " outside 1.." + std::to_string(depth));
  long within = 0;
  for (int letter : word) {
    if (letter < 1 || letter > dim)
      throw IndexError("word_index: letter " + std::to_string(letter) +
                       " outside 1.." + std::to_string(dim));
    within = within * dim + (letter - 1);
  }
  return TruncatedSignature::level_offset(dim, k) + within;
}

TruncatedSignature segment_signature(const Vector& displacement, int depth) {
  const int n = static_cast<int>(displacement.size());
  if (n < 1) throw ShapeError("segment_signature: empty displacement");
  if (depth < 1) throw DomainError("segment_signature: depth must be >= 1");
  if (!displacement.allFinite())
    throw DomainError("segment_signature: non-finite displacement");

  TruncatedSignature sig{n, depth,
                         Vector::Zero(TruncatedSignature::coeff_count(n, depth))};
  // Level k is the k-fold tensor power of the displacement divided by k!,
  // built from level k-1 by one outer product and a division by k.
  long prev_off = 0;
  long prev_size = n;
  sig.coeffs.segment(0, n) = displacement;
  for (int k = 2; k <= depth; ++k) {
    const long off = prev_off + prev_size;
    for (long u = 0; u < prev_size; ++u) {
      const double base = sig.coeffs[prev_off + u] / k;
      for (int j = 0; j < n; ++j)
        sig.coeffs[off + u * n + j] = base * displacement[j];
    }
    prev_off = off;
    prev_size *= n;
  }
  return sig;
}

TruncatedSignature chen_product(const TruncatedSignature& a,
                                const TruncatedSignature& b) {
  check_compatible(a, b);
  const int n = a.dim;
  const int p = a.depth;

  TruncatedSignature out{n, p,
                         Vector::Zero(TruncatedSignature::coeff_count(n, p))};
  // out(w) = sum over splits w = u.v of a(u) * b(v); terms with |w| > p are
  // dropped by never forming them. Splits with an empty side contribute the
  // other side's coefficient unchanged.
  for (int k = 1; k <= p; ++k) {
    const long out_off = TruncatedSignature::level_offset(n, k);
    const long out_size = ipow(n, k);
    out.coeffs.segment(out_off, out_size) =
        a.coeffs.segment(out_off, out_size) + b.coeffs.segment(out_off, out_size);
    for (int la = 1; la < k; ++la) {
      const int lb = k - la;
      const long a_off = TruncatedSignature::level_offset(n, la);
      const long b_off = TruncatedSignature::level_offset(n, lb);
      const long a_size = ipow(n, la);
      const long b_size = ipow(n, lb);
      for (long u = 0; u < a_size; ++u) {
        const double au = a.coeffs[a_off + u];
        if (au == 0.0) continue;
        const long row = out_off + u * b_size;
        for (long v = 0; v < b_size; ++v)
          out.coeffs[row + v] += au * b.coeffs[b_off + v];
      }
    }
  }
  return out;
}

TruncatedSignature signature(const Stream& stream, int depth,
                             bool augment_time) {
  stream.validate();
  if (depth < 1) throw DomainError("signature: depth must be >= 1");

  const long m = stream.samples();
  const int n = static_cast<int>(stream.channels()) + (augment_time ? 1 : 0);

  Vector delta(n);
  TruncatedSignature acc;
  for (long i = 0; i + 1 < m; ++i) {
    if (augment_time) {
      delta[0] = stream.timestamps[i + 1] - stream.timestamps[i];
      delta.tail(n - 1) = stream.values.row(i + 1) - stream.values.row(i);
    } else {
      delta = stream.values.row(i + 1) - stream.values.row(i);
    }
    TruncatedSignature seg = segment_signature(delta, depth);
    acc = (i == 0) ? std::move(seg) : chen_product(acc, seg);
  }
  return acc;
}

Matrix spatio_temporal_signature(std::span<const Stream> streams, int depth,
                                 bool augment_time) {
  if (streams.empty())
    throw ShapeError("spatio_temporal_signature: no streams");
  const long n = streams.front().channels();
  for (const Stream& s : streams)
    if (s.channels() != n)
      throw ShapeError("spatio_temporal_signature: inconsistent channel counts");

  const int dim = static_cast<int>(n) + (augment_time ? 1 : 0);
  const long f = TruncatedSignature::coeff_count(dim, depth);
  Matrix features(static_cast<long>(streams.size()), f);
  for (std::size_t i = 0; i < streams.size(); ++i)
    features.row(static_cast<long>(i)) =
        signature(streams[i], depth, augment_time).coeffs;
  return features;
}

}  // namespace signet
