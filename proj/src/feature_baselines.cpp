#include "signet/feature_baselines.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "signet/errors.hpp"

namespace signet {

namespace {

double median_of(Vector x) {
  std::sort(x.begin(), x.end());
  const long m = x.size();
  return (m % 2 == 1) ? x[m / 2] : 0.5 * (x[m / 2 - 1] + x[m / 2]);
}

double autocorrelation(const Vector& centered, double sumsq, long lag) {
  const long m = centered.size();
  if (sumsq == 0.0 || lag >= m) return 0.0;
  double acc = 0.0;
  for (long t = 0; t + lag < m; ++t) acc += centered[t] * centered[t + lag];
  return acc / sumsq;
}

long mean_crossings(const Vector& centered) {
  long crossings = 0;
  for (long t = 0; t + 1 < centered.size(); ++t)
    if (centered[t] * centered[t + 1] < 0.0) crossings += 1;
  return crossings;
}

double trend_slope(const Vector& t, const Vector& x) {
  const double t_mean = t.mean();
  const double x_mean = x.mean();
  double cov = 0.0, var = 0.0;
  for (long i = 0; i < t.size(); ++i) {
    const double dt = t[i] - t_mean;
    cov += dt * (x[i] - x_mean);
    var += dt * dt;
  }
  return cov / var;  // var > 0: timestamps strictly increasing
}

}  // namespace

Vector summary_features(const Stream& stream) {
  stream.validate();
  const long m = stream.samples();
  const long n = stream.channels();

  Vector features(kSummaryStatsPerChannel * n);
  for (long ch = 0; ch < n; ++ch) {
    const Vector x = stream.values.col(ch);
    const double mean = x.mean();
    const Vector centered = x.array() - mean;
    const double sumsq = centered.squaredNorm();
    const double var_pop = sumsq / m;
    const double std_sample = std::sqrt(sumsq / (m - 1));

    double skew = 0.0, kurt = 0.0;
    if (var_pop > 0.0) {
      const double m3 = centered.array().cube().mean();
      const double m4 = centered.array().square().square().mean();
      skew = m3 / std::pow(var_pop, 1.5);
      kurt = m4 / (var_pop * var_pop) - 3.0;
    }

    double* out = features.data() + ch * kSummaryStatsPerChannel;
    out[0] = mean;
    out[1] = std_sample;
    out[2] = x.minCoeff();
    out[3] = x.maxCoeff();
    out[4] = median_of(x);
    out[5] = skew;
    out[6] = kurt;
    out[7] = autocorrelation(centered, sumsq, 1);
    out[8] = autocorrelation(centered, sumsq, 5);
    out[9] = autocorrelation(centered, sumsq, 10);
    out[10] = static_cast<double>(mean_crossings(centered));
    out[11] = trend_slope(stream.timestamps, x);
    out[12] = x.squaredNorm() / m;
  }
  return features;
}

Matrix spatio_temporal_summary(std::span<const Stream> streams) {
  if (streams.empty()) throw ShapeError("spatio_temporal_summary: no streams");
  const long n = streams.front().channels();
  for (const Stream& s : streams)
    if (s.channels() != n)
      throw ShapeError("spatio_temporal_summary: inconsistent channel counts");

  Matrix features(static_cast<long>(streams.size()), kSummaryStatsPerChannel * n);
  for (std::size_t i = 0; i < streams.size(); ++i)
    features.row(static_cast<long>(i)) = summary_features(streams[i]);
  return features;
}

}  // namespace signet
