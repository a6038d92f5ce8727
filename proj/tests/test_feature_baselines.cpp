#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "signet/errors.hpp"
#include "signet/feature_baselines.hpp"
#include "support.hpp"

using namespace signet;
using signet::testing::random_stream;

namespace {

// Indices inside a channel block.
enum Stat {
  kMean = 0,
  kStd,
  kMin,
  kMax,
  kMedian,
  kSkew,
  kKurtosis,
  kAc1,
  kAc5,
  kAc10,
  kCrossings,
  kSlope,
  kEnergy
};

Stream single_channel(std::initializer_list<double> values) {
  Stream s;
  s.values.resize(static_cast<long>(values.size()), 1);
  s.timestamps.resize(static_cast<long>(values.size()));
  long i = 0;
  for (double v : values) {
    s.values(i, 0) = v;
    s.timestamps[i] = static_cast<double>(i);
    ++i;
  }
  return s;
}

}  // namespace

TEST_CASE("hand-computed statistics of a short ramp") {
  const Vector f = summary_features(single_channel({1.0, 2.0, 3.0}));
  REQUIRE(f.size() == kSummaryStatsPerChannel);
  CHECK(f[kMean] == doctest::Approx(2.0));
  CHECK(f[kStd] == doctest::Approx(1.0));
  CHECK(f[kMin] == doctest::Approx(1.0));
  CHECK(f[kMax] == doctest::Approx(3.0));
  CHECK(f[kMedian] == doctest::Approx(2.0));
  CHECK(f[kSlope] == doctest::Approx(1.0));
  CHECK(f[kEnergy] == doctest::Approx((1.0 + 4.0 + 9.0) / 3.0));
}

TEST_CASE("constant channels use the zero-variance conventions") {
  const Vector f = summary_features(single_channel({2.5, 2.5, 2.5, 2.5}));
  CHECK(f[kStd] == 0.0);
  CHECK(f[kSkew] == 0.0);
  CHECK(f[kKurtosis] == 0.0);
  CHECK(f[kAc1] == 0.0);
  CHECK(f[kAc5] == 0.0);
  CHECK(f[kAc10] == 0.0);
  CHECK(f[kCrossings] == 0.0);
  CHECK(f[kSlope] == 0.0);
  CHECK(f[kEnergy] == doctest::Approx(2.5 * 2.5));
}

TEST_CASE("mean crossings counts sign changes around the mean") {
  const Vector f = summary_features(single_channel({0.0, 1.0, 0.0, 1.0}));
  CHECK(f[kCrossings] == doctest::Approx(3.0));
}

TEST_CASE("translation shifts location statistics only") {
  Rng rng(3);
  const Stream s = random_stream(rng, 40, 1);
  Stream shifted = s;
  const double c = 5.75;
  shifted.values.array() += c;

  const Vector a = summary_features(s);
  const Vector b = summary_features(shifted);
  CHECK(b[kMean] == doctest::Approx(a[kMean] + c));
  CHECK(b[kMedian] == doctest::Approx(a[kMedian] + c));
  CHECK(b[kMin] == doctest::Approx(a[kMin] + c));
  CHECK(b[kMax] == doctest::Approx(a[kMax] + c));
  CHECK(b[kStd] == doctest::Approx(a[kStd]));
  CHECK(b[kSkew] == doctest::Approx(a[kSkew]));
  CHECK(b[kKurtosis] == doctest::Approx(a[kKurtosis]));
  CHECK(b[kAc1] == doctest::Approx(a[kAc1]));
  CHECK(b[kAc5] == doctest::Approx(a[kAc5]));
  CHECK(b[kAc10] == doctest::Approx(a[kAc10]));
  CHECK(b[kCrossings] == doctest::Approx(a[kCrossings]));
  CHECK(b[kSlope] == doctest::Approx(a[kSlope]).epsilon(1e-9));
  // Energy moves by 2c*mean + c^2.
  CHECK(b[kEnergy] == doctest::Approx(a[kEnergy] + 2.0 * c * a[kMean] + c * c));
}

TEST_CASE("positive scaling stretches scale statistics only") {
  Rng rng(5);
  const Stream s = random_stream(rng, 35, 1);
  Stream scaled = s;
  const double c = 3.25;
  scaled.values.array() *= c;

  const Vector a = summary_features(s);
  const Vector b = summary_features(scaled);
  CHECK(b[kMean] == doctest::Approx(c * a[kMean]));
  CHECK(b[kStd] == doctest::Approx(c * a[kStd]));
  CHECK(b[kMin] == doctest::Approx(c * a[kMin]));
  CHECK(b[kMax] == doctest::Approx(c * a[kMax]));
  CHECK(b[kMedian] == doctest::Approx(c * a[kMedian]));
  CHECK(b[kSlope] == doctest::Approx(c * a[kSlope]));
  CHECK(b[kSkew] == doctest::Approx(a[kSkew]));
  CHECK(b[kKurtosis] == doctest::Approx(a[kKurtosis]));
  CHECK(b[kAc1] == doctest::Approx(a[kAc1]));
  CHECK(b[kAc5] == doctest::Approx(a[kAc5]));
  CHECK(b[kAc10] == doctest::Approx(a[kAc10]));
}

TEST_CASE("feature vector is channel-major with 13 stats per channel") {
  Rng rng(7);
  const Stream two = random_stream(rng, 25, 2);
  const Vector f = summary_features(two);
  REQUIRE(f.size() == 26);

  Stream first_only;
  first_only.timestamps = two.timestamps;
  first_only.values = two.values.col(0);
  const Vector f0 = summary_features(first_only);
  CHECK((f.head(kSummaryStatsPerChannel) - f0).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("row order of the stacked summary matrix follows node order") {
  Rng rng(9);
  std::vector<Stream> streams;
  for (int i = 0; i < 3; ++i) streams.push_back(random_stream(rng, 20 + i, 2));

  const Matrix m = spatio_temporal_summary(streams);
  CHECK(m.rows() == 3);
  CHECK(m.cols() == 26);
  for (int i = 0; i < 3; ++i)
    CHECK((m.row(i).transpose() - summary_features(streams[i])).lpNorm<Eigen::Infinity>() == 0.0);

  const Matrix single = spatio_temporal_summary(std::vector<Stream>{streams[1]});
  CHECK((single.row(0) - m.row(1)).lpNorm<Eigen::Infinity>() == 0.0);

  // Determinism.
  CHECK(spatio_temporal_summary(streams) == m);
}

TEST_CASE("insufficient data is rejected") {
  Stream s;
  s.timestamps = Vector::Zero(1);
  s.values = Matrix::Zero(1, 1);
  CHECK_THROWS_AS(summary_features(s), InsufficientDataError);
}
