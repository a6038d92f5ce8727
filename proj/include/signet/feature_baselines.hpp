#pragma once

#include <span>

#include "signet/stream.hpp"
#include "signet/types.hpp"

namespace signet {

/// Number of summary statistics per channel. Order within a channel block:
///   mean, std (sample), min, max, median, skewness, excess kurtosis,
///   autocorrelation at lags 1, 5, 10, mean-crossing count,
///   least-squares trend slope (vs. timestamps), energy (mean of squares).
inline constexpr int kSummaryStatsPerChannel = 13;

/// Flat vector of the 13 statistics for every channel, channel-major.
/// Zero-variance channels report 0 for skewness, kurtosis and
/// autocorrelations.
Vector summary_features(const Stream& stream);

/// N x 13n matrix; row i = summary_features of node i's stream.
Matrix spatio_temporal_summary(std::span<const Stream> streams);

}  // namespace signet
