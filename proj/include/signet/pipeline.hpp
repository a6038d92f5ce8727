#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "signet/gcnn.hpp"
#include "signet/proximity_graph.hpp"
#include "signet/reaction_diffusion.hpp"
#include "signet/stream.hpp"
#include "signet/types.hpp"

namespace signet {

// ---------------------------------------------------------------------------
// Geo dataset layer
// ---------------------------------------------------------------------------

struct StationTable {
  std::vector<std::string> ids;
  Matrix coords;  // N x 2, (lon, lat) degrees

  long size() const { return static_cast<long>(ids.size()); }
  long index_of(const std::string& id) const;  // -1 when absent
};

struct LabelTable {
  std::vector<std::pair<std::string, int>> rows;  // id -> 0 linear / 1 nonlinear
};

/// In-memory dataset: stations, one displacement stream per station (time in
/// days since the earliest date in the dataset, channels east/north/up in mm)
/// and per-station labels (-1 when unlabeled).
struct GeoDataset {
  StationTable stations;
  std::vector<Stream> streams;
  std::vector<int> labels;
  long epoch_day = 0;  // civil day number the timestamps count from
  std::vector<std::string> warnings;

  std::vector<int> labeled_ids() const;
  LabelTable label_table() const;
};

/// Load and validate a dataset. Streams live in `<streams_dir>/<id>.csv`.
/// Stations with fewer than two readings are dropped with a warning; a label
/// for an unknown station is a ReferenceError. Pass an empty labels path for
/// an unlabeled dataset.
GeoDataset ingest(const std::string& stations_csv, const std::string& streams_dir,
                  const std::string& labels_csv);

/// Write stations.csv, streams/<id>.csv and labels.csv so that ingest of the
/// written directory reproduces the tables exactly.
void write_geo_dataset(const GeoDataset& dataset, const std::string& dir);

// ---------------------------------------------------------------------------
// Trajectory persistence
// ---------------------------------------------------------------------------

void write_points_csv(const PointSet& points, const std::string& path);
PointSet read_points_csv(const std::string& path);

void write_trajectory_csv(const Trajectory& trajectory, const std::string& path);
void write_params_csv(const ReactionParams& params, const std::string& path);

/// Reads (node_id, t, u, v) plus the parameter sidecar; the reaction model is
/// inferred from the sidecar's column count.
Trajectory read_trajectory_csv(const std::string& trajectory_path,
                               const std::string& params_path);

/// One 2-channel stream (u, v) per node.
std::vector<Stream> trajectory_streams(const Trajectory& trajectory);

// ---------------------------------------------------------------------------
// Featurization
// ---------------------------------------------------------------------------

enum class Featurizer { signature, summary };

std::string featurizer_name(Featurizer featurizer);

struct FeaturizeOptions {
  Featurizer featurizer = Featurizer::signature;
  int depth = 4;
  bool augment_time = false;
  /// Z-score every channel with mean/std pooled across all nodes' samples
  /// before featurizing. Defaults: on for station data, off for simulated.
  bool standardize = false;
};

/// Per-channel standardization with statistics pooled over all streams, so
/// relative amplitudes between nodes survive. A zero-variance channel is only
/// centered.
std::vector<Stream> standardize_channels(std::span<const Stream> streams);

Matrix featurize(std::span<const Stream> streams, const FeaturizeOptions& options);

// ---------------------------------------------------------------------------
// Experiment records
// ---------------------------------------------------------------------------

struct MetricRecord {
  std::string arm;  // featurizer tag for ablations, "" for single-arm runs
  double x = 0.0;   // sweep coordinate (diffusivity or radius)
  int trial = 0;
  int fold = 0;
  int resampled = 0;  // divergent simulations replaced within this trial
  std::vector<std::pair<std::string, double>> metrics;
};

inline constexpr int kResultSchemaVersion = 1;

struct ExperimentResult {
  std::string experiment;
  std::vector<std::pair<std::string, std::string>> config_echo;
  /// Per-arm echoes for paired runs; they differ only in the featurizer tag.
  std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>>
      arm_echoes;
  std::vector<std::string> warnings;
  std::vector<MetricRecord> records;
};

struct Aggregate {
  double mean = 0.0;
  double stddev = 0.0;
  long count = 0;
};

/// Mean and sample standard deviation over (trial, fold) cells, keyed by
/// (arm, x, metric).
std::map<std::tuple<std::string, double, std::string>, Aggregate> aggregate_records(
    const ExperimentResult& result);

/// Convenience lookup into aggregate_records.
Aggregate aggregate_metric(const ExperimentResult& result, const std::string& arm,
                           double x, const std::string& metric);

/// Writes `records.jsonl` (header line with schema version, config echo, then
/// one line per record, sorted by (arm, x, trial, fold)) and one plot-ready
/// CSV per (arm, metric) with header x,metric,mean,std. Identical results
/// produce identical bytes.
void emit_results(const ExperimentResult& result, const std::string& out_dir);

/// Serialized records exactly as emit_results writes them.
std::string render_records(const ExperimentResult& result);

// ---------------------------------------------------------------------------
// Seed discipline
// ---------------------------------------------------------------------------
//
// Every random draw in a sweep comes from a seed derived as
//   derive_seed(master_seed, {hash_tag(purpose), bit_cast(x), trial[, fold
//   or attempt]})
// with purposes "points", "params", "sim", "folds", "init" and x the sweep
// coordinate as a double bit pattern. Seeds depend only on these coordinates,
// so any subset of a grid reproduces the matching rows of the full sweep.

std::uint64_t sweep_seed(std::uint64_t master, std::string_view purpose, double x,
                         long trial, long extra = 0);

// ---------------------------------------------------------------------------
// Experiment runners
// ---------------------------------------------------------------------------

/// Shared knobs for simulated-data regression experiments.
struct SimulatedExperimentConfig {
  ReactionModel model = ReactionModel::lotka_volterra;
  long nodes = 100;
  double rho = 0.2;
  double dt = 0.01;
  double horizon = 100.0;
  double sigma = 0.1;  // noise amplitude for both equations
  int trials = 10;
  int folds = 4;
  int depth = 4;
  bool augment_time = false;
  bool standardize = false;
  double learning_rate = 0.01;
  double weight_decay = 0.005;
  int epochs = 300;
  int max_resample = 32;  // divergent-simulation retries per trial
  std::uint64_t master_seed = 0;
};

struct DiffusivitySweepConfig {
  SimulatedExperimentConfig base;
  std::vector<double> d_grid = {0.01, 0.02, 0.03, 0.04, 0.05,
                                0.06, 0.07, 0.08, 0.09, 0.10};
};

ExperimentResult run_diffusivity_sweep(const DiffusivitySweepConfig& config);

/// Shared knobs for station-data classification experiments.
struct ClassificationConfig {
  int trials = 10;
  int folds = 4;
  int depth = 4;
  bool augment_time = false;
  bool standardize = true;
  double learning_rate = 0.001;
  double weight_decay = 0.005;
  int epochs = 300;
  Featurizer featurizer = Featurizer::signature;
  std::uint64_t master_seed = 0;
};

struct RadiusSweepConfig {
  ClassificationConfig base;
  std::vector<double> rho_grid_km = {0.0, 10.0, 20.0, 40.0, 60.0, 80.0, 120.0};
};

ExperimentResult run_radius_sweep(const GeoDataset& dataset,
                                  const RadiusSweepConfig& config);

/// Simulated-data ablation: one run per featurizer on identical datasets and
/// identical derived seeds; records are tagged by featurizer arm.
struct SimulatedAblationConfig {
  SimulatedExperimentConfig base;  // defaults overridden to the ablation setup
  SimulatedAblationConfig() {
    base.sigma = 10.0;
    base.rho = 0.2;
  }
};

ExperimentResult run_ablation_simulated(const SimulatedAblationConfig& config);

/// Station-data ablation at a fixed radius.
struct RealAblationConfig {
  ClassificationConfig base;
  double rho_km = 40.0;
};

ExperimentResult run_ablation_real(const GeoDataset& dataset,
                                   const RealAblationConfig& config);

// ---------------------------------------------------------------------------
// Synthetic stand-in dataset
// ---------------------------------------------------------------------------

/// Station-format dataset with planted labels: each station carries a latent
/// intensity, observable only through the drift of its displacement streams;
/// the label thresholds the mean latent intensity over the station's
/// neighborhood at the interaction radius. Own-node features recover the
/// label imperfectly, neighborhood aggregation at the planted radius recovers
/// it well.
struct StandinConfig {
  long stations = 80;
  long days = 240;
  double interaction_radius_km = 40.0;
  double drift_mm_per_day = 0.5;   // latent-to-drift gain on the east channel
  double noise_mm = 1.0;           // daily random-walk noise
  double labeled_fraction = 0.8;
  double dropout = 0.1;            // chance a daily reading is missing
  std::uint64_t seed = 0;
};

GeoDataset make_standin_dataset(const StandinConfig& config);

}  // namespace signet
