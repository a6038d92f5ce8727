#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "signet/proximity_graph.hpp"
#include "signet/types.hpp"

namespace signet {

enum class Activation { relu, sigmoid, identity };
enum class Task { regression, classification };

/// Boolean node selector, length N.
using NodeMask = std::vector<char>;

long mask_count(const NodeMask& mask);
NodeMask full_mask(long node_count);

struct GcnLayer {
  Matrix weight;  // F_{l-1} x F_l
  Vector bias;    // F_l
  Activation activation = Activation::relu;
};

/// Fixed three-stage graph convolutional network: input -> 32 -> 16 -> output,
/// ReLU on the hidden stages, sigmoid or identity readout.
struct GcnModel {
  std::vector<GcnLayer> layers;
  bool use_bias = true;

  static constexpr int kHiddenWidth1 = 32;
  static constexpr int kHiddenWidth2 = 16;

  /// Glorot-uniform initialization, deterministic per seed; biases start at 0.
  static GcnModel make(int in_features, int out_features, Activation readout,
                       std::uint64_t seed, bool use_bias = true);

  int input_features() const { return static_cast<int>(layers.front().weight.rows()); }
  int output_features() const { return static_cast<int>(layers.back().weight.cols()); }
  void validate() const;
};

/// Per-layer tensors retained by forward for the backward pass.
struct ForwardCache {
  std::vector<Matrix> aggregated;   // S * X_{l-1}, one per layer
  std::vector<Matrix> preactivation;  // S * X_{l-1} * W + 1 b^T
  std::vector<Matrix> activation;     // layer outputs X_l
};

/// X_l = act_l(S X_{l-1} W_l + 1 b_l^T) through all layers; returns X_L.
Matrix forward(const GcnModel& model, const ShiftOperator& shift,
               const Matrix& features, ForwardCache* cache = nullptr);

/// The same network applied without graph structure (no shift). Used as the
/// MLP baseline; bitwise equal to forward with the identity shift.
Matrix mlp_forward(const GcnModel& model, const Matrix& features,
                   ForwardCache* cache = nullptr);

struct Gradients {
  std::vector<Matrix> weight;
  std::vector<Vector> bias;
};

/// Reverse-mode gradients of a scalar loss with upstream dL/dX_L.
Gradients backward(const GcnModel& model, const ShiftOperator& shift,
                   const ForwardCache& cache, const Matrix& upstream_grad);

/// Mean over masked nodes and output columns of (pred - target)^2.
double loss_regression(const Matrix& pred, const Matrix& target,
                       const NodeMask& mask);
Matrix loss_regression_grad(const Matrix& pred, const Matrix& target,
                            const NodeMask& mask);

/// Class-weighted softmax cross-entropy over two logits, averaged over masked
/// nodes; the weight of a node's true class scales its term.
double loss_classification(const Matrix& logits, const std::vector<int>& labels,
                           const std::array<double, 2>& class_weights,
                           const NodeMask& mask);
Matrix loss_classification_grad(const Matrix& logits,
                                const std::vector<int>& labels,
                                const std::array<double, 2>& class_weights,
                                const NodeMask& mask);

struct TrainConfig {
  double learning_rate = 0.01;
  double weight_decay = 0.005;
  int epochs = 300;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  Task task = Task::regression;
  int folds = 4;
  int trials = 10;
  std::uint64_t seed = 0;
};

struct AdamState {
  std::vector<Matrix> m_weight, v_weight;
  std::vector<Vector> m_bias, v_bias;
  long step = 0;

  static AdamState init(const GcnModel& model);
};

/// One Adam update with bias correction. Weight decay is decoupled: every
/// parameter is first scaled by (1 - lr * wd), then the Adam increment is
/// applied.
void adam_step(GcnModel& model, const Gradients& grads, AdamState& state,
               const TrainConfig& config);

struct LossCurve {
  std::vector<double> train;
  std::vector<double> val;  // empty when no validation mask is given
};

/// Full-batch training; deterministic per config. Losses are recorded from
/// the pre-update forward pass of each epoch. Throws TrainingError when the
/// loss stops being finite.
LossCurve train_regression(GcnModel& model, const ShiftOperator& shift,
                           const Matrix& features, const Matrix& targets,
                           const NodeMask& train_mask, const NodeMask& val_mask,
                           const TrainConfig& config);
LossCurve train_classification(GcnModel& model, const ShiftOperator& shift,
                               const Matrix& features,
                               const std::vector<int>& labels,
                               const std::array<double, 2>& class_weights,
                               const NodeMask& train_mask,
                               const NodeMask& val_mask,
                               const TrainConfig& config);

struct RegressionMetrics {
  double mse = 0.0;
  double mae = 0.0;
};

struct ClassificationMetrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool precision_defined = true;  // false when there were no positive predictions
};

RegressionMetrics regression_metrics(const Matrix& pred, const Matrix& target,
                                     const NodeMask& mask);

/// Argmax decision over two logits; class 1 is the positive class.
ClassificationMetrics classification_metrics(const Matrix& logits,
                                             const std::vector<int>& labels,
                                             const NodeMask& mask);

RegressionMetrics evaluate_regression(const GcnModel& model,
                                      const ShiftOperator& shift,
                                      const Matrix& features,
                                      const Matrix& targets,
                                      const NodeMask& mask);
ClassificationMetrics evaluate_classification(const GcnModel& model,
                                              const ShiftOperator& shift,
                                              const Matrix& features,
                                              const std::vector<int>& labels,
                                              const NodeMask& mask);

struct FoldSplit {
  NodeMask train;
  NodeMask test;
};

struct KFoldSplit {
  std::vector<FoldSplit> folds;
  bool stratified = false;  // false when stratification fell back
};

/// Shuffled k-fold partition of the labeled nodes, stratified by class when
/// labels are given and every class has at least `folds` members (otherwise
/// falls back to an unstratified shuffle). Each node is in exactly one test
/// fold. Deterministic per trial_seed.
KFoldSplit kfold_split(long node_count, const std::vector<int>& labeled_ids,
                       int folds, std::uint64_t trial_seed,
                       const std::vector<int>* labels = nullptr);

/// Versioned textual checkpoint; parameters are written as hex floats so the
/// round trip is exact.
void save_model(const GcnModel& model, const std::string& path);
GcnModel load_model(const std::string& path);

}  // namespace signet
