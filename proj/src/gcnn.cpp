#include "signet/gcnn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "signet/errors.hpp"
#include "signet/rng.hpp"

namespace signet {

namespace {

Matrix apply_activation(const Matrix& z, Activation act) {
  switch (act) {
    case Activation::relu:
      return z.cwiseMax(0.0);
    case Activation::sigmoid:
      return ((-z.array()).exp() + 1.0).inverse().matrix();
    case Activation::identity:
      return z;
  }
  throw DomainError("unknown activation");
}

// Derivative in terms of pre-activation z and output x.
Matrix activation_grad(const Matrix& z, const Matrix& x, Activation act) {
  switch (act) {
    case Activation::relu:
      return (z.array() > 0.0).cast<double>().matrix();
    case Activation::sigmoid:
      return (x.array() * (1.0 - x.array())).matrix();
    case Activation::identity:
      return Matrix::Ones(z.rows(), z.cols());
  }
  throw DomainError("unknown activation");
}

Matrix layer_pass(const GcnModel& model, const Matrix& input,
                  const ShiftOperator* shift, ForwardCache* cache) {
  Matrix x = input;
  for (const GcnLayer& layer : model.layers) {
    Matrix aggregated = shift ? Matrix(*shift * x) : x;
    Matrix z = aggregated * layer.weight;
    if (model.use_bias) z.rowwise() += layer.bias.transpose();
    Matrix out = apply_activation(z, layer.activation);
    if (cache) {
      cache->aggregated.push_back(std::move(aggregated));
      cache->preactivation.push_back(std::move(z));
      cache->activation.push_back(out);
    }
    x = std::move(out);
  }
  return x;
}

void check_mask(const NodeMask& mask, long rows, const char* who) {
  if (static_cast<long>(mask.size()) != rows)
    throw ShapeError(std::string(who) + ": mask length != node count");
  if (mask_count(mask) == 0)
    throw DomainError(std::string(who) + ": empty mask");
}

}  // namespace

long mask_count(const NodeMask& mask) {
  return std::count(mask.begin(), mask.end(), static_cast<char>(1));
}

NodeMask full_mask(long node_count) {
  return NodeMask(static_cast<std::size_t>(node_count), 1);
}

GcnModel GcnModel::make(int in_features, int out_features, Activation readout,
                        std::uint64_t seed, bool use_bias) {
  if (in_features < 1 || out_features < 1)
    throw ShapeError("gcn model: feature counts must be >= 1");
  const int widths[4] = {in_features, kHiddenWidth1, kHiddenWidth2, out_features};

  GcnModel model;
  model.use_bias = use_bias;
  Rng rng(seed);
  for (int l = 0; l < 3; ++l) {
    GcnLayer layer;
    const int fan_in = widths[l];
    const int fan_out = widths[l + 1];
    const double limit = std::sqrt(6.0 / (fan_in + fan_out));
    layer.weight.resize(fan_in, fan_out);
    for (long r = 0; r < layer.weight.rows(); ++r)
      for (long c = 0; c < layer.weight.cols(); ++c)
        layer.weight(r, c) = rng.uniform(-limit, limit);
    layer.bias = Vector::Zero(fan_out);
    layer.activation = (l < 2) ? Activation::relu : readout;
    model.layers.push_back(std::move(layer));
  }
  return model;
}

void GcnModel::validate() const {
  if (layers.size() != 3) throw ShapeError("gcn model: expected 3 layers");
  for (std::size_t l = 0; l + 1 < layers.size(); ++l)
    if (layers[l].weight.cols() != layers[l + 1].weight.rows())
      throw ShapeError("gcn model: layer widths do not chain");
  for (const GcnLayer& layer : layers) {
    if (layer.bias.size() != layer.weight.cols())
      throw ShapeError("gcn model: bias length != layer width");
    if (!layer.weight.allFinite() || !layer.bias.allFinite())
      throw DomainError("gcn model: non-finite parameters");
  }
}

Matrix forward(const GcnModel& model, const ShiftOperator& shift,
               const Matrix& features, ForwardCache* cache) {
  if (shift.rows() != shift.cols() || shift.rows() != features.rows())
    throw ShapeError("forward: shift must be N x N matching features");
  if (features.cols() != model.layers.front().weight.rows())
    throw ShapeError("forward: feature count != model input width");
  return layer_pass(model, features, &shift, cache);
}

Matrix mlp_forward(const GcnModel& model, const Matrix& features,
                   ForwardCache* cache) {
  if (features.cols() != model.layers.front().weight.rows())
    throw ShapeError("mlp_forward: feature count != model input width");
  return layer_pass(model, features, nullptr, cache);
}

Gradients backward(const GcnModel& model, const ShiftOperator& shift,
                   const ForwardCache& cache, const Matrix& upstream_grad) {
  const std::size_t layer_count = model.layers.size();
  if (cache.aggregated.size() != layer_count ||
      cache.preactivation.size() != layer_count ||
      cache.activation.size() != layer_count)
    throw ShapeError("backward: cache does not match model");
  if (upstream_grad.rows() != cache.activation.back().rows() ||
      upstream_grad.cols() != cache.activation.back().cols())
    throw ShapeError("backward: upstream gradient shape mismatch");

  Gradients grads;
  grads.weight.resize(layer_count);
  grads.bias.resize(layer_count);

  Matrix grad_x = upstream_grad;  // dL/dX_l, starting at l = L
  for (std::size_t l = layer_count; l-- > 0;) {
    const GcnLayer& layer = model.layers[l];
    const Matrix dz = grad_x.cwiseProduct(activation_grad(
        cache.preactivation[l], cache.activation[l], layer.activation));
    grads.weight[l] = cache.aggregated[l].transpose() * dz;
    grads.bias[l] = model.use_bias ? Vector(dz.colwise().sum().transpose())
                                   : Vector(Vector::Zero(layer.bias.size()));
    if (l > 0) grad_x = shift.transpose() * (dz * layer.weight.transpose());
  }
  return grads;
}

double loss_regression(const Matrix& pred, const Matrix& target,
                       const NodeMask& mask) {
  if (pred.rows() != target.rows() || pred.cols() != target.cols())
    throw ShapeError("loss_regression: pred/target shape mismatch");
  check_mask(mask, pred.rows(), "loss_regression");
  double sum = 0.0;
  for (long i = 0; i < pred.rows(); ++i) {
    if (!mask[i]) continue;
    sum += (pred.row(i) - target.row(i)).squaredNorm();
  }
  return sum / (static_cast<double>(mask_count(mask)) * pred.cols());
}

Matrix loss_regression_grad(const Matrix& pred, const Matrix& target,
                            const NodeMask& mask) {
  if (pred.rows() != target.rows() || pred.cols() != target.cols())
    throw ShapeError("loss_regression_grad: pred/target shape mismatch");
  check_mask(mask, pred.rows(), "loss_regression_grad");
  const double scale =
      2.0 / (static_cast<double>(mask_count(mask)) * pred.cols());
  Matrix grad = Matrix::Zero(pred.rows(), pred.cols());
  for (long i = 0; i < pred.rows(); ++i)
    if (mask[i]) grad.row(i) = scale * (pred.row(i) - target.row(i));
  return grad;
}

double loss_classification(const Matrix& logits, const std::vector<int>& labels,
                           const std::array<double, 2>& class_weights,
                           const NodeMask& mask) {
  if (logits.cols() != 2) throw ShapeError("loss_classification: need 2 logits");
  if (static_cast<long>(labels.size()) != logits.rows())
    throw ShapeError("loss_classification: label count != node count");
  if (class_weights[0] <= 0.0 || class_weights[1] <= 0.0)
    throw DomainError("loss_classification: class weights must be > 0");
  check_mask(mask, logits.rows(), "loss_classification");

  double sum = 0.0;
  for (long i = 0; i < logits.rows(); ++i) {
    if (!mask[i]) continue;
    const int y = labels[i];
    if (y != 0 && y != 1)
      throw DomainError("loss_classification: labels must be 0 or 1");
    const double m = std::max(logits(i, 0), logits(i, 1));
    const double lse = m + std::log(std::exp(logits(i, 0) - m) +
                                    std::exp(logits(i, 1) - m));
    sum += class_weights[y] * (lse - logits(i, y));
  }
  return sum / static_cast<double>(mask_count(mask));
}

Matrix loss_classification_grad(const Matrix& logits,
                                const std::vector<int>& labels,
                                const std::array<double, 2>& class_weights,
                                const NodeMask& mask) {
  if (logits.cols() != 2)
    throw ShapeError("loss_classification_grad: need 2 logits");
  check_mask(mask, logits.rows(), "loss_classification_grad");
  const double inv_count = 1.0 / static_cast<double>(mask_count(mask));

  Matrix grad = Matrix::Zero(logits.rows(), 2);
  for (long i = 0; i < logits.rows(); ++i) {
    if (!mask[i]) continue;
    const int y = labels[i];
    const double m = std::max(logits(i, 0), logits(i, 1));
    const double e0 = std::exp(logits(i, 0) - m);
    const double e1 = std::exp(logits(i, 1) - m);
    const double p1 = e1 / (e0 + e1);
    const double w = class_weights[y] * inv_count;
    grad(i, 0) = w * ((1.0 - p1) - (y == 0 ? 1.0 : 0.0));
    grad(i, 1) = w * (p1 - (y == 1 ? 1.0 : 0.0));
  }
  return grad;
}

AdamState AdamState::init(const GcnModel& model) {
  AdamState state;
  for (const GcnLayer& layer : model.layers) {
    state.m_weight.emplace_back(Matrix::Zero(layer.weight.rows(), layer.weight.cols()));
    state.v_weight.emplace_back(Matrix::Zero(layer.weight.rows(), layer.weight.cols()));
    state.m_bias.emplace_back(Vector::Zero(layer.bias.size()));
    state.v_bias.emplace_back(Vector::Zero(layer.bias.size()));
  }
  return state;
}

namespace {

template <typename Tensor>
void adam_update(Tensor& param, const Tensor& grad, Tensor& m, Tensor& v,
                 const TrainConfig& cfg, double bias1, double bias2) {
  param *= 1.0 - cfg.learning_rate * cfg.weight_decay;  // decoupled decay
  m = cfg.beta1 * m + (1.0 - cfg.beta1) * grad;
  v = cfg.beta2 * v + (1.0 - cfg.beta2) * grad.cwiseProduct(grad);
  const auto m_hat = m.array() / bias1;
  const auto v_hat = v.array() / bias2;
  param.array() -= cfg.learning_rate * m_hat / (v_hat.sqrt() + cfg.epsilon);
}

}  // namespace

void adam_step(GcnModel& model, const Gradients& grads, AdamState& state,
               const TrainConfig& config) {
  if (grads.weight.size() != model.layers.size())
    throw ShapeError("adam_step: gradient count != layer count");
  state.step += 1;
  const double bias1 = 1.0 - std::pow(config.beta1, static_cast<double>(state.step));
  const double bias2 = 1.0 - std::pow(config.beta2, static_cast<double>(state.step));
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    adam_update(model.layers[l].weight, grads.weight[l], state.m_weight[l],
                state.v_weight[l], config, bias1, bias2);
    if (model.use_bias)
      adam_update(model.layers[l].bias, grads.bias[l], state.m_bias[l],
                  state.v_bias[l], config, bias1, bias2);
  }
}

namespace {

// Shared full-batch loop; loss_fn returns (loss, dL/doutput) for a mask.
template <typename LossFn>
LossCurve train_loop(GcnModel& model, const ShiftOperator& shift,
                     const Matrix& features, const NodeMask& train_mask,
                     const NodeMask& val_mask, const TrainConfig& config,
                     LossFn&& loss_fn) {
  model.validate();
  AdamState state = AdamState::init(model);
  LossCurve curve;
  curve.train.reserve(config.epochs);
  const bool track_val = mask_count(val_mask) > 0;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    ForwardCache cache;
    const Matrix out = forward(model, shift, features, &cache);
    const auto [train_loss, upstream] = loss_fn(out, train_mask);
    if (!std::isfinite(train_loss))
      throw TrainingError(epoch, "training loss is not finite");
    curve.train.push_back(train_loss);
    if (track_val) curve.val.push_back(loss_fn(out, val_mask).first);

    const Gradients grads = backward(model, shift, cache, upstream);
    adam_step(model, grads, state, config);
  }
  return curve;
}

}  // namespace

LossCurve train_regression(GcnModel& model, const ShiftOperator& shift,
                           const Matrix& features, const Matrix& targets,
                           const NodeMask& train_mask, const NodeMask& val_mask,
                           const TrainConfig& config) {
  return train_loop(model, shift, features, train_mask, val_mask, config,
                    [&](const Matrix& out, const NodeMask& mask) {
                      return std::make_pair(loss_regression(out, targets, mask),
                                            loss_regression_grad(out, targets, mask));
                    });
}

LossCurve train_classification(GcnModel& model, const ShiftOperator& shift,
                               const Matrix& features,
                               const std::vector<int>& labels,
                               const std::array<double, 2>& class_weights,
                               const NodeMask& train_mask,
                               const NodeMask& val_mask,
                               const TrainConfig& config) {
  return train_loop(
      model, shift, features, train_mask, val_mask, config,
      [&](const Matrix& out, const NodeMask& mask) {
        return std::make_pair(
            loss_classification(out, labels, class_weights, mask),
            loss_classification_grad(out, labels, class_weights, mask));
      });
}

RegressionMetrics regression_metrics(const Matrix& pred, const Matrix& target,
                                     const NodeMask& mask) {
  if (pred.rows() != target.rows() || pred.cols() != target.cols())
    throw ShapeError("regression_metrics: shape mismatch");
  check_mask(mask, pred.rows(), "regression_metrics");
  RegressionMetrics metrics;
  for (long i = 0; i < pred.rows(); ++i) {
    if (!mask[i]) continue;
    metrics.mse += (pred.row(i) - target.row(i)).squaredNorm();
    metrics.mae += (pred.row(i) - target.row(i)).cwiseAbs().sum();
  }
  const double denom = static_cast<double>(mask_count(mask)) * pred.cols();
  metrics.mse /= denom;
  metrics.mae /= denom;
  return metrics;
}

ClassificationMetrics classification_metrics(const Matrix& logits,
                                             const std::vector<int>& labels,
                                             const NodeMask& mask) {
  if (logits.cols() != 2) throw ShapeError("classification_metrics: need 2 logits");
  check_mask(mask, logits.rows(), "classification_metrics");

  long tp = 0, fp = 0, fn = 0, correct = 0, total = 0;
  for (long i = 0; i < logits.rows(); ++i) {
    if (!mask[i]) continue;
    const int pred = logits(i, 1) > logits(i, 0) ? 1 : 0;
    const int y = labels[i];
    total += 1;
    if (pred == y) correct += 1;
    if (pred == 1 && y == 1) tp += 1;
    if (pred == 1 && y == 0) fp += 1;
    if (pred == 0 && y == 1) fn += 1;
  }
  ClassificationMetrics metrics;
  metrics.accuracy = static_cast<double>(correct) / total;
  metrics.precision_defined = (tp + fp) > 0;
  metrics.precision =
      metrics.precision_defined ? static_cast<double>(tp) / (tp + fp) : 0.0;
  metrics.recall = (tp + fn) > 0 ? static_cast<double>(tp) / (tp + fn) : 0.0;
  metrics.f1 = (metrics.precision + metrics.recall) > 0.0
                   ? 2.0 * metrics.precision * metrics.recall /
                         (metrics.precision + metrics.recall)
                   : 0.0;
  return metrics;
}

RegressionMetrics evaluate_regression(const GcnModel& model,
                                      const ShiftOperator& shift,
                                      const Matrix& features,
                                      const Matrix& targets,
                                      const NodeMask& mask) {
  return regression_metrics(forward(model, shift, features), targets, mask);
}

ClassificationMetrics evaluate_classification(const GcnModel& model,
                                              const ShiftOperator& shift,
                                              const Matrix& features,
                                              const std::vector<int>& labels,
                                              const NodeMask& mask) {
  return classification_metrics(forward(model, shift, features), labels, mask);
}

KFoldSplit kfold_split(long node_count, const std::vector<int>& labeled_ids,
                       int folds, std::uint64_t trial_seed,
                       const std::vector<int>* labels) {
  if (folds < 2) throw DomainError("kfold_split: folds must be >= 2");
  if (static_cast<long>(labeled_ids.size()) < folds)
    throw DomainError("kfold_split: fewer labeled nodes than folds");
  for (int id : labeled_ids)
    if (id < 0 || id >= node_count)
      throw IndexError("kfold_split: node id out of range");

  // Group ids by class when stratifying; otherwise one group.
  std::vector<std::vector<int>> groups;
  bool stratified = false;
  if (labels) {
    std::vector<int> class0, class1;
    for (int id : labeled_ids)
      ((*labels)[id] == 1 ? class1 : class0).push_back(id);
    if (static_cast<int>(class0.size()) >= folds &&
        static_cast<int>(class1.size()) >= folds) {
      groups = {std::move(class0), std::move(class1)};
      stratified = true;
    }
  }
  if (!stratified) groups = {labeled_ids};

  Rng rng(trial_seed);
  std::vector<std::vector<int>> fold_ids(folds);
  for (std::vector<int>& group : groups) {
    for (std::size_t i = group.size(); i > 1; --i)
      std::swap(group[i - 1], group[rng.below(i)]);
    for (std::size_t i = 0; i < group.size(); ++i)
      fold_ids[i % folds].push_back(group[i]);
  }

  KFoldSplit split;
  split.stratified = stratified;
  for (int f = 0; f < folds; ++f) {
    FoldSplit fold;
    fold.train.assign(node_count, 0);
    fold.test.assign(node_count, 0);
    for (int g = 0; g < folds; ++g)
      for (int id : fold_ids[g]) (g == f ? fold.test : fold.train)[id] = 1;
    split.folds.push_back(std::move(fold));
  }
  return split;
}

namespace {

constexpr const char* kCheckpointHeader = "signet-gcnn-checkpoint v1";

const char* activation_name(Activation act) {
  switch (act) {
    case Activation::relu: return "relu";
    case Activation::sigmoid: return "sigmoid";
    case Activation::identity: return "identity";
  }
  return "?";
}

Activation activation_from_name(const std::string& name) {
  if (name == "relu") return Activation::relu;
  if (name == "sigmoid") return Activation::sigmoid;
  if (name == "identity") return Activation::identity;
  throw DataError("checkpoint: unknown activation '" + name + "'");
}

std::string hex_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%a", x);
  return buf;
}

}  // namespace

void save_model(const GcnModel& model, const std::string& path) {
  model.validate();
  std::ofstream out(path);
  if (!out) throw DataError("cannot open checkpoint for writing: " + path);
  out << kCheckpointHeader << "\n";
  out << "use_bias " << (model.use_bias ? 1 : 0) << "\n";
  out << "layers " << model.layers.size() << "\n";
  for (const GcnLayer& layer : model.layers) {
    out << "layer " << layer.weight.rows() << " " << layer.weight.cols() << " "
        << activation_name(layer.activation) << "\n";
    for (long r = 0; r < layer.weight.rows(); ++r) {
      for (long c = 0; c < layer.weight.cols(); ++c)
        out << (c ? " " : "") << hex_double(layer.weight(r, c));
      out << "\n";
    }
    for (long c = 0; c < layer.bias.size(); ++c)
      out << (c ? " " : "") << hex_double(layer.bias[c]);
    out << "\n";
  }
  if (!out) throw DataError("failed writing checkpoint: " + path);
}

GcnModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open checkpoint: " + path);
  std::string line;
  if (!std::getline(in, line) || line != kCheckpointHeader)
    throw DataError("checkpoint: bad header in " + path);

  GcnModel model;
  std::string key;
  int bias_flag = 0;
  std::size_t layer_count = 0;
  in >> key >> bias_flag;
  if (key != "use_bias") throw DataError("checkpoint: expected use_bias");
  in >> key >> layer_count;
  if (key != "layers") throw DataError("checkpoint: expected layers");
  model.use_bias = bias_flag != 0;

  for (std::size_t l = 0; l < layer_count; ++l) {
    long rows = 0, cols = 0;
    std::string act;
    in >> key >> rows >> cols >> act;
    if (key != "layer" || rows < 1 || cols < 1)
      throw DataError("checkpoint: bad layer record");
    GcnLayer layer;
    layer.activation = activation_from_name(act);
    layer.weight.resize(rows, cols);
    layer.bias.resize(cols);
    std::string tok;
    for (long r = 0; r < rows; ++r)
      for (long c = 0; c < cols; ++c) {
        in >> tok;
        layer.weight(r, c) = std::strtod(tok.c_str(), nullptr);
      }
    for (long c = 0; c < cols; ++c) {
      in >> tok;
      layer.bias[c] = std::strtod(tok.c_str(), nullptr);
    }
    if (!in) throw DataError("checkpoint: truncated file " + path);
    model.layers.push_back(std::move(layer));
  }
  model.validate();
  return model;
}

}  // namespace signet
