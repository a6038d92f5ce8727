#pragma once

#include <cstdint>
#include <utility>

#include "signet/proximity_graph.hpp"
#include "signet/types.hpp"

namespace signet {

enum class ReactionModel { lotka_volterra, fitzhugh_nagumo };

/// Per-node reaction coefficients: rows are nodes, columns are
/// (alpha, beta, delta, gamma) for Lotka-Volterra or (epsilon, a, b) for
/// FitzHugh-Nagumo. All entries must be finite and >= 0.
struct ReactionParams {
  ReactionModel model = ReactionModel::lotka_volterra;
  Matrix values;

  static int param_count(ReactionModel model) {
    return model == ReactionModel::lotka_volterra ? 4 : 3;
  }
  long node_count() const { return values.rows(); }
  void validate() const;
};

struct SimConfig {
  double dt = 0.01;
  double horizon = 100.0;
  double diffusivity_u = 0.05;
  double diffusivity_v = 0.05;
  double sigma_u = 0.0;
  double sigma_v = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Simulated (u, v) series over all nodes plus the generating parameters,
/// which double as the regression targets.
struct Trajectory {
  Vector times;  // length K = floor(horizon/dt) + 1
  Matrix u;      // K x N
  Matrix v;      // K x N
  ReactionParams params;
};

/// Lotka-Volterra reaction: (alpha*u - beta*u*v, delta*u*v - gamma*v).
std::pair<double, double> lv_reaction(double u, double v, double alpha,
                                      double beta, double delta, double gamma);

/// FitzHugh-Nagumo reaction: (u - u^3/3 - v, epsilon*(u + a - b*v)).
std::pair<double, double> fhn_reaction(double u, double v, double epsilon,
                                       double a, double b);

/// Graph-Laplacian coupling: component i is -D * sum_{(i,j) in E} (x_i - x_j).
Vector diffusion_term(const Vector& state, const ProximityGraph& graph,
                      double diffusivity);

/// One Euler-Maruyama update. noise is 2 x N standard normals (row 0 drives
/// u, row 1 drives v); increments are drift * dt + sigma * sqrt(dt) * noise.
/// Throws DivergenceError (tagged with step_index) if any updated state is
/// non-finite or exceeds the divergence guard of 1e6 in magnitude.
std::pair<Vector, Vector> euler_maruyama_step(const Vector& u, const Vector& v,
                                              const ReactionParams& params,
                                              const ProximityGraph& graph,
                                              const SimConfig& config,
                                              const Matrix& noise,
                                              long step_index = -1);

/// Integrate from uniform-[0,1) initial conditions drawn from config.seed.
/// Bitwise deterministic for fixed (graph, params, config).
Trajectory simulate(const ProximityGraph& graph, const ReactionParams& params,
                    const SimConfig& config);

/// Node-variant parameters drawn i.i.d. uniform on [0.2, 1.0].
ReactionParams sample_parameters(ReactionModel model, long node_count,
                                 std::uint64_t seed);

/// Sampling range used by sample_parameters; regression targets are min-max
/// scaled with these bounds before training.
inline constexpr double kParamLow = 0.2;
inline constexpr double kParamHigh = 1.0;

/// Simulation aborts once any |state| exceeds this.
inline constexpr double kDivergenceGuard = 1e6;

}  // namespace signet
