#include "signet/reaction_diffusion.hpp"

#include <cmath>
#include <string>

#include "signet/errors.hpp"
#include "signet/rng.hpp"

namespace signet {

void ReactionParams::validate() const {
  if (values.cols() != param_count(model))
    throw ShapeError("reaction params: expected " +
                     std::to_string(param_count(model)) + " columns, got " +
                     std::to_string(values.cols()));
  if (values.rows() < 1) throw ShapeError("reaction params: no nodes");
  if (!values.allFinite() || (values.array() < 0.0).any())
    throw DomainError("reaction params: entries must be finite and >= 0");
}

void SimConfig::validate() const {
  if (!(dt > 0.0)) throw DomainError("sim config: dt must be > 0");
  if (!(horizon >= dt)) throw DomainError("sim config: horizon must be >= dt");
  if (diffusivity_u < 0.0 || diffusivity_v < 0.0)
    throw DomainError("sim config: diffusivity must be >= 0");
  if (sigma_u < 0.0 || sigma_v < 0.0)
    throw DomainError("sim config: noise amplitude must be >= 0");
}

std::pair<double, double> lv_reaction(double u, double v, double alpha,
                                      double beta, double delta, double gamma) {
  return {alpha * u - beta * u * v, delta * u * v - gamma * v};
}

std::pair<double, double> fhn_reaction(double u, double v, double epsilon,
                                       double a, double b) {
  return {u - u * u * u / 3.0 - v, epsilon * (u + a - b * v)};
}

Vector diffusion_term(const Vector& state, const ProximityGraph& graph,
                      double diffusivity) {
  if (state.size() != graph.node_count)
    throw ShapeError("diffusion_term: state length " +
                     std::to_string(state.size()) + " != node count " +
                     std::to_string(graph.node_count));
  Vector out = Vector::Zero(state.size());
  if (diffusivity == 0.0) return out;
  for (const auto& [i, j] : graph.edges) {
    const double flow = diffusivity * (state[i] - state[j]);
    out[i] -= flow;
    out[j] += flow;
  }
  return out;
}

std::pair<Vector, Vector> euler_maruyama_step(const Vector& u, const Vector& v,
                                              const ReactionParams& params,
                                              const ProximityGraph& graph,
                                              const SimConfig& config,
                                              const Matrix& noise,
                                              long step_index) {
  const long n = graph.node_count;
  if (u.size() != n || v.size() != n || params.node_count() != n)
    throw ShapeError("euler_maruyama_step: state/params/graph size mismatch");
  if (noise.rows() != 2 || noise.cols() != n)
    throw ShapeError("euler_maruyama_step: noise must be 2 x N");

  Vector ru(n), rv(n);
  for (long i = 0; i < n; ++i) {
    const auto& p = params.values;
    const auto [du, dv] =
        params.model == ReactionModel::lotka_volterra
            ? lv_reaction(u[i], v[i], p(i, 0), p(i, 1), p(i, 2), p(i, 3))
            : fhn_reaction(u[i], v[i], p(i, 0), p(i, 1), p(i, 2));
    ru[i] = du;
    rv[i] = dv;
  }

  const double root_dt = std::sqrt(config.dt);
  Vector next_u = u +
                  (ru + diffusion_term(u, graph, config.diffusivity_u)) * config.dt +
                  config.sigma_u * root_dt * noise.row(0).transpose();
  Vector next_v = v +
                  (rv + diffusion_term(v, graph, config.diffusivity_v)) * config.dt +
                  config.sigma_v * root_dt * noise.row(1).transpose();

  for (long i = 0; i < n; ++i) {
    const bool bad_u = !std::isfinite(next_u[i]) || std::abs(next_u[i]) > kDivergenceGuard;
    const bool bad_v = !std::isfinite(next_v[i]) || std::abs(next_v[i]) > kDivergenceGuard;
    if (bad_u || bad_v)
      throw DivergenceError(step_index, "state at node " + std::to_string(i) +
                                            " left the divergence guard");
  }
  return {std::move(next_u), std::move(next_v)};
}

Trajectory simulate(const ProximityGraph& graph, const ReactionParams& params,
                    const SimConfig& config) {
  params.validate();
  config.validate();
  const long n = graph.node_count;
  if (params.node_count() != n)
    throw ShapeError("simulate: params rows != graph nodes");

  const long steps = static_cast<long>(std::floor(config.horizon / config.dt));
  Trajectory traj;
  traj.params = params;
  traj.times = Vector::LinSpaced(steps + 1, 0.0, steps * config.dt);
  traj.u.resize(steps + 1, n);
  traj.v.resize(steps + 1, n);

  // Draw order is frozen: initial u, initial v, then per step a row of
  // u-noise followed by a row of v-noise.
  Rng rng(config.seed);
  Vector u(n), v(n);
  for (long i = 0; i < n; ++i) u[i] = rng.uniform01();
  for (long i = 0; i < n; ++i) v[i] = rng.uniform01();
  traj.u.row(0) = u;
  traj.v.row(0) = v;

  Matrix noise(2, n);
  for (long k = 1; k <= steps; ++k) {
    for (long i = 0; i < n; ++i) noise(0, i) = rng.normal();
    for (long i = 0; i < n; ++i) noise(1, i) = rng.normal();
    std::tie(u, v) = euler_maruyama_step(u, v, params, graph, config, noise, k);
    traj.u.row(k) = u;
    traj.v.row(k) = v;
  }
  return traj;
}

ReactionParams sample_parameters(ReactionModel model, long node_count,
                                 std::uint64_t seed) {
  if (node_count < 1) throw DomainError("sample_parameters: need >= 1 node");
  ReactionParams params;
  params.model = model;
  params.values.resize(node_count, ReactionParams::param_count(model));
  Rng rng(seed);
  for (long i = 0; i < params.values.rows(); ++i)
    for (long c = 0; c < params.values.cols(); ++c)
      params.values(i, c) = rng.uniform(kParamLow, kParamHigh);
  return params;
}

}  // namespace signet
