#include "swarmsa/coordination.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

namespace swarmsa {

namespace {

void require_pool(std::span<const Solution> frozen) {
  if (frozen.empty()) throw std::invalid_argument("coordinator called with an empty pool");
}

std::size_t argmax(std::span<const Solution> pool) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < pool.size(); ++i) {
    if (pool[i].fitness > pool[best].fitness) best = i;
  }
  return best;
}

}  // namespace

std::string_view to_string(CoordinatorKind kind) noexcept {
  switch (kind) {
    case CoordinatorKind::esa: return "ESA";
    case CoordinatorKind::bco: return "BCO";
    case CoordinatorKind::pso: return "PSO";
  }
  return "?";
}

CoordinatorKind parse_coordinator(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "esa") return CoordinatorKind::esa;
  if (lower == "bco") return CoordinatorKind::bco;
  if (lower == "pso") return CoordinatorKind::pso;
  throw std::invalid_argument("unknown coordinator '" + std::string(text) +
                              "' (expected esa, bco or pso)");
}

void PsoParams::validate() const {
  for (double v : {c1, c2, w0, beta, delta, v_max}) {
    if (!std::isfinite(v)) throw std::invalid_argument("PSO parameters must be finite");
  }
  if (c1 < 0.0 || c2 < 0.0) throw std::invalid_argument("PSO learning factors must be >= 0");
  if (w0 <= 0.0) throw std::invalid_argument("PSO inertia must be > 0");
  if (!(beta > 0.0 && beta <= 1.0)) throw std::invalid_argument("PSO beta must be in (0, 1]");
  if (delta <= 0.0) throw std::invalid_argument("PSO constriction must be > 0");
  if (v_max <= 0.0) throw std::invalid_argument("PSO v_max must be > 0");
}

std::vector<Solution> esa_coordinate(std::span<const Solution> frozen) {
  require_pool(frozen);
  return {frozen.begin(), frozen.end()};
}

std::vector<Solution> bco_coordinate(std::span<const Solution> frozen,
                                     const Solution& global_best) {
  require_pool(frozen);
  if (frozen[argmax(frozen)].fitness > global_best.fitness) {
    throw std::invalid_argument("BCO broadcast source is worse than a pooled solution");
  }
  return std::vector<Solution>(frozen.size(), global_best);
}

PsoState pso_initial_state(std::span<const Solution> frozen, const PsoParams& params,
                           RandomStream& rng) {
  require_pool(frozen);
  params.validate();
  PsoState state;
  state.inertia = params.w0;
  state.personal_bests.assign(frozen.begin(), frozen.end());
  state.global_best = frozen[argmax(frozen)];
  state.velocities.reserve(frozen.size());
  for (const auto& s : frozen) {
    std::vector<double> v(s.bits.size());
    for (auto& vk : v) vk = (2.0 * rng.uniform01() - 1.0) * params.v_max;
    state.velocities.push_back(std::move(v));
  }
  return state;
}

void pso_refresh_bests(PsoState& state, std::span<const Solution> frozen) {
  if (frozen.size() != state.personal_bests.size()) {
    throw std::invalid_argument("pool size does not match the PSO state");
  }
  for (std::size_t i = 0; i < frozen.size(); ++i) {
    if (frozen[i].fitness > state.personal_bests[i].fitness) state.personal_bests[i] = frozen[i];
  }
  const std::size_t best = argmax(state.personal_bests);
  if (state.personal_bests[best].fitness > state.global_best.fitness) {
    state.global_best = state.personal_bests[best];
  }
}

double pso_velocity(double velocity, int position, int personal_best, int global_best,
                    double inertia, double r1, double r2, const PsoParams& params) noexcept {
  const double v = params.delta * (inertia * velocity +
                                   params.c1 * r1 * (personal_best - position) +
                                   params.c2 * r2 * (global_best - position));
  return std::clamp(v, -params.v_max, params.v_max);
}

PsoState pso_velocity_update(PsoState state, std::span<const Solution> frozen,
                             const PsoParams& params, RandomStream& rng) {
  const std::size_t agents = state.velocities.size();
  if (frozen.size() != agents || state.personal_bests.size() != agents) {
    throw std::invalid_argument("PSO agent counts disagree");
  }
  const std::size_t n = state.global_best.bits.size();
  for (std::size_t i = 0; i < agents; ++i) {
    auto& v = state.velocities[i];
    const auto& x = frozen[i].bits;
    const auto& y = state.personal_bests[i].bits;
    const auto& g = state.global_best.bits;
    if (v.size() != n || x.size() != n || y.size() != n) {
      throw std::invalid_argument("PSO dimension mismatch");
    }
    for (std::size_t k = 0; k < n; ++k) {
      const double r1 = rng.uniform01();
      const double r2 = rng.uniform01();
      v[k] = pso_velocity(v[k], x[k], y[k], g[k], state.inertia, r1, r2, params);
    }
  }
  state.inertia *= params.beta;
  return state;
}

double sigmoid(double v) noexcept { return 1.0 / (1.0 + std::exp(-v)); }

std::vector<BitVector> pso_position_sample(const std::vector<std::vector<double>>& velocities,
                                           RandomStream& rng) {
  std::vector<BitVector> positions;
  positions.reserve(velocities.size());
  for (const auto& v : velocities) {
    BitVector bits(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (!std::isfinite(v[k])) throw std::invalid_argument("non-finite PSO velocity");
      bits[k] = rng.uniform01() < sigmoid(v[k]) ? 1 : 0;
    }
    positions.push_back(std::move(bits));
  }
  return positions;
}

std::pair<std::vector<Solution>, PsoState> pso_coordinate(PsoState state,
                                                          std::span<const Solution> frozen,
                                                          const PsoParams& params,
                                                          const MkpInstance& instance,
                                                          RandomStream& rng) {
  require_pool(frozen);
  pso_refresh_bests(state, frozen);
  state = pso_velocity_update(std::move(state), frozen, params, rng);
  auto positions = pso_position_sample(state.velocities, rng);
  std::vector<Solution> hot;
  hot.reserve(positions.size());
  for (auto& bits : positions) hot.push_back(repair(instance, std::move(bits)));
  return {std::move(hot), std::move(state)};
}

Coordinator::Coordinator(CoordinatorConfig config) : config_(config) {
  if (config_.kind == CoordinatorKind::pso) config_.pso.validate();
}

std::vector<Solution> Coordinator::next_hot(std::span<const Solution> frozen,
                                            const Solution& best_so_far,
                                            const MkpInstance& instance, RandomStream& rng) {
  require_pool(frozen);
  switch (config_.kind) {
    case CoordinatorKind::esa:
      return esa_coordinate(frozen);
    case CoordinatorKind::bco:
      if (config_.bco_source == BcoSource::best_of_generation) {
        return bco_coordinate(frozen, frozen[argmax(frozen)]);
      }
      return bco_coordinate(frozen, best_so_far);
    case CoordinatorKind::pso: {
      if (!pso_) pso_ = pso_initial_state(frozen, config_.pso, rng);
      auto [hot, next] = pso_coordinate(std::move(*pso_), frozen, config_.pso, instance, rng);
      pso_ = std::move(next);
      return std::move(hot);
    }
  }
  throw std::logic_error("unhandled coordinator kind");
}

}  // namespace swarmsa
