#ifndef SWARMSA_ANNEALING_HPP_
#define SWARMSA_ANNEALING_HPP_

#include <cstddef>
#include <optional>
#include <utility>

#include "swarmsa/mkp.hpp"
#include "swarmsa/random.hpp"

namespace swarmsa {

/**
 * Fixed-budget ("fast-track") simulated annealing run by every agent once per
 * generation. Temperatures fall geometrically from t_hot to t_frozen over
 * outer_iterations levels; each level makes inner_iterations proposals.
 */
struct SaConfig {
  std::size_t outer_iterations = 200;
  std::size_t inner_iterations = 1;
  /// Unset means "largest item profit" (see hot_temperature).
  std::optional<double> t_hot;
  double t_frozen = 0.01;
  /// Neighbourhood width: a move inverts between 1 and max_flips bits.
  /// Clamped to the item count of the instance being solved.
  std::size_t max_flips = 3;
  /// Fresh flip sets drawn when a candidate is infeasible before giving up.
  std::size_t neighbor_retry_cap = 20;

  void validate() const;
};

struct SaRunTrace {
  double start_fitness = 0.0;
  double end_fitness = 0.0;
  std::size_t accepted_moves = 0;
  std::size_t proposed_moves = 0;
};

/// t_hot if set, otherwise the largest profit (or 100 * t_frozen when the
/// largest profit does not exceed t_frozen).
double hot_temperature(const SaConfig& cfg, const MkpInstance& instance);

/// Copy of cfg with t_hot resolved against the instance.
SaConfig resolve(const SaConfig& cfg, const MkpInstance& instance);

/// Temperature at `level`: t_hot * (t_frozen / t_hot)^(level / (outer - 1)).
/// cfg.t_hot must be set.
double cooling_step(std::size_t level, const SaConfig& cfg);

/// Maximization Metropolis rule. Improvements and lateral moves are taken;
/// a worsening move (delta < 0) is taken iff exp(delta / temperature) >= rho.
/// Throws std::invalid_argument for non-finite delta or temperature <= 0.
bool accept(double delta, double temperature, double rho);

/// Inverts k distinct random bits, k uniform in [1, max_flips]. Infeasible
/// candidates are redrawn up to neighbor_retry_cap times, after which the
/// current solution is returned. `current` must be feasible.
Solution neighbor(const Solution& current, const MkpInstance& instance, const SaConfig& cfg,
                  RandomStream& rng);

/// Anneals from `hot` and returns the best solution visited (never worse than
/// `hot`). `hot` must be feasible.
std::pair<Solution, SaRunTrace> run_sa(const MkpInstance& instance, const Solution& hot,
                                       const SaConfig& cfg, RandomStream& rng);

}  // namespace swarmsa

#endif
