#ifndef SWARMSA_SWARM_HPP_
#define SWARMSA_SWARM_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "swarmsa/annealing.hpp"
#include "swarmsa/coordination.hpp"
#include "swarmsa/mkp.hpp"
#include "swarmsa/random.hpp"

namespace swarmsa {

struct SwarmConfig {
  std::size_t swarm_size = 10;
  std::size_t generations = 300;
  SaConfig sa{};
  CoordinatorConfig coordinator{};
  std::uint64_t seed = 1;
  bool stop_at_optimum = false;
  /// Threads used to run the agents of one generation. Results do not depend on it.
  std::size_t threads = 1;

  void validate() const;
};

struct RunResult {
  Solution best;
  /// 0-based generation in which `best` was first produced.
  std::size_t best_generation = 0;
  /// Frozen-pool fitness vector F(t) of every executed generation.
  std::vector<std::vector<double>> fitness_history;
  double wall_time = 0.0;
  std::size_t generations_executed = 0;

  /// Equality ignoring wall_time.
  bool same_outcome(const RunResult& other) const;
};

/// Hot pool plus everything the next generation needs.
struct SwarmState {
  std::vector<Solution> pool;
  std::vector<RandomStream> agent_streams;
  RandomStream coordinator_stream;
  Coordinator coordinator;
  Solution best_so_far;
  std::size_t best_generation = 0;
  std::size_t generation = 0;
};

struct GenerationStats {
  std::vector<double> frozen_fitness;
  Solution generation_best;
  std::vector<SaRunTrace> traces;
};

/// Runs `count` independent tasks on up to `threads` threads and returns once all finish.
void fork_join(std::size_t count, std::size_t threads,
               const std::function<void(std::size_t)>& task);

/// Derives swarm_size + 1 streams from the seed (agents 0..N-1, then the
/// coordinator) and starts every agent from a repaired uniform random vector.
SwarmState init_swarm(const MkpInstance& instance, const SwarmConfig& cfg);

/// Anneals every agent's hot solution, updates the best-so-far and lets the
/// coordinator build the next hot pool in `state.pool`.
GenerationStats run_generation(const MkpInstance& instance, SwarmState& state,
                               const SwarmConfig& cfg);

/// Full run: up to cfg.generations generations, stopping early when
/// stop_at_optimum is set and the instance's known optimum is reached.
RunResult run_swarm(const MkpInstance& instance, const SwarmConfig& cfg);

}  // namespace swarmsa

#endif
