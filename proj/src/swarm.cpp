#include "swarmsa/swarm.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace swarmsa {

void SwarmConfig::validate() const {
  if (swarm_size < 1) throw std::invalid_argument("swarm_size must be >= 1");
  if (generations < 1) throw std::invalid_argument("generations must be >= 1");
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
  sa.validate();
  if (coordinator.kind == CoordinatorKind::pso) coordinator.pso.validate();
}

bool RunResult::same_outcome(const RunResult& other) const {
  return best == other.best && best_generation == other.best_generation &&
         fitness_history == other.fitness_history &&
         generations_executed == other.generations_executed;
}

void fork_join(std::size_t count, std::size_t threads,
               const std::function<void(std::size_t)>& task) {
  const std::size_t workers = std::min(threads, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto drain = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(drain);
    drain();
  }
  if (failure) std::rethrow_exception(failure);
}

SwarmState init_swarm(const MkpInstance& instance, const SwarmConfig& cfg) {
  cfg.validate();
  const std::size_t n = instance.items();
  std::vector<RandomStream> streams;
  streams.reserve(cfg.swarm_size);
  for (std::size_t i = 0; i < cfg.swarm_size; ++i) {
    streams.push_back(RandomStream::derive(cfg.seed, i));
  }

  std::vector<Solution> pool;
  pool.reserve(cfg.swarm_size);
  for (auto& rng : streams) {
    BitVector bits(n);
    for (auto& b : bits) b = rng.coin() ? 1 : 0;
    pool.push_back(repair(instance, std::move(bits)));
  }

  return SwarmState{
      .pool = std::move(pool),
      .agent_streams = std::move(streams),
      .coordinator_stream = RandomStream::derive(cfg.seed, cfg.swarm_size),
      .coordinator = Coordinator(cfg.coordinator),
      .best_so_far = Solution{BitVector(n, 0), 0.0},
      .best_generation = 0,
      .generation = 0,
  };
}

GenerationStats run_generation(const MkpInstance& instance, SwarmState& state,
                               const SwarmConfig& cfg) {
  const std::size_t agents = state.pool.size();
  if (agents != cfg.swarm_size || state.agent_streams.size() != agents) {
    throw std::invalid_argument("swarm state does not match the configured swarm size");
  }

  std::vector<Solution> frozen(agents);
  GenerationStats stats;
  stats.traces.resize(agents);
  fork_join(agents, cfg.threads, [&](std::size_t i) {
    auto [solution, trace] = run_sa(instance, state.pool[i], cfg.sa, state.agent_streams[i]);
    frozen[i] = std::move(solution);
    stats.traces[i] = trace;
  });

  stats.frozen_fitness.reserve(agents);
  std::size_t best = 0;
  for (std::size_t i = 0; i < agents; ++i) {
    stats.frozen_fitness.push_back(frozen[i].fitness);
    if (frozen[i].fitness > frozen[best].fitness) best = i;
  }
  stats.generation_best = frozen[best];
  if (state.generation == 0 || frozen[best].fitness > state.best_so_far.fitness) {
    state.best_so_far = frozen[best];
    state.best_generation = state.generation;
  }

  state.pool =
      state.coordinator.next_hot(frozen, state.best_so_far, instance, state.coordinator_stream);
  ++state.generation;
  return stats;
}

RunResult run_swarm(const MkpInstance& instance, const SwarmConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  SwarmState state = init_swarm(instance, cfg);

  RunResult result;
  result.fitness_history.reserve(cfg.generations);
  const auto& optimum = instance.known_optimum();
  for (std::size_t t = 0; t < cfg.generations; ++t) {
    auto stats = run_generation(instance, state, cfg);
    result.fitness_history.push_back(std::move(stats.frozen_fitness));
    ++result.generations_executed;
    if (cfg.stop_at_optimum && optimum && reaches(state.best_so_far.fitness, *optimum)) break;
  }

  result.best = state.best_so_far;
  result.best_generation = state.best_generation;
  result.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace swarmsa
