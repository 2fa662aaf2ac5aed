#include "swarmsa/bench.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace swarmsa {

double rpe(double f_opt, double f_avrg) {
  if (!(f_opt > 0.0)) throw std::invalid_argument("RPE needs a positive optimum");
  return (f_opt - f_avrg) / f_opt;
}

void ExperimentGrid::validate() const {
  if (benchmarks.empty()) throw ConfigError("no benchmarks selected");
  if (coordinators.empty()) throw ConfigError("no coordinators selected");
  if (swarm_sizes.empty()) throw ConfigError("no swarm sizes given");
  if (inner_iterations.empty()) throw ConfigError("no inner iteration counts given");
  if (replications < 1) throw ConfigError("replications must be >= 1");
  for (auto size : swarm_sizes) {
    if (size < 1) throw ConfigError("swarm sizes must be positive");
  }
  for (auto inner : inner_iterations) {
    if (inner < 1) throw ConfigError("inner iteration counts must be positive");
  }
  try {
    base.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::uint64_t replication_seed(const ExperimentGrid& grid, std::size_t cell_index,
                               std::size_t replication) noexcept {
  return grid.seed_base + static_cast<std::uint64_t>(cell_index) * grid.replications +
         replication;
}

double reference_optimum(const ExperimentGrid& grid, const MkpInstance& instance) {
  if (auto it = grid.reference_optima.find(instance.name()); it != grid.reference_optima.end()) {
    if (!(it->second > 0.0)) {
      throw ConfigError("reference optimum for " + instance.name() + " must be positive");
    }
    return it->second;
  }
  if (instance.known_optimum() && *instance.known_optimum() > 0.0) {
    return *instance.known_optimum();
  }
  throw ConfigError("no known optimum for " + instance.name() +
                    "; supply a reference value to compute RPE");
}

std::vector<CellStats> run_grid(const ExperimentGrid& grid, std::size_t parallel_replications) {
  grid.validate();

  struct Cell {
    const MkpInstance* instance;
    SwarmConfig config;
    CellStats stats;
  };
  std::vector<Cell> cells;
  cells.reserve(grid.cell_count());
  for (const auto& instance : grid.benchmarks) {
    const double f_opt = reference_optimum(grid, instance);
    for (auto kind : grid.coordinators) {
      for (auto size : grid.swarm_sizes) {
        for (auto inner : grid.inner_iterations) {
          SwarmConfig cfg = grid.base;
          cfg.coordinator.kind = kind;
          cfg.swarm_size = size;
          cfg.sa.inner_iterations = inner;
          CellStats stats;
          stats.benchmark = instance.name();
          stats.coordinator = kind;
          stats.swarm_size = size;
          stats.inner_iters = inner;
          stats.f_opt = f_opt;
          stats.replications = grid.replications;
          cells.push_back(Cell{&instance, cfg, std::move(stats)});
        }
      }
    }
  }

  const std::size_t reps = grid.replications;
  struct Outcome {
    double best = 0.0;
    double wall_time = 0.0;
  };
  std::vector<Outcome> runs(cells.size() * reps);
  fork_join(runs.size(), std::max<std::size_t>(1, parallel_replications), [&](std::size_t task) {
    const std::size_t c = task / reps;
    const std::size_t r = task % reps;
    SwarmConfig cfg = cells[c].config;
    cfg.seed = replication_seed(grid, c, r);
    const RunResult result = run_swarm(*cells[c].instance, cfg);
    runs[task] = Outcome{result.best.fitness, result.wall_time};
  });

  std::vector<CellStats> out;
  out.reserve(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    CellStats stats = std::move(cells[c].stats);
    double fitness_sum = 0.0;
    double time_sum = 0.0;
    double best = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
      const auto& run = runs[c * reps + r];
      fitness_sum += run.best;
      time_sum += run.wall_time;
      best = std::max(best, run.best);
    }
    stats.f_avrg = fitness_sum / static_cast<double>(reps);
    stats.cpu_mean_s = time_sum / static_cast<double>(reps);
    stats.best_found = best;
    stats.rpe = rpe(stats.f_opt, stats.f_avrg);
    out.push_back(std::move(stats));
  }
  return out;
}

std::vector<Fig2Row> summarize_fig2(const std::vector<CellStats>& cells) {
  if (cells.empty()) throw std::invalid_argument("no cells to summarize");
  using Key = std::tuple<std::string, std::size_t, CoordinatorKind>;
  std::map<Key, std::pair<double, std::size_t>> groups;
  for (const auto& cell : cells) {
    auto& [sum, count] = groups[Key{cell.benchmark, cell.inner_iters, cell.coordinator}];
    sum += cell.rpe;
    ++count;
  }
  std::vector<Fig2Row> rows;
  rows.reserve(groups.size());
  for (const auto& [key, acc] : groups) {
    rows.push_back(Fig2Row{std::get<0>(key), std::get<1>(key), std::get<2>(key),
                           acc.first / static_cast<double>(acc.second)});
  }
  return rows;
}

std::vector<MkpInstance> select_problems(const std::filesystem::path& file,
                                         const std::vector<std::size_t>& problems) {
  BenchmarkFile parsed = load_orlib(file);
  std::vector<MkpInstance> out;
  out.reserve(problems.size());
  for (auto k : problems) {
    if (k < 1 || k > parsed.problems.size()) {
      throw ConfigError("problem " + std::to_string(k) + " not in " + file.string() + " (has " +
                        std::to_string(parsed.problems.size()) + ")");
    }
    out.push_back(parsed.problems[k - 1]);
  }
  return out;
}

}  // namespace swarmsa
