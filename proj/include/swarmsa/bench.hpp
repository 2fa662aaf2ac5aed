#ifndef SWARMSA_BENCH_HPP_
#define SWARMSA_BENCH_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "swarmsa/coordination.hpp"
#include "swarmsa/mkp.hpp"
#include "swarmsa/orlib.hpp"
#include "swarmsa/swarm.hpp"

namespace swarmsa {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Relative error (f_opt - f_avrg) / f_opt, as a fraction. Throws
/// std::invalid_argument unless f_opt > 0.
double rpe(double f_opt, double f_avrg);

struct ExperimentGrid {
  std::vector<MkpInstance> benchmarks;
  std::vector<CoordinatorKind> coordinators;
  std::vector<std::size_t> swarm_sizes;
  std::vector<std::size_t> inner_iterations;
  std::size_t replications = 50;
  std::uint64_t seed_base = 0;
  /// Everything except swarm size, inner iterations, coordinator kind and seed.
  SwarmConfig base{};
  /// Reference optima by benchmark name; override the file's optimum.
  std::map<std::string, double> reference_optima;

  void validate() const;
  std::size_t cell_count() const noexcept {
    return benchmarks.size() * coordinators.size() * swarm_sizes.size() *
           inner_iterations.size();
  }
};

/// Seed of replication `replication` in the cell at position `cell_index` of
/// the grid order: seed_base + cell_index * replications + replication.
std::uint64_t replication_seed(const ExperimentGrid& grid, std::size_t cell_index,
                               std::size_t replication) noexcept;

/// Optimum used for RPE: grid override, else the instance's own. Throws
/// ConfigError naming the instance when neither exists.
double reference_optimum(const ExperimentGrid& grid, const MkpInstance& instance);

/// Runs every cell (benchmark x coordinator x swarm size x inner iterations,
/// in that nesting order) for grid.replications seeded runs, spreading runs
/// over `parallel_replications` threads.
std::vector<CellStats> run_grid(const ExperimentGrid& grid, std::size_t parallel_replications);

/// Mean RPE over swarm sizes per (benchmark, inner iterations, coordinator).
std::vector<Fig2Row> summarize_fig2(const std::vector<CellStats>& cells);

/// Loads the 1-based `problems` of an OR-Library file.
std::vector<MkpInstance> select_problems(const std::filesystem::path& file,
                                         const std::vector<std::size_t>& problems);

}  // namespace swarmsa

#endif
