// Command-line driver for the SA-agent swarm.
//
//   swarmsa solve <file> --problem 6 --coordinator pso --swarm-size 20 --inner 1
//   swarmsa bench <file> --problems 6,7 --coordinators esa,bco,pso --out results.csv
//
// Both subcommands also read a TOML config file (--config, placed before the
// subcommand, one table per subcommand); flags on the command line take
// precedence over values from the file.

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "swarmsa/bench.hpp"
#include "swarmsa/orlib.hpp"
#include "swarmsa/swarm.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInput = 3;

struct SwarmFlags {
  std::size_t generations = 300;
  std::size_t outer = 200;
  double t_hot = 0.0;  // 0 = largest profit
  double t_frozen = 0.01;
  std::size_t max_flips = 3;
  std::size_t retry_cap = 20;
  swarmsa::PsoParams pso{};
  std::string bco_source = "best-so-far";

  void add_to(CLI::App& app) {
    app.add_option("--generations", generations, "Generation budget")->capture_default_str();
    app.add_option("--outer", outer, "Temperature levels per SA run")->capture_default_str();
    app.add_option("--t-hot", t_hot, "Initial temperature (0 = largest profit)")
        ->capture_default_str();
    app.add_option("--t-frozen", t_frozen, "Final temperature")->capture_default_str();
    app.add_option("--max-flips", max_flips, "Bits inverted per move, at most")
        ->capture_default_str();
    app.add_option("--retry-cap", retry_cap, "Redraws for infeasible neighbours")
        ->capture_default_str();
    app.add_option("--c1", pso.c1, "PSO cognitive factor")->capture_default_str();
    app.add_option("--c2", pso.c2, "PSO social factor")->capture_default_str();
    app.add_option("--w0", pso.w0, "PSO initial inertia")->capture_default_str();
    app.add_option("--beta", pso.beta, "PSO inertia decrement")->capture_default_str();
    app.add_option("--delta", pso.delta, "PSO constriction factor")->capture_default_str();
    app.add_option("--v-max", pso.v_max, "PSO velocity clamp")->capture_default_str();
    app.add_option("--bco-source", bco_source, "BCO broadcast source")
        ->check(CLI::IsMember({"best-so-far", "best-of-generation"}))
        ->capture_default_str();
  }

  swarmsa::SwarmConfig base() const {
    swarmsa::SwarmConfig cfg;
    cfg.generations = generations;
    cfg.sa.outer_iterations = outer;
    if (t_hot > 0.0) cfg.sa.t_hot = t_hot;
    cfg.sa.t_frozen = t_frozen;
    cfg.sa.max_flips = max_flips;
    cfg.sa.neighbor_retry_cap = retry_cap;
    cfg.coordinator.pso = pso;
    cfg.coordinator.bco_source = bco_source == "best-of-generation"
                                     ? swarmsa::BcoSource::best_of_generation
                                     : swarmsa::BcoSource::best_so_far;
    return cfg;
  }
};

std::string bit_string(const swarmsa::BitVector& bits) {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

std::map<std::string, double> parse_references(const std::vector<std::string>& entries) {
  std::map<std::string, double> out;
  for (const auto& e : entries) {
    const auto eq = e.find('=');
    if (eq == std::string::npos) {
      throw swarmsa::ConfigError("reference '" + e + "' is not of the form <problem>=<value>");
    }
    const std::string key = e.substr(0, eq);
    double value = 0.0;
    try {
      value = std::stod(e.substr(eq + 1));
    } catch (const std::exception&) {
      throw swarmsa::ConfigError("reference '" + e + "' has a non-numeric value");
    }
    // Bare problem indices name the instance the way the parser does.
    const bool numeric = !key.empty() && std::all_of(key.begin(), key.end(), ::isdigit);
    out[numeric ? "MKP" + key : key] = value;
  }
  return out;
}

void open_output(std::ofstream& out, const std::string& path) {
  out.open(path);
  if (!out) throw swarmsa::OrlibError("cannot write " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Swarm of simulated-annealing agents for the multidimensional knapsack problem"};
  app.set_config("--config", "", "TOML configuration file");
  app.require_subcommand(1);

  SwarmFlags solve_flags;
  std::string solve_file;
  std::size_t problem = 1;
  std::string coordinator = "pso";
  std::size_t swarm_size = 10;
  std::size_t inner = 1;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  bool stop_at_optimum = false;
  auto* solve = app.add_subcommand("solve", "Run one swarm on one problem");
  solve->add_option("file", solve_file, "OR-Library mknap file")->required();
  solve->add_option("--problem", problem, "1-based problem index")->capture_default_str();
  solve->add_option("--coordinator", coordinator, "esa, bco or pso")->capture_default_str();
  solve->add_option("--swarm-size", swarm_size, "Number of agents")->capture_default_str();
  solve->add_option("--inner", inner, "Moves per temperature level")->capture_default_str();
  solve->add_option("--seed", seed, "Master seed")->capture_default_str();
  solve->add_option("--threads", threads, "Threads running agents")->capture_default_str();
  solve->add_flag("--stop-at-optimum", stop_at_optimum, "Stop once the known optimum is hit");
  solve_flags.add_to(*solve);

  SwarmFlags bench_flags;
  std::string bench_file;
  std::vector<std::size_t> problems{6, 7};
  std::vector<std::string> coordinators{"esa", "bco", "pso"};
  std::vector<std::size_t> swarm_sizes{5, 10, 15, 20, 30, 40, 50};
  std::vector<std::size_t> inners{1};
  std::size_t replications = 50;
  std::uint64_t seed_base = 0;
  std::string out_path;
  std::string fig2_path;
  std::size_t jobs = 1;
  bool full_budget = false;
  std::vector<std::string> references;
  auto* bench = app.add_subcommand("bench", "Run an experiment grid and report RPE / CPU");
  bench->add_option("file", bench_file, "OR-Library mknap file")->required();
  bench->add_option("--problems", problems, "1-based problem indices")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--coordinators", coordinators, "Subset of esa,bco,pso")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--swarm-sizes", swarm_sizes, "Swarm sizes")->delimiter(',')
      ->capture_default_str();
  bench->add_option("--inner", inners, "Inner iteration counts")->delimiter(',')
      ->capture_default_str();
  bench->add_option("--replications", replications, "Runs per cell")->capture_default_str();
  bench->add_option("--seed-base", seed_base, "First replication seed")->capture_default_str();
  bench->add_option("--out", out_path, "Results CSV")->required();
  bench->add_option("--fig2-out", fig2_path, "Per-coordinator mean RPE CSV");
  bench->add_option("--jobs", jobs, "Runs executed in parallel")->capture_default_str();
  bench->add_option("--reference", references,
                    "Reference optimum as <problem>=<value>, for files without optima")
      ->delimiter(',');
  bench->add_flag("--full-budget", full_budget,
                  "Always run every generation instead of stopping at the known optimum");
  bench_flags.add_to(*bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*solve) {
      swarmsa::SwarmConfig cfg = solve_flags.base();
      cfg.coordinator.kind = swarmsa::parse_coordinator(coordinator);
      cfg.swarm_size = swarm_size;
      cfg.sa.inner_iterations = inner;
      cfg.seed = seed;
      cfg.threads = threads;
      cfg.stop_at_optimum = stop_at_optimum;
      const auto instances = swarmsa::select_problems(solve_file, {problem});
      const auto& instance = instances.front();
      const auto result = swarmsa::run_swarm(instance, cfg);

      std::cout << "problem      " << instance.name() << " (n=" << instance.items()
                << ", m=" << instance.constraints() << ")\n";
      std::cout << "coordinator  " << swarmsa::to_string(cfg.coordinator.kind) << "\n";
      std::cout << "best         " << result.best.fitness << "\n";
      if (instance.known_optimum()) {
        std::cout << "optimum      " << *instance.known_optimum() << "\n";
        std::cout << "rpe          " << std::fixed << std::setprecision(5)
                  << swarmsa::rpe(*instance.known_optimum(), result.best.fitness) << "\n";
        std::cout.unsetf(std::ios::floatfield);
      }
      std::cout << "found at     generation " << result.best_generation << "\n";
      std::cout << "generations  " << result.generations_executed << "\n";
      std::cout << "wall time    " << result.wall_time << " s\n";
      std::cout << "solution     " << bit_string(result.best.bits) << "\n";
      return 0;
    }

    swarmsa::ExperimentGrid grid;
    grid.benchmarks = swarmsa::select_problems(bench_file, problems);
    for (const auto& c : coordinators) grid.coordinators.push_back(swarmsa::parse_coordinator(c));
    grid.swarm_sizes = swarm_sizes;
    grid.inner_iterations = inners;
    grid.replications = replications;
    grid.seed_base = seed_base;
    grid.base = bench_flags.base();
    grid.base.stop_at_optimum = !full_budget;
    grid.reference_optima = parse_references(references);

    std::ofstream out;
    open_output(out, out_path);
    std::ofstream fig2;
    if (!fig2_path.empty()) open_output(fig2, fig2_path);

    const auto cells = swarmsa::run_grid(grid, jobs);
    swarmsa::write_results_csv(cells, out);
    swarmsa::render_tables(swarmsa::sorted_cells(cells), std::cout);
    const auto rows = swarmsa::summarize_fig2(cells);
    std::cout << "Mean RPE over swarm sizes\n";
    swarmsa::write_fig2_csv(rows, std::cout);
    if (fig2.is_open()) swarmsa::write_fig2_csv(rows, fig2);
    return 0;
  } catch (const swarmsa::OrlibError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const swarmsa::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
