#include <set>

#include "doctest.h"
#include "swarmsa/bench.hpp"
#include "test_support.hpp"

using namespace swarmsa;

namespace {

ExperimentGrid tiny_grid() {
  ExperimentGrid grid;
  grid.benchmarks.push_back(testing::mknap1_problem1());
  grid.coordinators = {CoordinatorKind::pso};
  grid.swarm_sizes = {3};
  grid.inner_iterations = {1};
  grid.replications = 3;
  grid.base.generations = 10;
  grid.base.sa.outer_iterations = 20;
  return grid;
}

}  // namespace

TEST_CASE("rpe") {
  CHECK(rpe(100.0, 100.0) == 0.0);
  CHECK(rpe(100.0, 90.0) == doctest::Approx(0.1));
  CHECK(rpe(10618.0, 10618.0 - 6.47698) == doctest::Approx(0.00061).epsilon(1e-4));
  CHECK(rpe(4.0, 5.0) < 0.0);
  CHECK_THROWS_AS(rpe(0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(rpe(-1.0, 0.0), std::invalid_argument);
}

TEST_CASE("grid validation") {
  auto grid = tiny_grid();
  CHECK_NOTHROW(grid.validate());
  grid.replications = 0;
  CHECK_THROWS_AS(grid.validate(), ConfigError);
  grid = tiny_grid();
  grid.swarm_sizes.clear();
  CHECK_THROWS_AS(run_grid(grid, 1), ConfigError);
  grid = tiny_grid();
  grid.base.sa.t_frozen = -1.0;
  CHECK_THROWS_AS(grid.validate(), ConfigError);
}

TEST_CASE("cell count and order") {
  auto grid = tiny_grid();
  auto second = testing::mknap1_problem1();
  grid.benchmarks.push_back(
      MkpInstance(second.profits(), second.weights(), second.capacities(), 3800.0, "MKP2"));
  grid.coordinators = {CoordinatorKind::esa, CoordinatorKind::bco, CoordinatorKind::pso};
  grid.swarm_sizes = {5, 10, 15, 20, 30, 40, 50};
  CHECK(grid.cell_count() == 42);

  grid.swarm_sizes = {2, 3};
  grid.inner_iterations = {1, 2};
  grid.replications = 1;
  grid.base.generations = 2;
  const auto cells = run_grid(grid, 4);
  REQUIRE(cells.size() == 24);
  CHECK(cells[0].benchmark == "MKP1");
  CHECK(cells[0].coordinator == CoordinatorKind::esa);
  CHECK(cells[1].inner_iters == 2);
  CHECK(cells[2].swarm_size == 3);
  CHECK(cells[4].coordinator == CoordinatorKind::bco);
  CHECK(cells[12].benchmark == "MKP2");
}

TEST_CASE("single-cell grid") {
  auto grid = tiny_grid();
  grid.replications = 1;
  const auto cells = run_grid(grid, 1);
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].replications == 1);
  CHECK(cells[0].f_avrg == cells[0].best_found);
  CHECK(cells[0].rpe == doctest::Approx(rpe(3800.0, cells[0].f_avrg)));
}

TEST_CASE("grid results are deterministic") {
  auto grid = tiny_grid();
  grid.coordinators = {CoordinatorKind::esa, CoordinatorKind::pso};
  const auto a = run_grid(grid, 1);
  const auto b = run_grid(grid, 8);
  REQUIRE(a.size() == b.size());
  for (std::size_t c = 0; c < a.size(); ++c) {
    CHECK(a[c].f_avrg == b[c].f_avrg);
    CHECK(a[c].best_found == b[c].best_found);
    CHECK(a[c].rpe == b[c].rpe);
  }
}

TEST_CASE("replication seeds are disjoint across cells") {
  ExperimentGrid grid;
  grid.replications = 50;
  grid.seed_base = 1000;
  std::set<std::uint64_t> seen;
  for (std::size_t c = 0; c < 42; ++c) {
    for (std::size_t r = 0; r < 50; ++r) CHECK(seen.insert(replication_seed(grid, c, r)).second);
  }
  CHECK(replication_seed(grid, 0, 0) == 1000);
  CHECK(replication_seed(grid, 2, 3) == 1103);
}

TEST_CASE("reference optimum") {
  ExperimentGrid grid;
  const auto p1 = testing::mknap1_problem1();
  CHECK(reference_optimum(grid, p1) == 3800.0);
  grid.reference_optima["MKP1"] = 4000.0;
  CHECK(reference_optimum(grid, p1) == 4000.0);

  const MkpInstance unknown({1.0}, {{1.0}}, {1.0}, std::nullopt, "MKP9");
  try {
    reference_optimum(grid, unknown);
    FAIL("expected a configuration error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("MKP9") != std::string::npos);
  }
}

TEST_CASE("every replication hitting the optimum gives zero RPE") {
  auto grid = tiny_grid();
  grid.base.generations = 300;
  grid.base.sa.outer_iterations = 200;
  grid.base.sa.inner_iterations = 10;
  grid.base.stop_at_optimum = true;
  grid.swarm_sizes = {10};
  grid.replications = 5;
  const auto cells = run_grid(grid, 2);
  CHECK(cells[0].best_found == 3800.0);
  CHECK(cells[0].f_avrg == 3800.0);
  CHECK(cells[0].rpe == 0.0);
}

TEST_CASE("fig2 summary") {
  std::vector<CellStats> cells(3);
  for (auto& c : cells) {
    c.benchmark = "MKP6";
    c.inner_iters = 1;
    c.coordinator = CoordinatorKind::esa;
  }
  cells[0].rpe = 0.002;
  cells[1].rpe = 0.004;
  cells[2].coordinator = CoordinatorKind::pso;
  cells[2].rpe = 0.001;
  const auto rows = summarize_fig2(cells);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].coordinator == CoordinatorKind::esa);
  CHECK(rows[0].mean_rpe == doctest::Approx(0.003));
  CHECK(rows[1].mean_rpe == 0.001);
  CHECK_THROWS_AS(summarize_fig2({}), std::invalid_argument);

  std::ostringstream out;
  write_fig2_csv(rows, out);
  CHECK(out.str().rfind("benchmark,inner_iters,coordinator,mean_rpe\n", 0) == 0);
}

TEST_CASE("problem selection") {
  const auto file = testing::data_dir() / "mknap1_problem1.txt";
  CHECK(select_problems(file, {1}).at(0).name() == "MKP1");
  CHECK_THROWS_AS(select_problems(file, {2}), ConfigError);
  CHECK_THROWS_AS(select_problems(file, {0}), ConfigError);
}
