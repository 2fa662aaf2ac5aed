#include <random>
#include <sstream>

#include "doctest.h"
#include "swarmsa/orlib.hpp"
#include "test_support.hpp"

using namespace swarmsa;

TEST_CASE("parse minimal file") {
  const auto file = parse_orlib_text("1  2 1 0  3 4  1 1  1");
  REQUIRE(file.problems.size() == 1);
  const auto& p = file.problems[0];
  CHECK(p.items() == 2);
  CHECK(p.constraints() == 1);
  CHECK_FALSE(p.known_optimum().has_value());
  CHECK(p.profits() == std::vector<double>{3, 4});
  CHECK(p.weights() == std::vector<std::vector<double>>{{1, 1}});
  CHECK(p.capacities() == std::vector<double>{1});
  CHECK(p.name() == "MKP1");
}

TEST_CASE("parse zero problems") { CHECK(parse_orlib_text("0").problems.empty()); }

TEST_CASE("line breaks carry no meaning") {
  const auto a = parse_orlib_text("1 2 1 7 3 4 1 1 1");
  const auto b = parse_orlib_text("1\n2\n1\n7\n3\t4\r\n1\n  1\n1\n");
  CHECK(a.problems[0].profits() == b.problems[0].profits());
  CHECK(a.problems[0].weights() == b.problems[0].weights());
  CHECK(*b.problems[0].known_optimum() == 7.0);
}

TEST_CASE("parse errors") {
  SUBCASE("truncation reports the token index") {
    try {
      parse_orlib_text("1  2 1 0  3 4  1");
      FAIL("expected truncation");
    } catch (const TruncationError& e) {
      CHECK(e.token_index() == 7);
    }
  }
  SUBCASE("non-numeric token reports its position") {
    try {
      parse_orlib_text("1\n2 1 0\n3 x 1 1 1");
      FAIL("expected parse error");
    } catch (const TokenParseError& e) {
      CHECK(e.token_index() == 5);
      CHECK(e.line() == 3);
      CHECK(e.column() == 3);
    }
  }
  SUBCASE("negative sizes") {
    CHECK_THROWS_AS(parse_orlib_text("1 -2 1 0"), FormatError);
    CHECK_THROWS_AS(parse_orlib_text("1 2 -1 0"), FormatError);
    CHECK_THROWS_AS(parse_orlib_text("-1"), FormatError);
  }
  SUBCASE("negative coefficient") {
    CHECK_THROWS_AS(parse_orlib_text("1 1 1 0 3 -1 1"), FormatError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_orlib(testing::data_dir() / "no-such-file.txt"), OrlibError);
  }
}

TEST_CASE("token count per problem") {
  // Exactly 3 + n + m*n + m tokens are consumed: a second problem placed
  // right after the first parses cleanly, one token fewer truncates.
  CHECK(orlib_token_count(2, 1) == 8);
  CHECK(orlib_token_count(6, 10) == 79);
  const std::string one = "2 1 0 3 4 1 1 1";
  CHECK(parse_orlib_text("2 " + one + " " + one).problems.size() == 2);
  CHECK_THROWS_AS(parse_orlib_text("2 " + one + " 2 1 0 3 4 1 1"), TruncationError);

  std::ostringstream text;
  const auto p1 = testing::mknap1_problem1();
  write_orlib(std::span(&p1, 1), text);
  std::istringstream tokens(text.str());
  std::size_t count = 0;
  for (std::string t; tokens >> t;) ++count;
  CHECK(count == 1 + orlib_token_count(6, 10));
}

TEST_CASE("first mknap1 problem") {
  const auto p1 = testing::mknap1_problem1();
  CHECK(p1.items() == 6);
  CHECK(p1.constraints() == 10);
  CHECK(*p1.known_optimum() == 3800.0);
}

TEST_CASE("write then parse is the identity") {
  std::mt19937_64 gen(7);
  std::vector<MkpInstance> problems;
  for (int k = 0; k < 20; ++k) {
    auto inst = testing::random_instance(gen, 1 + gen() % 15, 1 + gen() % 5);
    // Real-valued data must survive too.
    auto profits = inst.profits();
    for (auto& p : profits) p = p / 7.0 + 0.1;
    std::optional<double> opt;
    if (k % 2) opt = 1234.5 + k;
    problems.emplace_back(profits, inst.weights(), inst.capacities(), opt,
                          "MKP" + std::to_string(k + 1));
  }
  std::ostringstream out;
  write_orlib(problems, out);
  const auto back = parse_orlib_text(out.str());
  REQUIRE(back.problems.size() == problems.size());
  for (std::size_t k = 0; k < problems.size(); ++k) {
    const auto& a = problems[k];
    const auto& b = back.problems[k];
    CHECK(a.profits() == b.profits());
    CHECK(a.weights() == b.weights());
    CHECK(a.capacities() == b.capacities());
    CHECK(a.known_optimum() == b.known_optimum());
    CHECK(a.name() == b.name());
  }
}

TEST_CASE("results csv") {
  CellStats cell;
  cell.benchmark = "MKP6";
  cell.coordinator = CoordinatorKind::pso;
  cell.swarm_size = 50;
  cell.inner_iters = 1;
  cell.replications = 50;
  cell.rpe = 0.00061;
  cell.cpu_mean_s = 4.09;
  cell.f_opt = 10618;
  cell.best_found = 10618;

  std::ostringstream out;
  write_results_csv(std::span(&cell, 1), out);
  CHECK(out.str() ==
        "benchmark,coordinator,swarm_size,inner_iters,replications,rpe,cpu_mean_s,best,optimum\n"
        "MKP6,PSO,50,1,50,0.00061,4.090000,10618,10618\n");

  CHECK_THROWS_AS(write_results_csv({}, out), std::invalid_argument);

  SUBCASE("rows are ordered by swarm size") {
    auto small = cell;
    small.swarm_size = 5;
    std::vector<CellStats> cells{cell, small};
    std::ostringstream sorted;
    write_results_csv(cells, sorted);
    const auto text = sorted.str();
    CHECK(text.find("MKP6,PSO,5,") < text.find("MKP6,PSO,50,"));
  }
  SUBCASE("coordinators in ESA, BCO, PSO order") {
    auto esa = cell;
    esa.coordinator = CoordinatorKind::esa;
    auto bco = cell;
    bco.coordinator = CoordinatorKind::bco;
    const auto sorted = sorted_cells({cell, bco, esa});
    CHECK(sorted[0].coordinator == CoordinatorKind::esa);
    CHECK(sorted[1].coordinator == CoordinatorKind::bco);
    CHECK(sorted[2].coordinator == CoordinatorKind::pso);
  }
  SUBCASE("failed sink") {
    std::ostringstream bad;
    bad.setstate(std::ios::badbit);
    CHECK_THROWS_AS(write_results_csv(std::span(&cell, 1), bad), std::ios_base::failure);
  }
}

TEST_CASE("console tables") {
  std::vector<CellStats> cells(2);
  cells[0].benchmark = cells[1].benchmark = "MKP7";
  cells[0].inner_iters = cells[1].inner_iters = 5;
  cells[0].swarm_size = cells[1].swarm_size = 10;
  cells[0].coordinator = CoordinatorKind::esa;
  cells[1].coordinator = CoordinatorKind::pso;
  cells[0].rpe = 0.00009;
  cells[1].rpe = 0.00004;
  std::ostringstream out;
  render_tables(cells, out);
  const auto text = out.str();
  CHECK(text.find("MKP7 (inner iterations 5)") != std::string::npos);
  CHECK(text.find("0.00009") != std::string::npos);
  CHECK(text.find("0.00004") != std::string::npos);
  CHECK(text.find("BCO") == std::string::npos);
}
