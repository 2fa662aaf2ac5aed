#ifndef SWARMSA_ORLIB_HPP_
#define SWARMSA_ORLIB_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "swarmsa/coordination.hpp"
#include "swarmsa/mkp.hpp"

namespace swarmsa {

// OR-Library "mknap" format: K, then per problem n m optimum, n profits,
// m rows of n constraint coefficients, m capacities. Whitespace-separated,
// line breaks carry no meaning. An optimum of 0 means "unknown".

class OrlibError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Stream ended before the declared data was read.
class TruncationError : public OrlibError {
 public:
  TruncationError(std::size_t token_index, const std::string& expected);
  std::size_t token_index() const noexcept { return token_index_; }

 private:
  std::size_t token_index_;
};

/// A token is not a number.
class TokenParseError : public OrlibError {
 public:
  TokenParseError(std::size_t token_index, std::size_t line, std::size_t column,
                  const std::string& token);
  std::size_t token_index() const noexcept { return token_index_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t token_index_;
  std::size_t line_;
  std::size_t column_;
};

/// Numbers parse but describe an impossible problem (negative sizes etc).
class FormatError : public OrlibError {
 public:
  using OrlibError::OrlibError;
};

struct BenchmarkFile {
  std::vector<MkpInstance> problems;
  std::string source_path;
};

/// Problems are named "MKP<k>" with k the 1-based position in the file.
BenchmarkFile parse_orlib(std::istream& in, std::string source_path = {});
BenchmarkFile parse_orlib_text(const std::string& text);
/// Throws OrlibError when the file cannot be opened.
BenchmarkFile load_orlib(const std::filesystem::path& path);

/// Writes problems back in mknap token order; parse_orlib reads it back unchanged.
void write_orlib(std::span<const MkpInstance> problems, std::ostream& out);

/// Number of numeric tokens one problem occupies: 3 + n + m*n + m.
constexpr std::size_t orlib_token_count(std::size_t n, std::size_t m) noexcept {
  return 3 + n + m * n + m;
}

// ---------------------------------------------------------------------------
// Experiment results

struct CellStats {
  std::string benchmark;
  CoordinatorKind coordinator = CoordinatorKind::esa;
  std::size_t swarm_size = 0;
  std::size_t inner_iters = 0;
  double rpe = 0.0;
  double cpu_mean_s = 0.0;
  double f_avrg = 0.0;
  double f_opt = 0.0;
  double best_found = 0.0;
  std::size_t replications = 0;
};

struct Fig2Row {
  std::string benchmark;
  std::size_t inner_iters = 0;
  CoordinatorKind coordinator = CoordinatorKind::esa;
  double mean_rpe = 0.0;
};

/// Cells sorted by (benchmark, coordinator, swarm size, inner iterations).
std::vector<CellStats> sorted_cells(std::vector<CellStats> cells);

/// CSV with header
/// benchmark,coordinator,swarm_size,inner_iters,replications,rpe,cpu_mean_s,best,optimum
/// Rows follow sorted_cells order. Throws std::invalid_argument on an empty
/// cell list and std::ios_base::failure when the sink goes bad.
void write_results_csv(std::span<const CellStats> cells, std::ostream& out);

void write_fig2_csv(std::span<const Fig2Row> rows, std::ostream& out);

/// Console rendering: one block per (benchmark, inner iterations), one row per
/// swarm size, RPE and CPU columns per coordinator.
void render_tables(std::span<const CellStats> cells, std::ostream& out);

}  // namespace swarmsa

#endif
