#include "swarmsa/orlib.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

namespace swarmsa {

TruncationError::TruncationError(std::size_t token_index, const std::string& expected)
    : OrlibError("input ended at token " + std::to_string(token_index) + " while reading " +
                 expected),
      token_index_(token_index) {}

TokenParseError::TokenParseError(std::size_t token_index, std::size_t line, std::size_t column,
                                 const std::string& token)
    : OrlibError("token " + std::to_string(token_index) + " ('" + token + "') at line " +
                 std::to_string(line) + ", column " + std::to_string(column) +
                 " is not a number"),
      token_index_(token_index),
      line_(line),
      column_(column) {}

namespace {

class TokenReader {
 public:
  explicit TokenReader(std::string text) : text_(std::move(text)) {}

  double number(const std::string& what) {
    const auto token = next(what);
    double value = 0.0;
    const char* first = token.data();
    const char* last = first + token.size();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
      throw TokenParseError(index_ - 1, line_at_token_, column_at_token_, std::string(token));
    }
    return value;
  }

  // Sizes must be whole numbers.
  long long count(const std::string& what) {
    const double value = number(what);
    if (value != std::floor(value)) {
      throw FormatError(what + " must be an integer, got " + std::to_string(value));
    }
    if (value < 0) throw FormatError(what + " must not be negative");
    return static_cast<long long>(value);
  }

 private:
  std::string_view next(const std::string& what) {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      advance();
    }
    if (pos_ >= text_.size()) throw TruncationError(index_, what);
    line_at_token_ = line_;
    column_at_token_ = column_;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      advance();
    }
    ++index_;
    return std::string_view(text_).substr(start, pos_ - start);
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string text_;
  std::size_t pos_ = 0;
  std::size_t index_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
  std::size_t line_at_token_ = 1;
  std::size_t column_at_token_ = 1;
};

std::string shortest(double value) {
  std::array<char, 64> buffer{};
  auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), ptr);
}

int coordinator_rank(CoordinatorKind kind) { return static_cast<int>(kind); }

void check_sink(std::ostream& out) {
  if (!out) throw std::ios_base::failure("failed writing results");
}

}  // namespace

BenchmarkFile parse_orlib(std::istream& in, std::string source_path) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (in.bad()) throw OrlibError("failed reading " + source_path);
  TokenReader reader(std::move(text));

  BenchmarkFile file;
  file.source_path = std::move(source_path);
  const long long problems = reader.count("problem count");
  file.problems.reserve(static_cast<std::size_t>(std::min(problems, 1024LL)));
  for (long long k = 1; k <= problems; ++k) {
    const std::string label = "problem " + std::to_string(k);
    const auto n = static_cast<std::size_t>(reader.count(label + " item count"));
    const auto m = static_cast<std::size_t>(reader.count(label + " constraint count"));
    if (n == 0 || m == 0) throw FormatError(label + " needs at least one item and constraint");
    const double optimum = reader.number(label + " optimum");

    std::vector<double> profits(n);
    for (auto& p : profits) p = reader.number(label + " profits");
    std::vector<std::vector<double>> weights(m, std::vector<double>(n));
    for (auto& row : weights) {
      for (auto& r : row) r = reader.number(label + " constraint coefficients");
    }
    std::vector<double> capacities(m);
    for (auto& b : capacities) b = reader.number(label + " capacities");

    try {
      file.problems.emplace_back(std::move(profits), std::move(weights), std::move(capacities),
                                 optimum == 0.0 ? std::nullopt : std::optional<double>(optimum),
                                 "MKP" + std::to_string(k));
    } catch (const std::invalid_argument& e) {
      throw FormatError(label + ": " + e.what());
    }
  }
  return file;
}

BenchmarkFile parse_orlib_text(const std::string& text) {
  std::istringstream in(text);
  return parse_orlib(in);
}

BenchmarkFile load_orlib(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw OrlibError("cannot open " + path.string());
  return parse_orlib(in, path.string());
}

void write_orlib(std::span<const MkpInstance> problems, std::ostream& out) {
  out << problems.size() << '\n';
  for (const auto& p : problems) {
    out << p.items() << ' ' << p.constraints() << ' '
        << shortest(p.known_optimum().value_or(0.0)) << '\n';
    auto line = [&](const std::vector<double>& values) {
      for (std::size_t j = 0; j < values.size(); ++j) {
        out << (j ? " " : "") << shortest(values[j]);
      }
      out << '\n';
    };
    line(p.profits());
    for (const auto& row : p.weights()) line(row);
    line(p.capacities());
  }
  check_sink(out);
}

std::vector<CellStats> sorted_cells(std::vector<CellStats> cells) {
  std::stable_sort(cells.begin(), cells.end(), [](const CellStats& a, const CellStats& b) {
    return std::tuple(a.benchmark, coordinator_rank(a.coordinator), a.swarm_size, a.inner_iters) <
           std::tuple(b.benchmark, coordinator_rank(b.coordinator), b.swarm_size, b.inner_iters);
  });
  return cells;
}

void write_results_csv(std::span<const CellStats> cells, std::ostream& out) {
  if (cells.empty()) throw std::invalid_argument("no result cells to write");
  const auto rows = sorted_cells({cells.begin(), cells.end()});
  out << "benchmark,coordinator,swarm_size,inner_iters,replications,rpe,cpu_mean_s,best,optimum\n";
  for (const auto& c : rows) {
    std::ostringstream line;
    line << c.benchmark << ',' << to_string(c.coordinator) << ',' << c.swarm_size << ','
         << c.inner_iters << ',' << c.replications << ',' << std::fixed << std::setprecision(5)
         << c.rpe << ',' << std::setprecision(6) << c.cpu_mean_s << ',' << shortest(c.best_found)
         << ',' << shortest(c.f_opt) << '\n';
    out << line.str();
  }
  check_sink(out);
}

void write_fig2_csv(std::span<const Fig2Row> rows, std::ostream& out) {
  out << "benchmark,inner_iters,coordinator,mean_rpe\n";
  for (const auto& r : rows) {
    std::ostringstream line;
    line << r.benchmark << ',' << r.inner_iters << ',' << to_string(r.coordinator) << ','
         << std::fixed << std::setprecision(5) << r.mean_rpe << '\n';
    out << line.str();
  }
  check_sink(out);
}

void render_tables(std::span<const CellStats> cells, std::ostream& out) {
  // (benchmark, inner) -> swarm size -> coordinator -> cell
  std::map<std::pair<std::string, std::size_t>,
           std::map<std::size_t, std::map<int, const CellStats*>>>
      blocks;
  std::map<int, CoordinatorKind> present;
  for (const auto& c : cells) {
    blocks[{c.benchmark, c.inner_iters}][c.swarm_size][coordinator_rank(c.coordinator)] = &c;
    present[coordinator_rank(c.coordinator)] = c.coordinator;
  }

  const auto flags = out.flags();
  for (const auto& [key, rows] : blocks) {
    out << key.first << " (inner iterations " << key.second << ")\n";
    out << std::left << std::setw(6) << "size";
    for (const auto& [rank, kind] : present) {
      out << " | " << std::setw(8) << (std::string(to_string(kind)) + " RPE") << ' '
          << std::setw(8) << "CPU(s)";
    }
    out << '\n' << std::string(6 + present.size() * 20, '-') << '\n';
    for (const auto& [size, by_kind] : rows) {
      out << std::left << std::setw(6) << size << std::right;
      for (const auto& [rank, kind] : present) {
        out << " | ";
        if (auto it = by_kind.find(rank); it != by_kind.end()) {
          out << std::fixed << std::setprecision(5) << std::setw(8) << it->second->rpe << ' '
              << std::setprecision(2) << std::setw(8) << it->second->cpu_mean_s;
        } else {
          out << std::setw(8) << "-" << ' ' << std::setw(8) << "-";
        }
      }
      out << '\n';
    }
    out << '\n';
  }
  out.flags(flags);
  check_sink(out);
}

}  // namespace swarmsa
