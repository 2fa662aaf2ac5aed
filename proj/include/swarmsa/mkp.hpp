#ifndef SWARMSA_MKP_HPP_
#define SWARMSA_MKP_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace swarmsa {

using BitVector = std::vector<std::uint8_t>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/**
 * Multidimensional knapsack instance: maximize sum_j p_j x_j subject to
 * sum_j r_ij x_j <= b_i for every constraint i, with x binary.
 *
 * Immutable after construction, so one instance can be shared by every agent
 * of a swarm without synchronization.
 */
class MkpInstance {
 public:
  /// `weights` is constraint-major: weights[i][j] is r_ij.
  MkpInstance(std::vector<double> profits, std::vector<std::vector<double>> weights,
              std::vector<double> capacities, std::optional<double> known_optimum = std::nullopt,
              std::string name = {});

  std::size_t items() const noexcept { return profits_.size(); }
  std::size_t constraints() const noexcept { return capacities_.size(); }

  const std::vector<double>& profits() const noexcept { return profits_; }
  const std::vector<double>& capacities() const noexcept { return capacities_; }
  const std::vector<double>& constraint_row(std::size_t i) const { return weights_[i]; }
  const std::vector<std::vector<double>>& weights() const noexcept { return weights_; }
  double weight(std::size_t i, std::size_t j) const { return weights_[i][j]; }

  /// Item-major copy of the weights: item_weights(j)[i] == weight(i, j).
  std::span<const double> item_weights(std::size_t j) const {
    return {item_major_.data() + j * constraints(), constraints()};
  }

  const std::optional<double>& known_optimum() const noexcept { return known_optimum_; }
  const std::string& name() const noexcept { return name_; }

  /// p_j / sum_i (r_ij / b_i); +inf when the denominator is zero.
  double pseudo_utility(std::size_t j) const { return utility_[j]; }

  /// Item indices sorted by ascending pseudo-utility, ties by lower index.
  const std::vector<std::size_t>& drop_order() const noexcept { return drop_order_; }

  double max_profit() const noexcept;

 private:
  std::vector<double> profits_;
  std::vector<std::vector<double>> weights_;
  std::vector<double> capacities_;
  std::optional<double> known_optimum_;
  std::string name_;

  std::vector<double> item_major_;
  std::vector<double> utility_;
  std::vector<std::size_t> drop_order_;
};

/// A decision vector with its cached objective value.
struct Solution {
  BitVector bits;
  double fitness = 0.0;

  friend bool operator==(const Solution&, const Solution&) = default;
};

double objective(const MkpInstance& instance, std::span<const std::uint8_t> bits);
bool is_feasible(const MkpInstance& instance, std::span<const std::uint8_t> bits);

/// Per-constraint loads sum_j r_ij x_j.
std::vector<double> constraint_loads(const MkpInstance& instance,
                                     std::span<const std::uint8_t> bits);

Solution evaluate(const MkpInstance& instance, BitVector bits);

/**
 * Makes `bits` feasible. Feasible input is returned untouched. Otherwise
 * selected items are dropped in ascending pseudo-utility order until every
 * constraint holds, then unselected items are re-added greedily in
 * descending pseudo-utility order whenever they still fit.
 */
Solution repair(const MkpInstance& instance, BitVector bits);

inline constexpr std::size_t kBruteForceMaxItems = 24;

/// Exhaustive optimum; ties go to the lexicographically smallest bit vector.
/// Throws std::length_error above kBruteForceMaxItems items.
Solution brute_force_optimum(const MkpInstance& instance);

/// True when `value` reaches `target` up to a relative 1e-9 slack.
bool reaches(double value, double target) noexcept;

}  // namespace swarmsa

#endif
