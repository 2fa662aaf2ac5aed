#include "swarmsa/mkp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

namespace swarmsa {

namespace {

void require_length(const MkpInstance& instance, std::size_t length) {
  if (length != instance.items()) {
    throw DimensionError("bit vector has " + std::to_string(length) + " entries, instance has " +
                         std::to_string(instance.items()) + " items");
  }
}

void require_non_negative(double value, const char* what) {
  if (!std::isfinite(value) || value < 0.0) {
    throw std::invalid_argument(std::string(what) + " must be finite and non-negative");
  }
}

}  // namespace

MkpInstance::MkpInstance(std::vector<double> profits, std::vector<std::vector<double>> weights,
                         std::vector<double> capacities, std::optional<double> known_optimum,
                         std::string name)
    : profits_(std::move(profits)),
      weights_(std::move(weights)),
      capacities_(std::move(capacities)),
      known_optimum_(known_optimum),
      name_(std::move(name)) {
  const std::size_t n = profits_.size();
  const std::size_t m = capacities_.size();
  if (n == 0) throw std::invalid_argument("instance needs at least one item");
  if (m == 0) throw std::invalid_argument("instance needs at least one constraint");
  if (weights_.size() != m) {
    throw DimensionError("weight matrix has " + std::to_string(weights_.size()) +
                         " rows, expected " + std::to_string(m));
  }
  for (const auto& row : weights_) {
    if (row.size() != n) {
      throw DimensionError("weight row has " + std::to_string(row.size()) +
                           " entries, expected " + std::to_string(n));
    }
    for (double r : row) require_non_negative(r, "weight");
  }
  for (double p : profits_) require_non_negative(p, "profit");
  for (double b : capacities_) require_non_negative(b, "capacity");
  if (known_optimum_) require_non_negative(*known_optimum_, "known optimum");

  item_major_.resize(n * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) item_major_[j * m + i] = weights_[i][j];
  }

  utility_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    double denominator = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double r = weights_[i][j];
      if (r == 0.0) continue;
      // A positive weight against a zero capacity can never fit.
      denominator += capacities_[i] > 0.0 ? r / capacities_[i]
                                          : std::numeric_limits<double>::infinity();
    }
    utility_[j] = denominator > 0.0 ? profits_[j] / denominator
                                    : std::numeric_limits<double>::infinity();
  }

  drop_order_.resize(n);
  std::iota(drop_order_.begin(), drop_order_.end(), std::size_t{0});
  std::stable_sort(drop_order_.begin(), drop_order_.end(),
                   [this](std::size_t a, std::size_t b) { return utility_[a] < utility_[b]; });
}

double MkpInstance::max_profit() const noexcept {
  return *std::max_element(profits_.begin(), profits_.end());
}

double objective(const MkpInstance& instance, std::span<const std::uint8_t> bits) {
  require_length(instance, bits.size());
  double total = 0.0;
  const auto& profits = instance.profits();
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (bits[j]) total += profits[j];
  }
  return total;
}

std::vector<double> constraint_loads(const MkpInstance& instance,
                                     std::span<const std::uint8_t> bits) {
  require_length(instance, bits.size());
  std::vector<double> loads(instance.constraints(), 0.0);
  for (std::size_t i = 0; i < loads.size(); ++i) {
    const auto& row = instance.constraint_row(i);
    for (std::size_t j = 0; j < bits.size(); ++j) {
      if (bits[j]) loads[i] += row[j];
    }
  }
  return loads;
}

bool is_feasible(const MkpInstance& instance, std::span<const std::uint8_t> bits) {
  const auto loads = constraint_loads(instance, bits);
  const auto& capacities = instance.capacities();
  for (std::size_t i = 0; i < loads.size(); ++i) {
    if (loads[i] > capacities[i]) return false;
  }
  return true;
}

Solution evaluate(const MkpInstance& instance, BitVector bits) {
  const double fitness = objective(instance, bits);
  return Solution{std::move(bits), fitness};
}

Solution repair(const MkpInstance& instance, BitVector bits) {
  auto loads = constraint_loads(instance, bits);
  const auto& capacities = instance.capacities();
  const std::size_t m = instance.constraints();

  auto violated = [&] {
    for (std::size_t i = 0; i < m; ++i) {
      if (loads[i] > capacities[i]) return true;
    }
    return false;
  };
  if (!violated()) return evaluate(instance, std::move(bits));

  const auto& order = instance.drop_order();
  for (std::size_t j : order) {
    if (!bits[j]) continue;
    bits[j] = 0;
    const auto w = instance.item_weights(j);
    for (std::size_t i = 0; i < m; ++i) loads[i] -= w[i];
    if (!violated()) break;
  }
  // Incremental subtraction can leave rounding residue on real-valued data.
  loads = constraint_loads(instance, bits);

  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t j = *it;
    if (bits[j]) continue;
    const auto w = instance.item_weights(j);
    bool fits = true;
    for (std::size_t i = 0; i < m && fits; ++i) fits = loads[i] + w[i] <= capacities[i];
    if (!fits) continue;
    bits[j] = 1;
    for (std::size_t i = 0; i < m; ++i) loads[i] += w[i];
  }
  return evaluate(instance, std::move(bits));
}

Solution brute_force_optimum(const MkpInstance& instance) {
  const std::size_t n = instance.items();
  const std::size_t m = instance.constraints();
  if (n > kBruteForceMaxItems) {
    throw std::length_error("brute force refused: " + std::to_string(n) + " items exceeds " +
                            std::to_string(kBruteForceMaxItems));
  }

  // Item j lives at mask bit (n-1-j), so numeric mask order is lexicographic
  // bit-vector order. Masks are visited in Gray-code order so each step flips
  // exactly one item.
  const auto& capacities = instance.capacities();
  double scale = 1.0;
  for (double b : capacities) scale = std::max(scale, b);
  const double load_slack = 1e-7 * scale;

  BitVector bits(n, 0);
  std::vector<double> loads(m, 0.0);
  double running = 0.0;

  BitVector best_bits(n, 0);
  double best = 0.0;
  std::uint64_t best_mask = 0;

  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t step = 1; step < count; ++step) {
    const unsigned flipped_bit = static_cast<unsigned>(std::countr_zero(step));
    const std::size_t j = n - 1 - flipped_bit;
    const double sign = bits[j] ? -1.0 : 1.0;
    bits[j] ^= 1;
    running += sign * instance.profits()[j];
    const auto w = instance.item_weights(j);
    bool near_feasible = true;
    for (std::size_t i = 0; i < m; ++i) {
      loads[i] += sign * w[i];
      near_feasible = near_feasible && loads[i] <= capacities[i] + load_slack;
    }
    if (!near_feasible || running < best - 1e-7 * std::max(1.0, best)) continue;

    if (!is_feasible(instance, bits)) continue;
    const double exact = objective(instance, bits);
    const std::uint64_t mask = step ^ (step >> 1);
    if (exact > best || (exact == best && mask < best_mask)) {
      best = exact;
      best_mask = mask;
      best_bits = bits;
    }
  }
  return Solution{std::move(best_bits), best};
}

bool reaches(double value, double target) noexcept {
  return value >= target - 1e-9 * std::max(1.0, std::abs(target));
}

}  // namespace swarmsa
