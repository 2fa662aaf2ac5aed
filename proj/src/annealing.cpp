#include "swarmsa/annealing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace swarmsa {

namespace {

// Incrementally evaluated walk state. Loads and fitness are updated per move
// instead of being recomputed from the full decision vector.
class Walk {
 public:
  Walk(const MkpInstance& instance, const Solution& start)
      : instance_(instance),
        bits_(start.bits),
        loads_(constraint_loads(instance, start.bits)),
        fitness_(start.fitness) {
    flips_.reserve(8);
  }

  // Draws a feasible flip set into flips_. Returns false when every attempt
  // was infeasible; flips_ is then empty.
  bool propose(std::size_t max_flips, std::size_t retry_cap, RandomStream& rng) {
    const auto n = static_cast<std::uint32_t>(bits_.size());
    const auto width = static_cast<std::uint32_t>(max_flips);
    for (std::size_t attempt = 0; attempt <= retry_cap; ++attempt) {
      auto [extra, first] = rng.below_pair(width, n);
      const std::size_t k = 1 + extra;
      flips_.clear();
      flips_.push_back(first);
      while (flips_.size() < k) {
        const auto [a, b] = rng.below_pair(n, n);
        add_distinct(a);
        if (flips_.size() < k) add_distinct(b);
      }
      if (fits()) return true;
    }
    flips_.clear();
    return false;
  }

  double delta() const {
    double d = 0.0;
    for (std::size_t j : flips_) d += bits_[j] ? -instance_.profits()[j] : instance_.profits()[j];
    return d;
  }

  void apply(double d) {
    const std::size_t m = loads_.size();
    for (std::size_t j : flips_) {
      const double sign = bits_[j] ? -1.0 : 1.0;
      const auto w = instance_.item_weights(j);
      for (std::size_t i = 0; i < m; ++i) loads_[i] += sign * w[i];
      bits_[j] ^= 1;
    }
    fitness_ += d;
  }

  const BitVector& bits() const noexcept { return bits_; }
  double fitness() const noexcept { return fitness_; }

 private:
  void add_distinct(std::size_t j) {
    if (std::find(flips_.begin(), flips_.end(), j) == flips_.end()) flips_.push_back(j);
  }

  bool fits() const {
    const auto& capacities = instance_.capacities();
    for (std::size_t i = 0; i < loads_.size(); ++i) {
      double load = loads_[i];
      for (std::size_t j : flips_) {
        const double w = instance_.item_weights(j)[i];
        load += bits_[j] ? -w : w;
      }
      if (load > capacities[i]) return false;
    }
    return true;
  }

  const MkpInstance& instance_;
  BitVector bits_;
  std::vector<double> loads_;
  double fitness_;
  std::vector<std::size_t> flips_;
};

void require_feasible(const MkpInstance& instance, const Solution& s) {
  if (!is_feasible(instance, s.bits)) {
    throw std::invalid_argument("annealing requires a feasible starting solution");
  }
}

// Every agent of a swarm anneals with the same schedule, so each thread keeps
// the last one it computed.
const std::vector<double>& schedule_for(const SaConfig& cfg) {
  thread_local SaConfig cached_cfg;
  thread_local std::vector<double> cached;
  if (cached.empty() || cached_cfg.t_hot != cfg.t_hot || cached_cfg.t_frozen != cfg.t_frozen ||
      cached_cfg.outer_iterations != cfg.outer_iterations) {
    cached.resize(cfg.outer_iterations);
    for (std::size_t level = 0; level < cached.size(); ++level) {
      cached[level] = cooling_step(level, cfg);
    }
    cached_cfg = cfg;
  }
  return cached;
}

}  // namespace

void SaConfig::validate() const {
  if (outer_iterations < 2) throw std::invalid_argument("outer_iterations must be >= 2");
  if (inner_iterations < 1) throw std::invalid_argument("inner_iterations must be >= 1");
  if (max_flips < 1) throw std::invalid_argument("max_flips must be >= 1");
  if (!(std::isfinite(t_frozen) && t_frozen > 0.0)) {
    throw std::invalid_argument("t_frozen must be positive");
  }
  if (t_hot && !(std::isfinite(*t_hot) && *t_hot > t_frozen)) {
    throw std::invalid_argument("t_hot must exceed t_frozen");
  }
}

double hot_temperature(const SaConfig& cfg, const MkpInstance& instance) {
  if (cfg.t_hot) return *cfg.t_hot;
  const double p = instance.max_profit();
  return p > cfg.t_frozen ? p : 100.0 * cfg.t_frozen;
}

SaConfig resolve(const SaConfig& cfg, const MkpInstance& instance) {
  SaConfig out = cfg;
  out.t_hot = hot_temperature(cfg, instance);
  out.max_flips = std::min(cfg.max_flips, instance.items());
  out.validate();
  return out;
}

double cooling_step(std::size_t level, const SaConfig& cfg) {
  if (!cfg.t_hot) throw std::invalid_argument("cooling_step needs a resolved t_hot");
  if (level >= cfg.outer_iterations) throw std::out_of_range("temperature level out of range");
  const double t_hot = *cfg.t_hot;
  if (level == 0) return t_hot;
  if (level + 1 == cfg.outer_iterations) return cfg.t_frozen;
  const double fraction =
      static_cast<double>(level) / static_cast<double>(cfg.outer_iterations - 1);
  return t_hot * std::pow(cfg.t_frozen / t_hot, fraction);
}

bool accept(double delta, double temperature, double rho) {
  if (!std::isfinite(delta)) throw std::invalid_argument("non-finite fitness delta");
  if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
  if (delta >= 0.0) return true;
  return std::exp(delta / temperature) >= rho;
}

Solution neighbor(const Solution& current, const MkpInstance& instance, const SaConfig& cfg,
                  RandomStream& rng) {
  require_feasible(instance, current);
  Walk walk(instance, current);
  const std::size_t width = std::min(cfg.max_flips, instance.items());
  if (width == 0) throw std::invalid_argument("max_flips must be >= 1");
  if (!walk.propose(width, cfg.neighbor_retry_cap, rng)) return current;
  walk.apply(walk.delta());
  return evaluate(instance, walk.bits());
}

std::pair<Solution, SaRunTrace> run_sa(const MkpInstance& instance, const Solution& hot,
                                       const SaConfig& cfg, RandomStream& rng) {
  const SaConfig run = resolve(cfg, instance);
  require_feasible(instance, hot);

  SaRunTrace trace;
  trace.start_fitness = hot.fitness;

  Walk walk(instance, hot);
  BitVector best_bits = hot.bits;
  double best = hot.fitness;

  const auto& schedule = schedule_for(run);
  for (const double temperature : schedule) {
    for (std::size_t inner = 0; inner < run.inner_iterations; ++inner) {
      ++trace.proposed_moves;
      if (!walk.propose(run.max_flips, run.neighbor_retry_cap, rng)) {
        ++trace.accepted_moves;  // unchanged state, a lateral move
        continue;
      }
      const double d = walk.delta();
      const double rho = d < 0.0 ? rng.uniform01() : 0.0;
      if (!accept(d, temperature, rho)) continue;
      ++trace.accepted_moves;
      walk.apply(d);
      if (walk.fitness() > best) {
        best = walk.fitness();
        best_bits = walk.bits();
      }
    }
  }

  Solution frozen = evaluate(instance, std::move(best_bits));
  // Exact re-evaluation may land a rounding step below an identical-bits hot solution.
  if (frozen.fitness < hot.fitness) frozen = hot;
  trace.end_fitness = frozen.fitness;
  return {std::move(frozen), trace};
}

}  // namespace swarmsa
