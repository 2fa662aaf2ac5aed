#ifndef SWARMSA_COORDINATION_HPP_
#define SWARMSA_COORDINATION_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "swarmsa/mkp.hpp"
#include "swarmsa/random.hpp"

namespace swarmsa {

// Coordinators run at the generation barrier and turn the pool of frozen
// (post-annealing) solutions into the next generation's hot solutions.
//
//   ESA  each agent restarts from its own frozen solution.
//   BCO  every agent restarts from the swarm's best solution.
//   PSO  binary particle swarm step over frozen, personal-best and global-best
//        positions; sampled positions are repaired to feasibility.

enum class CoordinatorKind { esa, bco, pso };

std::string_view to_string(CoordinatorKind kind) noexcept;
/// Accepts "esa", "bco", "pso" in any case. Throws std::invalid_argument.
CoordinatorKind parse_coordinator(std::string_view text);

struct PsoParams {
  double c1 = 2.0;     // cognitive
  double c2 = 2.0;     // social
  double w0 = 0.9;     // initial inertia
  double beta = 0.975; // inertia decrement: w <- w * beta after each update
  double delta = 1.0;  // constriction
  double v_max = 4.0;

  void validate() const;
};

/// Which solution BCO broadcasts.
enum class BcoSource { best_so_far, best_of_generation };

struct CoordinatorConfig {
  CoordinatorKind kind = CoordinatorKind::pso;
  PsoParams pso{};
  BcoSource bco_source = BcoSource::best_so_far;
};

struct PsoState {
  std::vector<std::vector<double>> velocities;
  std::vector<Solution> personal_bests;
  Solution global_best;
  double inertia = 0.0;
};

std::vector<Solution> esa_coordinate(std::span<const Solution> frozen);

std::vector<Solution> bco_coordinate(std::span<const Solution> frozen,
                                     const Solution& global_best);

/// Velocities uniform in [-v_max, v_max]; personal bests are the frozen pool.
PsoState pso_initial_state(std::span<const Solution> frozen, const PsoParams& params,
                           RandomStream& rng);

/// Replace personal bests that are strictly beaten by the frozen pool, then
/// the global best by any strictly better personal best.
void pso_refresh_bests(PsoState& state, std::span<const Solution> frozen);

/// One velocity component:
///   clamp(delta * (w v + c1 r1 (y - x) + c2 r2 (g - x)), -v_max, v_max)
double pso_velocity(double velocity, int position, int personal_best, int global_best,
                    double inertia, double r1, double r2, const PsoParams& params) noexcept;

/// Applies pso_velocity to every (agent, dimension) pair with fresh r1, r2
/// drawn in that order, then decays the inertia by beta.
PsoState pso_velocity_update(PsoState state, std::span<const Solution> frozen,
                             const PsoParams& params, RandomStream& rng);

double sigmoid(double v) noexcept;

/// Bit k of agent i is 1 iff a uniform draw falls below sigmoid(v_ik).
std::vector<BitVector> pso_position_sample(const std::vector<std::vector<double>>& velocities,
                                           RandomStream& rng);

std::pair<std::vector<Solution>, PsoState> pso_coordinate(PsoState state,
                                                          std::span<const Solution> frozen,
                                                          const PsoParams& params,
                                                          const MkpInstance& instance,
                                                          RandomStream& rng);

/// Stateful wrapper the swarm engine drives once per generation.
class Coordinator {
 public:
  explicit Coordinator(CoordinatorConfig config);

  /// `best_so_far` must dominate every solution in `frozen`.
  std::vector<Solution> next_hot(std::span<const Solution> frozen, const Solution& best_so_far,
                                 const MkpInstance& instance, RandomStream& rng);

  const CoordinatorConfig& config() const noexcept { return config_; }
  const std::optional<PsoState>& pso_state() const noexcept { return pso_; }

 private:
  CoordinatorConfig config_;
  std::optional<PsoState> pso_;
};

}  // namespace swarmsa

#endif
