#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "uavisac/moead/archive.hpp"
#include "uavisac/moead/decomposition.hpp"
#include "uavisac/moead/operator.hpp"
#include "uavisac/objective.hpp"

namespace uavisac::moead {

struct Subproblem {
  int index = 0;
  WeightVector weight;
  std::vector<int> neighbors;  // ascending, includes the subproblem itself
  DecisionVector incumbent_x;
  ObjectiveVector incumbent_f;
};

struct AlgoParams {
  int population = 50;      // number of subproblems / weight vectors
  int neighbor_size = 15;   // S
  int num_parents = 10;     // mating pool size handed to the operator
  int offspring_per_call = 2;
  int iterations = 260;     // generations after the initial population
  double neighbor_prob = 0.9;  // P(mating pool = neighborhood)
  std::uint64_t seed = 1;

  void validate() const;  // throws std::invalid_argument
};

using ObjectiveFn = std::function<ObjectiveVector(const DecisionVector&)>;

// Archive contents after each generation, for convergence audits and logs.
struct GenerationStat {
  int generation = 0;       // 0 = after initialization
  long long evaluations = 0;  // cumulative objective evaluations so far
  std::vector<ObjectiveVector> archive_objectives;
};

struct RunResult {
  Archive archive;
  std::vector<Subproblem> population;  // final incumbents
  std::vector<ObjectiveVector> initial_objectives;
  ReferencePoint reference;
  std::vector<GenerationStat> trace;  // generations 0..iterations
  long long evaluations = 0;
};

// Draw the mating pool for one subproblem: with probability neighbor_prob
// the pool is its neighborhood, otherwise the whole population (also when
// the neighborhood is smaller than num_parents); then num_parents distinct
// members are sampled and sorted best-first by Chebyshev value.
std::vector<ParentInfo> select_parents(int subproblem,
                                       const std::vector<Subproblem>& pop,
                                       const ReferencePoint& z,
                                       const AlgoParams& params,
                                       std::mt19937_64& rng);

// Offer a candidate to every neighbor of the given subproblem (ascending
// index); a neighbor adopts it when it is no worse on that neighbor's own
// scalarization. Returns the number of incumbents replaced.
int update_neighbors(int subproblem, const DecisionVector& genes,
                     const ObjectiveVector& f, std::vector<Subproblem>& pop,
                     const ReferencePoint& z);

// Full decomposition-based run. Each generation is phased: mating pools for
// all subproblems are drawn from the generation-start state, then all
// offspring are produced (concurrently if the operator allows), then updates
// are applied in ascending subproblem order. Every (generation, subproblem)
// pair gets the RNG stream seeded with seed + generation*population +
// subproblem, so results are identical whether offspring generation ran
// sequentially or in parallel.
//
// after_generation, when set, is called once per trace entry as it is made.
RunResult run(int dim, const ObjectiveFn& objective, OffspringOperator& op,
              const AlgoParams& params,
              const std::function<void(const GenerationStat&)>&
                  after_generation = {});

}  // namespace uavisac::moead
